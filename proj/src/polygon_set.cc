// Copyright 2026 The Auralkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "auralkit/polygon_set.h"

#include <cmath>

namespace auralkit {

namespace {

constexpr double kRayEpsilon = 1e-7;

}  // namespace

PolygonSet::PolygonSet(const RoomModel& model) {
  faces_.reserve(model.polygons.size());
  for (const Polygon& polygon : model.polygons) {
    Face face;
    face.normal = PolygonAreaVector(model, polygon).normalized();
    face.offset = face.normal.dot(PolygonCentroid(model, polygon));
    int drop = 0;
    face.normal.cwiseAbs().maxCoeff(&drop);
    face.axis_u = (drop + 1) % 3;
    face.axis_v = (drop + 2) % 3;
    face.lo = Eigen::Vector2d::Constant(INFINITY);
    face.hi = -face.lo;
    for (int v : polygon.vertex_indices) {
      const Vec3& p = model.vertices[v];
      Eigen::Vector2d q(p[face.axis_u], p[face.axis_v]);
      face.outline.push_back(q);
      face.lo = face.lo.cwiseMin(q);
      face.hi = face.hi.cwiseMax(q);
    }
    face.absorption = OctaveAbsorption(model, polygon);
    face.scattering = OctaveScattering(model, polygon);
    face.mean_scattering = face.scattering.mean();
    faces_.push_back(std::move(face));
  }
}

bool PolygonSet::Contains(int polygon, const Vec3& point) const {
  const Face& face = faces_[polygon];
  const double u = point[face.axis_u];
  const double v = point[face.axis_v];
  if (u < face.lo.x() || u > face.hi.x() || v < face.lo.y() ||
      v > face.hi.y()) {
    return false;
  }
  bool inside = false;
  const auto& outline = face.outline;
  for (size_t i = 0, j = outline.size() - 1; i < outline.size(); j = i++) {
    const Eigen::Vector2d& a = outline[i];
    const Eigen::Vector2d& b = outline[j];
    if ((a.y() > v) != (b.y() > v)) {
      const double cross_u = a.x() + (v - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (u < cross_u) inside = !inside;
    }
  }
  return inside;
}

std::optional<PolygonSet::Hit> PolygonSet::Intersect(const Vec3& origin,
                                                     const Vec3& direction,
                                                     double max_distance,
                                                     int skip) const {
  std::optional<Hit> best;
  double limit = max_distance;
  for (int p = 0; p < size(); ++p) {
    if (p == skip) continue;
    const Face& face = faces_[p];
    const double denom = face.normal.dot(direction);
    if (std::abs(denom) < 1e-12) continue;
    const double t = (face.offset - face.normal.dot(origin)) / denom;
    if (t <= kRayEpsilon || t >= limit) continue;
    const Vec3 point = origin + t * direction;
    if (!Contains(p, point)) continue;
    limit = t;
    best = Hit{p, t, point};
  }
  return best;
}

bool PolygonSet::Occluded(const Vec3& a, const Vec3& b, int skip_a,
                          int skip_b) const {
  const Vec3 d = b - a;
  const double length = d.norm();
  if (length <= kRayEpsilon) return false;
  const Vec3 u = d / length;
  for (int p = 0; p < size(); ++p) {
    if (p == skip_a || p == skip_b) continue;
    const Face& face = faces_[p];
    const double denom = face.normal.dot(u);
    if (std::abs(denom) < 1e-12) continue;
    const double t = (face.offset - face.normal.dot(a)) / denom;
    if (t <= kRayEpsilon || t >= length - kRayEpsilon) continue;
    if (Contains(p, a + t * u)) return true;
  }
  return false;
}

Vec3 PolygonSet::Mirror(int polygon, const Vec3& point) const {
  const Face& face = faces_[polygon];
  return point - 2.0 * (face.normal.dot(point) - face.offset) * face.normal;
}

}  // namespace auralkit
