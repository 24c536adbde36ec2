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

#ifndef AURALKIT_POLYGON_SET_H_
#define AURALKIT_POLYGON_SET_H_

#include <optional>
#include <vector>

#include "auralkit/geometry.h"

namespace auralkit {

using BandVector = Eigen::Matrix<double, kNumOctaveBands, 1>;

// Flattened, intersection-ready copy of a room's polygons. Surfaces are
// two-sided reflectors.
class PolygonSet {
 public:
  explicit PolygonSet(const RoomModel& model);

  struct Hit {
    int polygon;
    double distance;
    Vec3 point;
  };

  // Nearest polygon hit along origin + t * direction, t in (eps, max_distance).
  // `skip` excludes one polygon (the one the ray just left).
  std::optional<Hit> Intersect(const Vec3& origin, const Vec3& direction,
                               double max_distance, int skip = -1) const;

  // True when the open segment a-b crosses any polygon other than the two
  // excluded ones.
  bool Occluded(const Vec3& a, const Vec3& b, int skip_a = -1,
                int skip_b = -1) const;

  // Point assumed on the polygon plane; crossing-number containment test.
  bool Contains(int polygon, const Vec3& point) const;

  Vec3 Mirror(int polygon, const Vec3& point) const;

  int size() const { return static_cast<int>(faces_.size()); }
  const Vec3& normal(int polygon) const { return faces_[polygon].normal; }
  double plane_offset(int polygon) const { return faces_[polygon].offset; }
  const BandVector& absorption(int polygon) const {
    return faces_[polygon].absorption;
  }
  const BandVector& scattering(int polygon) const {
    return faces_[polygon].scattering;
  }
  double mean_scattering(int polygon) const {
    return faces_[polygon].mean_scattering;
  }

 private:
  struct Face {
    Vec3 normal;
    double offset;  // normal . x = offset on the plane
    int axis_u;
    int axis_v;
    std::vector<Eigen::Vector2d> outline;
    Eigen::Vector2d lo;
    Eigen::Vector2d hi;
    BandVector absorption;
    BandVector scattering;
    double mean_scattering;
  };
  std::vector<Face> faces_;
};

}  // namespace auralkit

#endif  // AURALKIT_POLYGON_SET_H_
