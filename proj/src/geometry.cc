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

#include "auralkit/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Geometry>

namespace auralkit {

namespace {

const std::set<std::string>& ShellExemptTags() {
  static const std::set<std::string> tags = {"furniture", "detail",
                                             "interior"};
  return tags;
}

std::string FormatPoint(const Vec3& p) {
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
  return os.str();
}

// Merges vertex positions closer than the tolerance into shared ids.
std::vector<int> WeldVertices(const std::vector<Vec3>& points) {
  std::vector<int> ids(points.size());
  std::vector<int> representatives;
  for (size_t i = 0; i < points.size(); ++i) {
    int id = -1;
    for (int r : representatives) {
      if ((points[r] - points[i]).norm() <= kGeometryTolerance) {
        id = ids[r];
        break;
      }
    }
    if (id < 0) {
      id = static_cast<int>(representatives.size());
      representatives.push_back(static_cast<int>(i));
    }
    ids[i] = id;
  }
  return ids;
}

// Signed solid angle subtended by triangle (a, b, c) seen from the origin.
double TriangleSolidAngle(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double la = a.norm();
  const double lb = b.norm();
  const double lc = c.norm();
  const double numerator = a.dot(b.cross(c));
  const double denominator =
      la * lb * lc + a.dot(b) * lc + a.dot(c) * lb + b.dot(c) * la;
  return 2.0 * std::atan2(numerator, denominator);
}

Eigen::VectorXd MaterialOctaves(const RoomModel& model,
                                const Polygon& polygon, bool absorption) {
  auto it = model.materials.find(polygon.material_id);
  if (it == model.materials.end()) {
    throw ValidationError("polygon references unknown material '" +
                          polygon.material_id + "'");
  }
  return ExpandToOctaves(absorption ? it->second.absorption
                                    : it->second.scattering);
}

}  // namespace

bool IsShellExempt(const Polygon& polygon) {
  for (const auto& tag : polygon.tags) {
    if (ShellExemptTags().count(tag)) return true;
  }
  return false;
}

Vec3 PolygonAreaVector(const RoomModel& model, const Polygon& polygon) {
  Vec3 sum = Vec3::Zero();
  const auto& idx = polygon.vertex_indices;
  for (size_t i = 0; i < idx.size(); ++i) {
    const Vec3& p = model.vertices[idx[i]];
    const Vec3& q = model.vertices[idx[(i + 1) % idx.size()]];
    sum += p.cross(q);
  }
  return sum;
}

double PolygonArea(const RoomModel& model, const Polygon& polygon) {
  return 0.5 * PolygonAreaVector(model, polygon).norm();
}

Vec3 PolygonCentroid(const RoomModel& model, const Polygon& polygon) {
  // Area-weighted centroid of the fan triangles.
  const auto& idx = polygon.vertex_indices;
  const Vec3& origin = model.vertices[idx[0]];
  const Vec3 normal = PolygonAreaVector(model, polygon);
  Vec3 weighted = Vec3::Zero();
  double total = 0.0;
  for (size_t i = 1; i + 1 < idx.size(); ++i) {
    const Vec3& b = model.vertices[idx[i]];
    const Vec3& c = model.vertices[idx[i + 1]];
    const double w = (b - origin).cross(c - origin).dot(normal);
    weighted += w * (origin + b + c) / 3.0;
    total += w;
  }
  if (std::abs(total) < std::numeric_limits<double>::min()) {
    Vec3 mean = Vec3::Zero();
    for (int i : idx) mean += model.vertices[i];
    return mean / static_cast<double>(idx.size());
  }
  return weighted / total;
}

std::vector<OpenEdge> FindOpenEdges(const RoomModel& model) {
  std::vector<int> shell;
  std::vector<char> used(model.vertices.size(), 0);
  for (size_t p = 0; p < model.polygons.size(); ++p) {
    if (IsShellExempt(model.polygons[p])) continue;
    shell.push_back(static_cast<int>(p));
    for (int v : model.polygons[p].vertex_indices) used[v] = 1;
  }
  std::vector<int> shell_vertices;
  for (size_t v = 0; v < used.size(); ++v) {
    if (used[v]) shell_vertices.push_back(static_cast<int>(v));
  }
  const std::vector<int> weld = WeldVertices(model.vertices);

  // Directed sub-edge counts keyed by welded vertex ids.
  std::map<std::pair<int, int>, int> directed;
  for (int p : shell) {
    const auto& idx = model.polygons[p].vertex_indices;
    for (size_t i = 0; i < idx.size(); ++i) {
      const Vec3& a = model.vertices[idx[i]];
      const Vec3& b = model.vertices[idx[(i + 1) % idx.size()]];
      const Vec3 ab = b - a;
      const double len2 = ab.squaredNorm();
      std::vector<std::pair<double, int>> stops = {{0.0, weld[idx[i]]}};
      for (int v : shell_vertices) {
        const Vec3& q = model.vertices[v];
        const double t = (q - a).dot(ab) / len2;
        if (t <= 0.0 || t >= 1.0) continue;
        if ((a + t * ab - q).norm() > kGeometryTolerance) continue;
        const int id = weld[v];
        if (id == weld[idx[i]] || id == weld[idx[(i + 1) % idx.size()]]) {
          continue;
        }
        stops.emplace_back(t, id);
      }
      stops.emplace_back(1.0, weld[idx[(i + 1) % idx.size()]]);
      std::sort(stops.begin(), stops.end());
      for (size_t s = 0; s + 1 < stops.size(); ++s) {
        if (stops[s].second == stops[s + 1].second) continue;
        ++directed[{stops[s].second, stops[s + 1].second}];
      }
    }
  }

  // A closed, consistently wound shell pairs every u->v with a v->u.
  std::map<int, Vec3> position;
  for (size_t v = 0; v < model.vertices.size(); ++v) {
    position.emplace(weld[v], model.vertices[v]);
  }
  std::vector<OpenEdge> open;
  for (const auto& [edge, count] : directed) {
    auto reverse = directed.find({edge.second, edge.first});
    const int reverse_count = reverse == directed.end() ? 0 : reverse->second;
    // Visit each undirected edge once.
    if (reverse_count > 0 && edge.first > edge.second) continue;
    if (count != reverse_count) {
      open.push_back({position[edge.first], position[edge.second]});
    }
  }
  return open;
}

void ValidateRoom(const RoomModel& model) {
  if (!(model.speed_of_sound > 0.0)) {
    throw ValidationError("speed of sound must be positive");
  }
  for (const auto& [id, material] : model.materials) {
    try {
      ValidateCoefficients(material.absorption);
      ValidateCoefficients(material.scattering);
    } catch (const ValidationError& e) {
      throw ValidationError("material '" + id + "': " + e.what());
    }
    if (material.absorption.centers.size() !=
            material.scattering.centers.size() ||
        !material.absorption.centers.isApprox(material.scattering.centers)) {
      throw ValidationError("material '" + id +
                            "': absorption and scattering bands differ");
    }
  }
  for (size_t p = 0; p < model.polygons.size(); ++p) {
    const Polygon& polygon = model.polygons[p];
    const std::string where = "polygon " + std::to_string(p);
    if (polygon.vertex_indices.size() < 3) {
      throw ValidationError(where + ": needs at least 3 vertices, has " +
                            std::to_string(polygon.vertex_indices.size()));
    }
    for (int v : polygon.vertex_indices) {
      if (v < 0 || v >= static_cast<int>(model.vertices.size())) {
        throw ValidationError(where + ": vertex index " + std::to_string(v) +
                              " out of range");
      }
    }
    if (!model.materials.count(polygon.material_id)) {
      throw ValidationError(where + ": unknown material '" +
                            polygon.material_id + "'");
    }
    const Vec3 area_vector = PolygonAreaVector(model, polygon);
    if (!(area_vector.norm() > 1e-12)) {
      throw ValidationError(where + ": degenerate (zero area)");
    }
    const Vec3 normal = area_vector.normalized();
    const Vec3 centroid = PolygonCentroid(model, polygon);
    for (int v : polygon.vertex_indices) {
      if (std::abs((model.vertices[v] - centroid).dot(normal)) >
          kGeometryTolerance) {
        throw ValidationError(where + ": vertices not coplanar within 1 mm");
      }
    }
  }
  const double volume = ComputeVolume(model);
  if (!(volume > 0.0)) throw ValidationError("room volume is not positive");

  auto check_inside = [&](const std::map<std::string, Vec3>& points,
                          const char* kind) {
    for (const auto& [label, point] : points) {
      if (std::abs(WindingNumber(model, point)) < 0.5) {
        throw ValidationError(std::string(kind) + " '" + label + "' at " +
                              FormatPoint(point) + " is outside the room");
      }
    }
  };
  check_inside(model.sources, "source");
  check_inside(model.receivers, "receiver");
}

double WindingNumber(const RoomModel& model, const Vec3& point) {
  double omega = 0.0;
  for (const Polygon& polygon : model.polygons) {
    if (IsShellExempt(polygon)) continue;
    const auto& idx = polygon.vertex_indices;
    const Vec3 a = model.vertices[idx[0]] - point;
    for (size_t i = 1; i + 1 < idx.size(); ++i) {
      omega += TriangleSolidAngle(a, model.vertices[idx[i]] - point,
                                  model.vertices[idx[i + 1]] - point);
    }
  }
  return omega / (4.0 * kPi);
}

double ComputeVolume(const RoomModel& model) {
  const std::vector<OpenEdge> open = FindOpenEdges(model);
  if (!open.empty()) {
    std::ostringstream os;
    os << "room shell is not watertight: " << open.size() << " open edge(s)";
    for (size_t i = 0; i < std::min<size_t>(open.size(), 8); ++i) {
      os << (i ? ", " : ": ") << FormatPoint(open[i].a) << "-"
         << FormatPoint(open[i].b);
    }
    throw GeometryError(os.str());
  }
  double six_volume = 0.0;
  size_t shell_polygons = 0;
  for (const Polygon& polygon : model.polygons) {
    if (IsShellExempt(polygon)) continue;
    ++shell_polygons;
    const auto& idx = polygon.vertex_indices;
    const Vec3& a = model.vertices[idx[0]];
    for (size_t i = 1; i + 1 < idx.size(); ++i) {
      six_volume +=
          a.dot(model.vertices[idx[i]].cross(model.vertices[idx[i + 1]]));
    }
  }
  if (shell_polygons < 4) {
    throw GeometryError("room shell needs at least 4 polygons");
  }
  return std::abs(six_volume) / 6.0;
}

double TotalSurfaceArea(const RoomModel& model) {
  double total = 0.0;
  for (const Polygon& polygon : model.polygons) {
    total += PolygonArea(model, polygon);
  }
  return total;
}

Eigen::VectorXd OctaveAbsorption(const RoomModel& model,
                                 const Polygon& polygon) {
  return MaterialOctaves(model, polygon, true);
}

Eigen::VectorXd OctaveScattering(const RoomModel& model,
                                 const Polygon& polygon) {
  return MaterialOctaves(model, polygon, false);
}

BandSpectrum EquivalentAbsorptionArea(const RoomModel& model) {
  Eigen::VectorXd area = Eigen::VectorXd::Zero(kNumOctaveBands);
  for (const Polygon& polygon : model.polygons) {
    area += PolygonArea(model, polygon) * OctaveAbsorption(model, polygon);
  }
  return BandSpectrum::Octave(area);
}

RoomModel MakeShoebox(const Vec3& lo, const Vec3& hi,
                      const Material& material) {
  RoomModel model;
  for (int i = 0; i < 8; ++i) {
    model.vertices.emplace_back((i & 1) ? hi.x() : lo.x(),
                                (i & 2) ? hi.y() : lo.y(),
                                (i & 4) ? hi.z() : lo.z());
  }
  // Corner index = x + 2y + 4z; each face listed with an outward normal.
  const std::vector<std::pair<std::vector<int>, std::string>> faces = {
      {{0, 4, 6, 2}, "wall"},     // x min
      {{1, 3, 7, 5}, "wall"},     // x max
      {{0, 1, 5, 4}, "wall"},     // y min
      {{2, 6, 7, 3}, "wall"},     // y max
      {{0, 2, 3, 1}, "floor"},    // z min
      {{4, 5, 7, 6}, "ceiling"},  // z max
  };
  for (const auto& [indices, tag] : faces) {
    model.polygons.push_back({indices, material.id, {tag}});
  }
  model.materials.emplace(material.id, material);
  return model;
}

RoomModel Decimate(const RoomModel& model, double area_threshold,
                   const std::set<std::string>& remove_tagged) {
  if (!(area_threshold >= 0.0)) {
    throw ValidationError("decimation threshold must be >= 0");
  }
  const size_t n = model.polygons.size();
  std::vector<double> areas(n);
  std::vector<Vec3> centroids(n);
  std::vector<char> removed(n, 0);
  std::vector<size_t> kept;
  for (size_t p = 0; p < n; ++p) {
    areas[p] = PolygonArea(model, model.polygons[p]);
    centroids[p] = PolygonCentroid(model, model.polygons[p]);
    bool drop = areas[p] < area_threshold;
    for (const auto& tag : model.polygons[p].tags) {
      if (remove_tagged.count(tag)) drop = true;
    }
    removed[p] = drop;
    if (!drop) kept.push_back(p);
  }
  if (kept.empty()) throw GeometryError("decimation removed every polygon");

  std::map<size_t, Eigen::VectorXd> extra;
  for (size_t p = 0; p < n; ++p) {
    if (!removed[p]) continue;
    size_t target = kept.front();
    double best = std::numeric_limits<double>::infinity();
    for (size_t k : kept) {
      const double d = (centroids[k] - centroids[p]).norm();
      if (d < best) {
        best = d;
        target = k;
      }
    }
    const Eigen::VectorXd absorbed =
        areas[p] * OctaveAbsorption(model, model.polygons[p]);
    auto [it, inserted] = extra.emplace(target, absorbed);
    if (!inserted) it->second += absorbed;
  }

  RoomModel out;
  out.name = model.name;
  out.sources = model.sources;
  out.receivers = model.receivers;
  out.speed_of_sound = model.speed_of_sound;
  out.warnings = model.warnings;
  std::map<int, int> remap;
  for (size_t k : kept) {
    Polygon polygon = model.polygons[k];
    for (int& v : polygon.vertex_indices) {
      auto [it, inserted] =
          remap.emplace(v, static_cast<int>(out.vertices.size()));
      if (inserted) out.vertices.push_back(model.vertices[v]);
      v = it->second;
    }
    const Material& source = model.materials.at(polygon.material_id);
    auto bonus = extra.find(k);
    if (bonus != extra.end()) {
      Eigen::VectorXd alpha =
          OctaveAbsorption(model, model.polygons[k]) + bonus->second / areas[k];
      if ((alpha.array() > 1.0).any()) {
        out.warnings.push_back("decimate: absorption of polygon " +
                               std::to_string(k) +
                               " clamped to 1; absorption area not preserved");
        alpha = alpha.cwiseMin(1.0);
      }
      Material merged{source.id + "#p" + std::to_string(k),
                      BandSpectrum::Octave(alpha),
                      BandSpectrum::Octave(ExpandToOctaves(source.scattering))};
      polygon.material_id = merged.id;
      out.materials.emplace(merged.id, merged);
    } else {
      out.materials.emplace(source.id, source);
    }
    out.polygons.push_back(std::move(polygon));
  }
  if (out.polygons.size() < 4 && !FindOpenEdges(out).empty()) {
    throw GeometryError("decimated model has " +
                        std::to_string(out.polygons.size()) +
                        " polygons and is not a closed shell");
  }
  return out;
}

RoomModel ToShoebox(const RoomModel& model) {
  const double volume = ComputeVolume(model);
  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::infinity());
  Vec3 hi = -lo;
  for (const Polygon& polygon : model.polygons) {
    if (IsShellExempt(polygon)) continue;
    for (int v : polygon.vertex_indices) {
      lo = lo.cwiseMin(model.vertices[v]);
      hi = hi.cwiseMax(model.vertices[v]);
    }
  }
  const Vec3 center = 0.5 * (lo + hi);
  const Vec3 dims = hi - lo;
  const double scale = std::cbrt(volume / dims.prod());
  const Vec3 half = 0.5 * scale * dims;

  const Eigen::VectorXd absorption_area =
      EquivalentAbsorptionArea(model).values;
  Eigen::VectorXd scattering = Eigen::VectorXd::Zero(kNumOctaveBands);
  double total_area = 0.0;
  for (const Polygon& polygon : model.polygons) {
    const double area = PolygonArea(model, polygon);
    scattering += area * OctaveScattering(model, polygon);
    total_area += area;
  }
  scattering /= total_area;

  const Vec3 box = 2.0 * half;
  const double box_area =
      2.0 * (box.x() * box.y() + box.y() * box.z() + box.x() * box.z());
  std::vector<std::string> warnings = model.warnings;
  Eigen::VectorXd alpha = absorption_area / box_area;
  if ((alpha.array() > 1.0).any()) {
    warnings.push_back(
        "to_shoebox: absorption clamped to 1; absorption area not preserved");
    alpha = alpha.cwiseMin(1.0);
  }
  Material material{"shoebox", BandSpectrum::Octave(alpha),
                    BandSpectrum::Octave(scattering)};
  RoomModel out = MakeShoebox(center - half, center + half, material);
  out.name = model.name.empty() ? "shoebox" : model.name + "-shoebox";
  out.speed_of_sound = model.speed_of_sound;
  out.warnings = std::move(warnings);

  const double margin = 0.1;
  auto place = [&](const std::map<std::string, Vec3>& points,
                   std::map<std::string, Vec3>& target, const char* kind) {
    for (const auto& [label, p] : points) {
      if (((p - center).cwiseAbs().array() < half.array()).all()) {
        target[label] = p;
        continue;
      }
      const Vec3 inner = half - Vec3::Constant(margin);
      target[label] = p.cwiseMax(center - inner).cwiseMin(center + inner);
      out.warnings.push_back(std::string("to_shoebox: ") + kind + " '" +
                             label + "' moved inside the box");
    }
  };
  place(model.sources, out.sources, "source");
  place(model.receivers, out.receivers, "receiver");
  return out;
}

RoomModel BandReduceModel(const RoomModel& model, int target_bands) {
  RoomModel out = model;
  for (auto& [id, material] : out.materials) {
    try {
      material.absorption = BandReduce(material.absorption, target_bands);
      material.scattering = BandReduce(material.scattering, target_bands);
    } catch (const ValidationError& e) {
      throw ValidationError("material '" + id + "': " + e.what());
    }
  }
  return out;
}

}  // namespace auralkit
