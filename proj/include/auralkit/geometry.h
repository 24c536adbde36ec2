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

#ifndef AURALKIT_GEOMETRY_H_
#define AURALKIT_GEOMETRY_H_

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "auralkit/band_spectrum.h"
#include "auralkit/common.h"

namespace auralkit {

// Tolerance for coplanarity, watertightness and vertex matching (m).
inline constexpr double kGeometryTolerance = 1e-3;

struct Material {
  std::string id;
  BandSpectrum absorption;
  BandSpectrum scattering;
};

struct Polygon {
  std::vector<int> vertex_indices;
  std::string material_id;
  std::set<std::string> tags;
};

struct RoomModel {
  std::string name;
  std::vector<Vec3> vertices;
  std::vector<Polygon> polygons;
  std::map<std::string, Material> materials;
  std::map<std::string, Vec3> sources;
  std::map<std::string, Vec3> receivers;
  double speed_of_sound = kDefaultSpeedOfSound;
  // Non-fatal conditions raised by transformations (e.g. clamped absorption).
  std::vector<std::string> warnings;
};

// Polygons carrying one of these tags ("furniture", "detail", "interior")
// are free-standing and not part of the enclosing shell: they are skipped
// by the watertightness check and by the volume integral.
bool IsShellExempt(const Polygon& polygon);

// Newell normal scaled by twice the polygon area.
Vec3 PolygonAreaVector(const RoomModel& model, const Polygon& polygon);
double PolygonArea(const RoomModel& model, const Polygon& polygon);
Vec3 PolygonCentroid(const RoomModel& model, const Polygon& polygon);

struct OpenEdge {
  Vec3 a;
  Vec3 b;
};

// Shell edges that are not matched by an opposite edge. T-junctions are
// handled by splitting edges at every shell vertex lying on them.
std::vector<OpenEdge> FindOpenEdges(const RoomModel& model);

// Checks every RoomModel invariant. Throws ValidationError.
void ValidateRoom(const RoomModel& model);

// Generalized winding number of the shell around `point` (~1 inside).
double WindingNumber(const RoomModel& model, const Vec3& point);

// Enclosed volume of the shell. Throws GeometryError naming open edges.
double ComputeVolume(const RoomModel& model);

double TotalSurfaceArea(const RoomModel& model);

// Per-octave-band absorption (or scattering) of a polygon, with reduced
// spectra expanded onto the 8 simulation bands.
Eigen::VectorXd OctaveAbsorption(const RoomModel& model,
                                 const Polygon& polygon);
Eigen::VectorXd OctaveScattering(const RoomModel& model,
                                 const Polygon& polygon);

// A(b) = sum_i area_i * alpha_i(b), in m^2, on the 8 octave bands.
BandSpectrum EquivalentAbsorptionArea(const RoomModel& model);

class GeometryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Closed box between two corners, faces wound with outward normals and
// tagged "floor", "ceiling" or "wall", all using `material`.
RoomModel MakeShoebox(const Vec3& min_corner, const Vec3& max_corner,
                      const Material& material);

// Removes polygons smaller than `area_threshold` or tagged with any of
// `remove_tagged`, moving their absorption area onto the nearest remaining
// polygon (centroid distance). Clamping is reported in `warnings`.
RoomModel Decimate(const RoomModel& model, double area_threshold,
                   const std::set<std::string>& remove_tagged);

// Volume-matched axis-aligned box with one uniform material preserving
// A(b). Sources and receivers outside the box are pulled inside.
RoomModel ToShoebox(const RoomModel& model);

// Applies BandReduce to every material's absorption and scattering.
RoomModel BandReduceModel(const RoomModel& model, int target_bands);

}  // namespace auralkit

#endif  // AURALKIT_GEOMETRY_H_
