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

#include <cmath>

#include "auralkit/geometry.h"
#include "auralkit/presets.h"
#include "auralkit/room_io.h"
#include "doctest.h"

namespace auralkit {
namespace {

Material Uniform(double alpha, double scattering = 0.0) {
  return {"m", BandSpectrum::Uniform(alpha), BandSpectrum::Uniform(scattering)};
}

TEST_CASE("shoebox volume, area and absorption area") {
  const RoomModel box = MakeShoebox({0, 0, 0}, {5, 4, 3}, Uniform(0.2));
  CHECK_NOTHROW(ValidateRoom(box));
  CHECK(box.polygons.size() == 6);
  CHECK(FindOpenEdges(box).empty());
  CHECK(ComputeVolume(box) == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(TotalSurfaceArea(box) == doctest::Approx(94.0).epsilon(1e-12));
  const BandSpectrum a = EquivalentAbsorptionArea(box);
  for (int b = 0; b < kNumOctaveBands; ++b) {
    CHECK(a.values[b] == doctest::Approx(0.2 * 94.0));
  }
}

TEST_CASE("winding number separates inside from outside") {
  const RoomModel box = MakeShoebox({0, 0, 0}, {5, 4, 3}, Uniform(0.2));
  CHECK(WindingNumber(box, {2.5, 2, 1.5}) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(WindingNumber(box, {0.1, 3.9, 2.9}) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(WindingNumber(box, {6, 2, 1.5})) < 1e-9);
  CHECK(std::abs(WindingNumber(box, {-1, -1, -1})) < 1e-9);
}

TEST_CASE("outward normals: area vector of the floor points down") {
  const RoomModel box = MakeShoebox({0, 0, 0}, {5, 4, 3}, Uniform(0.2));
  for (const Polygon& p : box.polygons) {
    const Vec3 n = PolygonAreaVector(box, p);
    const Vec3 c = PolygonCentroid(box, p);
    // Outward: the normal points away from the box centre.
    CHECK(n.dot(c - Vec3(2.5, 2, 1.5)) > 0.0);
    if (p.tags.count("floor")) CHECK(n.z() < 0.0);
  }
}

TEST_CASE("a missing face leaves open edges and no volume") {
  RoomModel box = MakeShoebox({0, 0, 0}, {5, 4, 3}, Uniform(0.2));
  box.polygons.pop_back();
  CHECK(FindOpenEdges(box).size() == 4);
  CHECK_THROWS_AS(ComputeVolume(box), GeometryError);
  CHECK_THROWS_AS(ValidateRoom(box), ValidationError);
}

TEST_CASE("validation rejects bad coefficients and stray points") {
  RoomModel box = MakeShoebox({0, 0, 0}, {5, 4, 3}, Uniform(0.2));
  box.sources["S"] = {1, 1, 1};
  box.receivers["R"] = {4, 3, 2};
  CHECK_NOTHROW(ValidateRoom(box));

  RoomModel outside = box;
  outside.receivers["R"] = {7, 3, 2};
  CHECK_THROWS_AS(ValidateRoom(outside), ValidationError);

  RoomModel bad = box;
  bad.materials.at("m").absorption.values[3] = 1.2;
  CHECK_THROWS_AS(ValidateRoom(bad), ValidationError);

  RoomModel unknown = box;
  unknown.polygons[0].material_id = "nope";
  CHECK_THROWS_AS(ValidateRoom(unknown), ValidationError);
}

TEST_CASE("T-junctions close the shell") {
  // Split the x = 0 wall into two halves meeting the floor edge at a vertex
  // the floor polygon does not have.
  RoomModel box = MakeShoebox({0, 0, 0}, {5, 4, 3}, Uniform(0.2));
  int wall = -1;
  for (size_t p = 0; p < box.polygons.size(); ++p) {
    const Vec3 c = PolygonCentroid(box, box.polygons[p]);
    if (std::abs(c.x()) < 1e-9) wall = static_cast<int>(p);
  }
  REQUIRE(wall >= 0);
  const Polygon old = box.polygons[wall];
  const Vec3 n = PolygonAreaVector(box, old).normalized();
  box.polygons.erase(box.polygons.begin() + wall);
  const int base = static_cast<int>(box.vertices.size());
  box.vertices.push_back({0, 0, 0});
  box.vertices.push_back({0, 2, 0});
  box.vertices.push_back({0, 4, 0});
  box.vertices.push_back({0, 4, 3});
  box.vertices.push_back({0, 2, 3});
  box.vertices.push_back({0, 0, 3});
  Polygon a{{base, base + 5, base + 4, base + 1}, "m", {"wall"}};
  Polygon b{{base + 1, base + 4, base + 3, base + 2}, "m", {"wall"}};
  if (PolygonAreaVector(box, a).dot(n) < 0.0) {
    std::reverse(a.vertex_indices.begin(), a.vertex_indices.end());
    std::reverse(b.vertex_indices.begin(), b.vertex_indices.end());
  }
  box.polygons.push_back(a);
  box.polygons.push_back(b);
  CHECK(FindOpenEdges(box).empty());
  CHECK(ComputeVolume(box) == doctest::Approx(60.0).epsilon(1e-12));
}

TEST_CASE("free-standing tagged polygons are exempt from the shell") {
  RoomModel box = MakeShoebox({0, 0, 0}, {5, 4, 3}, Uniform(0.2));
  const int base = static_cast<int>(box.vertices.size());
  box.vertices.push_back({1, 1, 1});
  box.vertices.push_back({2, 1, 1});
  box.vertices.push_back({2, 2, 1});
  box.polygons.push_back({{base, base + 1, base + 2}, "m", {"furniture"}});
  CHECK(IsShellExempt(box.polygons.back()));
  CHECK(FindOpenEdges(box).empty());
  CHECK(ComputeVolume(box) == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(TotalSurfaceArea(box) == doctest::Approx(94.5).epsilon(1e-12));
}

TEST_CASE("decimation moves absorption area onto the nearest polygon") {
  const RoomModel room = SyntheticLivingRoom();
  const BandSpectrum before = EquivalentAbsorptionArea(room);
  for (double threshold : {0.1, 0.4}) {
    const RoomModel reduced = Decimate(room, threshold, {});
    CHECK(reduced.polygons.size() < room.polygons.size());
    CHECK_NOTHROW(ValidateRoom(reduced));
    for (const Polygon& p : reduced.polygons) {
      CHECK(PolygonArea(reduced, p) >= threshold);
    }
    const BandSpectrum after = EquivalentAbsorptionArea(reduced);
    bool clamped = false;
    for (const auto& w : reduced.warnings) clamped |= w.find("clamped") != std::string::npos;
    if (!clamped) {
      for (int b = 0; b < kNumOctaveBands; ++b) {
        CHECK(after.values[b] == doctest::Approx(before.values[b]).epsilon(1e-9));
      }
    }
    CHECK(ComputeVolume(reduced) == doctest::Approx(ComputeVolume(room)).epsilon(1e-9));
  }
  const RoomModel bare = Decimate(room, 0.0, {"furniture", "detail"});
  for (const Polygon& p : bare.polygons) CHECK_FALSE(IsShellExempt(p));
  CHECK_THROWS_AS(Decimate(room, -1.0, {}), ValidationError);
}

TEST_CASE("shoebox reduction matches volume and absorption area") {
  const RoomModel room = SyntheticLivingRoom();
  const RoomModel box = ToShoebox(room);
  CHECK(box.polygons.size() == 6);
  CHECK_NOTHROW(ValidateRoom(box));
  CHECK(ComputeVolume(box) == doctest::Approx(ComputeVolume(room)).epsilon(1e-9));
  const BandSpectrum a = EquivalentAbsorptionArea(room);
  const BandSpectrum b = EquivalentAbsorptionArea(box);
  for (int i = 0; i < kNumOctaveBands; ++i) {
    CHECK(b.values[i] == doctest::Approx(a.values[i]).epsilon(1e-9));
  }
  CHECK(box.sources.size() == room.sources.size());
  CHECK(box.receivers.size() == room.receivers.size());
}

TEST_CASE("band reduction of a model keeps the geometry") {
  const RoomModel room = SyntheticLivingRoom();
  for (int bands : {4, 2, 1}) {
    const RoomModel reduced = BandReduceModel(room, bands);
    CHECK(reduced.polygons.size() == room.polygons.size());
    for (const auto& [id, m] : reduced.materials) {
      CHECK(m.absorption.size() == bands);
      CHECK(m.scattering.size() == bands);
    }
    CHECK_NOTHROW(ValidateRoom(reduced));
  }
  CHECK_THROWS_AS(BandReduceModel(room, 3), ValidationError);
}

TEST_CASE("synthetic living room") {
  const RoomModel room = SyntheticLivingRoom();
  CHECK_NOTHROW(ValidateRoom(room));
  const double v = ComputeVolume(room);
  CHECK(v > 60.0);
  CHECK(v < 80.0);
  CHECK(room.sources.count("A1"));
  CHECK(room.receivers.count("P1"));
  CHECK(room.receivers.count("P3"));
  // Far receiver is farther from every source than the near one.
  for (const auto& [label, s] : room.sources) {
    CHECK((s - room.receivers.at("P3")).norm() >
          (s - room.receivers.at("P1")).norm());
  }
}

TEST_CASE("room documents round-trip") {
  const RoomModel room = SyntheticLivingRoom();
  const RoomModel back = ParseRoom(SerializeRoom(room));
  CHECK(back.vertices.size() == room.vertices.size());
  CHECK(back.polygons.size() == room.polygons.size());
  CHECK(back.materials.size() == room.materials.size());
  for (size_t i = 0; i < room.vertices.size(); ++i) {
    CHECK(back.vertices[i] == room.vertices[i]);
  }
  for (size_t i = 0; i < room.polygons.size(); ++i) {
    CHECK(back.polygons[i].vertex_indices == room.polygons[i].vertex_indices);
    CHECK(back.polygons[i].tags == room.polygons[i].tags);
  }
  CHECK(SerializeRoom(back) == SerializeRoom(room));
  CHECK_THROWS_AS(ParseRoom("{not json"), ParseError);
  CHECK_THROWS_AS(ParseRoom(R"({"schema": "other/1"})"), ParseError);
}

}  // namespace
}  // namespace auralkit
