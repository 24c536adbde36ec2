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

#include <algorithm>
#include <cmath>

#include "auralkit/ga_engine.h"

namespace auralkit {

namespace {

struct ImageSearch {
  const PolygonSet& surfaces;
  const Vec3& source;
  const Vec3& receiver;
  double speed_of_sound;
  bool air_absorption;
  BandVector air;
  std::vector<int> sequence;
  std::vector<Vec3> images;
  std::vector<Arrival>* out;

  // Walks back from the receiver through the mirror images; every leg
  // must cross its reflecting polygon and be unobstructed.
  void Validate() {
    const int k = static_cast<int>(sequence.size());
    Vec3 from = receiver;
    int previous = -1;
    Vec3 last_point = source;
    for (int i = k - 1; i >= 0; --i) {
      const int p = sequence[i];
      const Vec3 to = images[i];
      const Vec3 d = to - from;
      const double denom = surfaces.normal(p).dot(d);
      if (std::abs(denom) < 1e-12) return;
      const double t =
          (surfaces.plane_offset(p) - surfaces.normal(p).dot(from)) / denom;
      if (t <= 1e-9 || t >= 1.0 - 1e-9) return;
      const Vec3 point = from + t * d;
      if (!surfaces.Contains(p, point)) return;
      if (surfaces.Occluded(from, point, p, previous)) return;
      if (i == k - 1) last_point = point;
      from = point;
      previous = p;
    }
    if (surfaces.Occluded(from, source, previous, -1)) return;

    const double length = (images[k - 1] - receiver).norm();
    Arrival a;
    a.time = length / speed_of_sound;
    a.direction = (last_point - receiver).normalized();
    a.kind = ArrivalKind::kSpecular;
    a.order = k;
    a.energy = BandVector::Constant(1.0 / (length * length));
    for (int p : sequence) {
      a.energy.array() *= (1.0 - surfaces.absorption(p).array()) *
                          (1.0 - surfaces.scattering(p).array());
    }
    if (air_absorption) a.energy.array() *= (-air.array() * length).exp();
    out->push_back(a);
  }

  void Expand(int max_order) {
    const Vec3 parent = images.empty() ? source : images.back();
    const int last = sequence.empty() ? -1 : sequence.back();
    for (int p = 0; p < surfaces.size(); ++p) {
      if (p == last) continue;
      const double side =
          surfaces.normal(p).dot(parent) - surfaces.plane_offset(p);
      if (std::abs(side) < 1e-9) continue;
      sequence.push_back(p);
      images.push_back(surfaces.Mirror(p, parent));
      Validate();
      if (static_cast<int>(sequence.size()) < max_order) Expand(max_order);
      sequence.pop_back();
      images.pop_back();
    }
  }
};

}  // namespace

BandVector AirAttenuation() {
  // dB/km at 125 Hz ... 16 kHz, converted to nepers of energy per metre.
  BandVector db_per_km;
  db_per_km << 0.4, 1.0, 1.9, 3.7, 9.7, 32.8, 117.0, 380.0;
  return db_per_km / (1000.0 * 10.0 / std::log(10.0));
}

std::vector<Arrival> ImageSources(const RoomModel& model, const Vec3& source,
                                  const Vec3& receiver, int order,
                                  bool air_absorption) {
  if (order < 0) throw ValidationError("image-source order must be >= 0");
  const PolygonSet surfaces(model);
  std::vector<Arrival> arrivals;

  if (!surfaces.Occluded(receiver, source)) {
    const double d = (source - receiver).norm();
    Arrival direct;
    direct.time = d / model.speed_of_sound;
    direct.direction = (source - receiver).normalized();
    direct.kind = ArrivalKind::kDirect;
    direct.order = 0;
    direct.energy = BandVector::Constant(1.0 / (d * d));
    if (air_absorption) {
      direct.energy.array() *= (-AirAttenuation().array() * d).exp();
    }
    arrivals.push_back(direct);
  }
  if (order > 0) {
    ImageSearch search{surfaces, source,         receiver, model.speed_of_sound,
                       air_absorption, AirAttenuation(), {}, {}, &arrivals};
    search.Expand(order);
  }
  std::stable_sort(arrivals.begin(), arrivals.end(),
                   [](const Arrival& a, const Arrival& b) {
                     return a.time < b.time;
                   });
  return arrivals;
}

}  // namespace auralkit
