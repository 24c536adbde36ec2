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

#include "auralkit/presets.h"

#include <cmath>
#include <random>

#include "auralkit/dsp.h"

namespace auralkit {

namespace {

constexpr double kLength = 5.4;
constexpr double kWidth = 4.6;
constexpr double kHeight = 2.85;

Material MakeMaterial(const std::string& id,
                      std::initializer_list<double> alpha, double scattering) {
  Eigen::VectorXd a(kNumOctaveBands);
  int i = 0;
  for (double x : alpha) a[i++] = x;
  return {id, BandSpectrum::Octave(a),
          BandSpectrum::Uniform(scattering, kNumOctaveBands)};
}

class Builder {
 public:
  explicit Builder(RoomModel* model) : model_(model) {}

  int Vertex(const Vec3& p) {
    for (size_t i = 0; i < model_->vertices.size(); ++i) {
      if ((model_->vertices[i] - p).norm() < 1e-9) return static_cast<int>(i);
    }
    model_->vertices.push_back(p);
    return static_cast<int>(model_->vertices.size()) - 1;
  }

  // Axis-aligned rectangle in the plane x[axis] = at, spanning
  // [u0, u1] x [v0, v1] on the other two axes, facing `facing` along axis.
  void Rect(int axis, double at, double u0, double u1, double v0, double v1,
            double facing, const std::string& material,
            std::set<std::string> tags) {
    const int u = (axis + 1) % 3;
    const int v = (axis + 2) % 3;
    auto point = [&](double a, double b) {
      Vec3 p;
      p[axis] = at;
      p[u] = a;
      p[v] = b;
      return p;
    };
    std::vector<int> ring = {Vertex(point(u0, v0)), Vertex(point(u1, v0)),
                             Vertex(point(u1, v1)), Vertex(point(u0, v1))};
    // (u, v, axis) is right-handed, so this winding faces +axis.
    if (facing < 0.0) std::reverse(ring.begin(), ring.end());
    model_->polygons.push_back({ring, material, std::move(tags)});
  }

  void Box(const Vec3& lo, const Vec3& hi, const std::string& material) {
    for (int axis = 0; axis < 3; ++axis) {
      const int u = (axis + 1) % 3;
      const int v = (axis + 2) % 3;
      Rect(axis, lo[axis], lo[u], hi[u], lo[v], hi[v], -1.0, material,
           {"furniture"});
      Rect(axis, hi[axis], lo[u], hi[u], lo[v], hi[v], 1.0, material,
           {"furniture"});
    }
  }

 private:
  RoomModel* model_;
};

}  // namespace

RoomModel SyntheticLivingRoom() {
  RoomModel room;
  room.name = "synthetic-living-room";
  for (const Material& m : {
           MakeMaterial("plaster", {0.10, 0.08, 0.06, 0.05, 0.05, 0.05, 0.06, 0.07}, 0.05),
           MakeMaterial("parquet", {0.15, 0.11, 0.10, 0.07, 0.06, 0.07, 0.07, 0.08}, 0.10),
           MakeMaterial("ceiling", {0.14, 0.10, 0.06, 0.05, 0.04, 0.03, 0.03, 0.03}, 0.05),
           MakeMaterial("glass", {0.35, 0.25, 0.18, 0.12, 0.07, 0.04, 0.03, 0.03}, 0.02),
           MakeMaterial("door", {0.14, 0.10, 0.06, 0.08, 0.10, 0.10, 0.10, 0.10}, 0.10),
           MakeMaterial("upholstery", {0.40, 0.50, 0.58, 0.61, 0.58, 0.50, 0.48, 0.45}, 0.70),
           MakeMaterial("wood", {0.15, 0.11, 0.10, 0.07, 0.06, 0.07, 0.07, 0.07}, 0.30),
           MakeMaterial("books", {0.30, 0.25, 0.20, 0.17, 0.15, 0.10, 0.10, 0.10}, 0.80),
           MakeMaterial("carpet", {0.08, 0.24, 0.57, 0.69, 0.71, 0.73, 0.73, 0.73}, 0.20),
           MakeMaterial("curtain", {0.07, 0.31, 0.49, 0.75, 0.70, 0.60, 0.55, 0.50}, 0.30),
           MakeMaterial("panel", {0.25, 0.15, 0.10, 0.09, 0.08, 0.07, 0.07, 0.07}, 0.30),
       }) {
    room.materials[m.id] = m;
  }
  Builder b(&room);
  const std::set<std::string> wall = {"wall"};

  b.Rect(2, 0.0, 0.0, kLength, 0.0, kWidth, -1.0, "parquet", {"floor"});
  b.Rect(2, kHeight, 0.0, kLength, 0.0, kWidth, 1.0, "ceiling", {"ceiling"});

  // x = 0: window wall. Rect on axis 0 spans (y, z).
  const double wy0 = 1.2, wy1 = 3.4, wz0 = 0.9, wz1 = 2.2;
  b.Rect(0, 0.0, 0.0, wy0, 0.0, kHeight, -1.0, "plaster", wall);
  b.Rect(0, 0.0, wy1, kWidth, 0.0, kHeight, -1.0, "plaster", wall);
  b.Rect(0, 0.0, wy0, wy1, 0.0, wz0, -1.0, "plaster", wall);
  b.Rect(0, 0.0, wy0, wy1, wz1, kHeight, -1.0, "plaster", wall);
  b.Rect(0, 0.0, wy0, wy1, wz0, wz1, -1.0, "glass", {"wall", "window"});

  b.Rect(0, kLength, 0.0, kWidth, 0.0, kHeight, 1.0, "plaster", wall);

  // y = 0: door wall. Rect on axis 1 spans (z, x).
  const double dx0 = 4.2, dx1 = 5.1, dz1 = 2.05;
  b.Rect(1, 0.0, 0.0, kHeight, 0.0, dx0, -1.0, "plaster", wall);
  b.Rect(1, 0.0, 0.0, kHeight, dx1, kLength, -1.0, "plaster", wall);
  b.Rect(1, 0.0, dz1, kHeight, dx0, dx1, -1.0, "plaster", wall);
  b.Rect(1, 0.0, 0.0, dz1, dx0, dx1, -1.0, "door", {"wall", "door"});

  b.Rect(1, kWidth, 0.0, kHeight, 0.0, kLength, 1.0, "plaster", wall);

  b.Box({0.15, 1.3, 0.03}, {1.05, 3.3, 0.8}, "upholstery");   // sofa
  b.Box({1.5, 1.8, 0.03}, {2.1, 2.8, 0.45}, "wood");          // coffee table
  b.Box({1.8, 4.23, 0.03}, {3.6, 4.58, 2.0}, "books");        // bookshelf
  b.Box({4.95, 1.5, 0.03}, {5.38, 3.1, 0.6}, "wood");         // sideboard
  b.Box({2.6, 0.3, 0.03}, {3.4, 1.1, 0.8}, "upholstery");     // armchair

  // Detail panels, 1 cm proud of their surface and facing the room.
  const std::set<std::string> detail = {"detail"};
  b.Rect(2, 0.01, 1.3, 3.8, 1.4, 3.2, 1.0, "carpet", detail);
  b.Rect(0, 0.01, wy0 - 0.25, wy0 - 0.05, 0.3, 2.6, 1.0, "curtain", detail);
  b.Rect(0, 0.01, wy1 + 0.05, wy1 + 0.25, 0.3, 2.6, 1.0, "curtain", detail);
  b.Rect(0, kLength - 0.01, 1.7, 2.9, 1.0, 1.7, -1.0, "glass", detail);  // TV
  b.Rect(1, kWidth - 0.01, 1.3, 1.9, 0.4, 1.2, -1.0, "panel", detail);   // frames
  b.Rect(1, kWidth - 0.01, 1.4, 1.7, 3.9, 4.2, -1.0, "panel", detail);
  b.Rect(1, kWidth - 0.01, 1.2, 1.8, 4.4, 5.0, -1.0, "panel", detail);
  b.Rect(1, 0.01, 1.5, 1.8, 0.5, 0.8, 1.0, "panel", detail);
  b.Rect(1, 0.01, 1.4, 1.9, 1.2, 2.0, 1.0, "panel", detail);
  b.Rect(1, 0.01, 0.2, 0.6, 0.5, 1.4, 1.0, "plaster", detail);           // radiator
  b.Rect(1, 0.01, 1.05, 1.13, 4.0, 4.08, 1.0, "plaster", detail);        // switch
  b.Rect(1, 0.01, 0.25, 0.33, 1.95, 2.03, 1.0, "plaster", detail);       // sockets
  b.Rect(1, kWidth - 0.01, 0.25, 0.33, 0.3, 0.38, -1.0, "plaster", detail);
  b.Rect(1, kWidth - 0.01, 0.25, 0.33, 4.0, 4.08, -1.0, "plaster", detail);
  b.Rect(0, kLength - 0.01, 0.5, 0.58, 0.25, 0.33, -1.0, "plaster", detail);
  b.Rect(0, kLength - 0.01, 3.9, 3.98, 0.25, 0.33, -1.0, "plaster", detail);
  b.Rect(0, kLength - 0.01, 0.3, 0.9, 1.4, 2.2, -1.0, "panel", detail);
  b.Rect(0, kLength - 0.01, 3.6, 4.2, 1.4, 2.2, -1.0, "panel", detail);
  b.Rect(2, kHeight - 0.01, 2.5, 2.9, 2.1, 2.5, -1.0, "panel", detail);  // lamp
  b.Rect(2, kHeight - 0.01, 0.6, 1.4, 0.5, 1.0, -1.0, "panel", detail);  // diffuser
  b.Rect(2, kHeight - 0.01, 4.2, 4.5, 2.1, 2.4, -1.0, "plaster", detail);
  b.Rect(0, 0.01, 0.3, 0.9, 1.2, 1.6, 1.0, "panel", detail);
  b.Rect(0, 0.01, 3.7, 4.3, 1.2, 1.6, 1.0, "panel", detail);
  b.Rect(0, 0.01, 0.5, 0.58, 0.25, 0.33, 1.0, "plaster", detail);

  room.sources = {{"A0", {4.6, 1.2, 1.2}},
                  {"A1", {4.6, 2.3, 1.0}},
                  {"A2", {4.6, 3.4, 1.2}}};
  room.receivers = {{"P1", {3.4, 2.3, 1.2}},
                    {"P2", {2.4, 1.4, 1.2}},
                    {"P3", {1.3, 2.3, 1.2}}};
  return room;
}

Signal SyntheticSpeech(double sample_rate, double seconds, uint64_t seed) {
  const Eigen::Index n = std::llround(sample_rate * seconds);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Signal noise(n);
  for (Eigen::Index i = 0; i < n; ++i) noise[i] = normal(rng);
  // Speech-like long-term spectrum: high-pass at 100 Hz, flat to 500 Hz,
  // then -6 dB per octave.
  Signal x = ZeroPhaseFilter(noise, sample_rate, [](double f) {
    if (f < 60.0) return 0.0;
    const double hp = f < 100.0 ? (f - 60.0) / 40.0 : 1.0;
    return hp * (f <= 500.0 ? 1.0 : 500.0 / f);
  });
  std::uniform_real_distribution<double> jitter(0.7, 1.3);
  double phase = 0.0;
  double rate = 4.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    phase += 2.0 * kPi * rate / sample_rate;
    if (phase >= 2.0 * kPi) {
      phase -= 2.0 * kPi;
      rate = 4.0 * jitter(rng);
    }
    const double t = i / sample_rate;
    const double pause = std::fmod(t, 2.2) > 1.9 ? 0.0 : 1.0;
    x[i] *= pause * std::pow(std::sin(0.5 * phase), 2.0);
  }
  const double peak = x.cwiseAbs().maxCoeff();
  return peak > 0.0 ? Signal(0.5 * x / peak) : x;
}

Signal SyntheticMusic(double sample_rate, double seconds, uint64_t seed) {
  const Eigen::Index n = std::llround(sample_rate * seconds);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal;
  Signal x = Signal::Zero(n);
  const double scale[] = {220.0, 246.9, 261.6, 293.7, 329.6, 349.2, 392.0, 440.0};
  const double note = 0.25;
  for (double start = 0.0; start < seconds; start += note) {
    const double f0 = scale[static_cast<int>(unit(rng) * 8) % 8] *
                      (unit(rng) < 0.3 ? 2.0 : 1.0);
    const Eigen::Index s0 = std::llround(start * sample_rate);
    for (Eigen::Index i = s0; i < n && i < s0 + std::llround(4 * note * sample_rate); ++i) {
      const double t = (i - s0) / sample_rate;
      double v = 0.0;
      for (int h = 1; h <= 12 && h * f0 < 0.45 * sample_rate; ++h) {
        v += std::sin(2.0 * kPi * h * f0 * t) / h;
      }
      x[i] += v * std::exp(-t / 0.3);
    }
    const Eigen::Index hit = std::min<Eigen::Index>(n, s0 + std::llround(0.03 * sample_rate));
    for (Eigen::Index i = s0; i < hit; ++i) x[i] += 0.5 * normal(rng);
  }
  for (Eigen::Index i = 0; i < n; ++i) x[i] += 0.01 * normal(rng);
  const double peak = x.cwiseAbs().maxCoeff();
  return peak > 0.0 ? Signal(0.5 * x / peak) : x;
}

}  // namespace auralkit
