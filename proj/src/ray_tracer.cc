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
#include <future>
#include <random>
#include <thread>

#include "auralkit/band_spectrum.h"
#include "auralkit/ga_engine.h"
#include "auralkit/spherical_harmonics.h"

namespace auralkit {

namespace {

constexpr int kRaysPerBatch = 1024;
constexpr double kEnergyFloor = 1e-8;

uint64_t SplitMix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class Uniform {
 public:
  explicit Uniform(uint64_t seed) : engine_(SplitMix64(seed)) {}
  double operator()() { return (engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

Vec3 UniformSphere(Uniform& u) {
  const double z = 1.0 - 2.0 * u();
  const double phi = 2.0 * kPi * u();
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

// Cosine-weighted direction in the hemisphere around `normal`.
Vec3 Lambert(const Vec3& normal, Uniform& u) {
  const Vec3 helper =
      std::abs(normal.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  const Vec3 t = normal.cross(helper).normalized();
  const Vec3 b = normal.cross(t);
  const double u1 = u();
  const double r = std::sqrt(u1);
  const double phi = 2.0 * kPi * u();
  return (r * std::cos(phi) * t + r * std::sin(phi) * b +
          std::sqrt(std::max(0.0, 1.0 - u1)) * normal)
      .normalized();
}

int NearestDirection(const std::vector<Vec3>& grid, const Vec3& d) {
  int best = 0;
  double best_dot = -2.0;
  for (size_t i = 0; i < grid.size(); ++i) {
    const double dot = grid[i].dot(d);
    if (dot > best_dot) {
      best_dot = dot;
      best = static_cast<int>(i);
    }
  }
  return best;
}

struct BatchResult {
  Eigen::MatrixXd energy;
  Eigen::MatrixXd early_specular;
  int escaped = 0;
};

struct TraceJob {
  const PolygonSet& surfaces;
  const SimConfig& config;
  const std::vector<Vec3>& grid;
  Vec3 source;
  Vec3 receiver;
  double speed_of_sound;
  int num_bins;
  BandVector air;

  BatchResult Run(int batch) const {
    const int columns = static_cast<int>(grid.size()) * kNumOctaveBands;
    BatchResult result{Eigen::MatrixXd::Zero(num_bins, columns),
                       Eigen::MatrixXd::Zero(num_bins, columns), 0};
    const int first = batch * kRaysPerBatch;
    const int last = std::min(config.num_rays, first + kRaysPerBatch);
    const double r = config.receiver_radius;
    const double sphere_volume = 4.0 / 3.0 * kPi * r * r * r;
    const double ray_energy = 4.0 * kPi / config.num_rays;
    const double max_distance = config.max_time * speed_of_sound;

    for (int ray = first; ray < last; ++ray) {
      // One stream per ray: paths do not shift when absorption changes.
      Uniform u(config.rng_seed * 0x100000001B3ull + static_cast<uint64_t>(ray));
      Vec3 position = source;
      Vec3 direction = UniformSphere(u);
      BandVector energy = BandVector::Constant(ray_energy);
      double travelled = 0.0;
      bool specular_only = true;
      int order = 0;
      int last_polygon = -1;
      while (travelled < max_distance) {
        const auto hit = surfaces.Intersect(position, direction, 1e9, last_polygon);
        const double segment =
            std::min(hit ? hit->distance : 1e9, max_distance - travelled);

        // Chord of the segment through the receiver sphere.
        const Vec3 offset = position - receiver;
        const double b = offset.dot(direction);
        const double disc = b * b - (offset.squaredNorm() - r * r);
        if (disc > 0.0) {
          const double root = std::sqrt(disc);
          const double lo = std::max(0.0, -b - root);
          const double hi = std::min(segment, -b + root);
          if (hi > lo) {
            const double distance = travelled + 0.5 * (lo + hi);
            const int bin = static_cast<int>(
                distance / speed_of_sound / config.time_bin_width);
            if (bin < num_bins) {
              const int cell = NearestDirection(grid, -direction);
              BandVector e = energy * ((hi - lo) / sphere_volume);
              if (config.air_absorption) {
                e.array() *= (-air.array() * distance).exp();
              }
              Eigen::MatrixXd& target =
                  specular_only && order <= config.image_source_order
                      ? result.early_specular
                      : result.energy;
              target.block<1, kNumOctaveBands>(bin, cell * kNumOctaveBands) +=
                  e.transpose();
            }
          }
        }
        if (!hit) {
          ++result.escaped;
          break;
        }
        travelled += segment;
        if (travelled >= max_distance) break;

        const int p = hit->polygon;
        energy.array() *= 1.0 - surfaces.absorption(p).array();
        if (energy.maxCoeff() < kEnergyFloor * ray_energy) break;
        Vec3 normal = surfaces.normal(p);
        if (normal.dot(direction) > 0.0) normal = -normal;
        if (u() < surfaces.mean_scattering(p)) {
          direction = Lambert(normal, u);
          specular_only = false;
        } else {
          direction -= 2.0 * direction.dot(normal) * normal;
          direction.normalize();
        }
        position = hit->point;
        last_polygon = p;
        ++order;
      }
    }
    return result;
  }
};

}  // namespace

void ValidateSimConfig(const SimConfig& config) {
  if (config.num_rays < 1000) {
    throw ValidationError("num_rays must be >= 1000");
  }
  if (!(config.max_time > 0.0)) throw ValidationError("max_time must be > 0");
  if (config.ambisonics_order < 0) {
    throw ValidationError("Ambisonics order must be >= 0");
  }
  if (config.image_source_order < 0) {
    throw ValidationError("image-source order must be >= 0");
  }
  if (config.sample_rate != 44100.0 && config.sample_rate != 48000.0) {
    throw ValidationError("sample rate must be 44100 or 48000 Hz");
  }
  if (!(config.receiver_radius > 0.0) || !(config.time_bin_width > 0.0)) {
    throw ValidationError("receiver radius and time bin width must be > 0");
  }
  if (config.max_time * config.sample_rate > 1e8) {
    throw ValidationError("max_time * sample_rate exceeds 1e8 samples");
  }
}

double BroadbandEnergy(const BandVector& energy, double sample_rate) {
  return energy.dot(OctaveBandwidthFractions(sample_rate));
}

Eigen::MatrixXd Reflectogram::BandHistogram(bool include_early_specular) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(num_bins, kNumOctaveBands);
  for (size_t d = 0; d < directions.size(); ++d) {
    out += energy.middleCols(d * kNumOctaveBands, kNumOctaveBands);
    if (include_early_specular) {
      out += early_specular.middleCols(d * kNumOctaveBands, kNumOctaveBands);
    }
  }
  return out;
}

double Reflectogram::TotalEnergy(double sample_rate) const {
  const Eigen::VectorXd fractions = OctaveBandwidthFractions(sample_rate);
  double total = 0.0;
  const double span = num_bins * time_bin_width;
  for (const Arrival& a : arrivals) {
    if (a.time < span) total += a.energy.dot(fractions);
  }
  total += (BandHistogram(false) * fractions).sum();
  return total;
}

Reflectogram Trace(const RoomModel& model, const Vec3& source,
                   const Vec3& receiver, const SimConfig& config) {
  ValidateSimConfig(config);
  const double volume = ComputeVolume(model);
  std::vector<Arrival> arrivals = ImageSources(
      model, source, receiver, config.image_source_order, config.air_absorption);
  return Trace(PolygonSet(model), volume, model.speed_of_sound, source,
               receiver, config, std::move(arrivals));
}

Reflectogram Trace(const PolygonSet& surfaces, double room_volume,
                   double speed_of_sound, const Vec3& source,
                   const Vec3& receiver, const SimConfig& config,
                   std::vector<Arrival> arrivals) {
  ValidateSimConfig(config);
  if ((source - receiver).norm() < 1e-6) {
    throw ValidationError("source and receiver coincide");
  }
  Reflectogram out;
  out.time_bin_width = config.time_bin_width;
  out.directions = DodecahedronVertices<double>();
  out.num_bins =
      static_cast<int>(std::ceil(config.max_time / config.time_bin_width));
  out.room_volume = room_volume;
  out.speed_of_sound = speed_of_sound;
  out.num_rays = config.num_rays;
  out.arrivals = std::move(arrivals);

  const TraceJob job{surfaces, config,         out.directions, source,
                     receiver, speed_of_sound, out.num_bins,   AirAttenuation()};
  const int columns = static_cast<int>(out.directions.size()) * kNumOctaveBands;
  out.energy = Eigen::MatrixXd::Zero(out.num_bins, columns);
  out.early_specular = Eigen::MatrixXd::Zero(out.num_bins, columns);

  const int batches = (config.num_rays + kRaysPerBatch - 1) / kRaysPerBatch;
  int workers = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, batches);

  // Batches run in waves; results are reduced strictly in batch order so
  // the sums do not depend on scheduling.
  for (int start = 0; start < batches; start += workers) {
    const int end = std::min(batches, start + workers);
    std::vector<std::future<BatchResult>> wave;
    for (int b = start + 1; b < end; ++b) {
      wave.push_back(std::async(std::launch::async,
                                [&job, b] { return job.Run(b); }));
    }
    BatchResult first = job.Run(start);
    out.energy += first.energy;
    out.early_specular += first.early_specular;
    out.escaped_rays += first.escaped;
    for (auto& f : wave) {
      BatchResult r = f.get();
      out.energy += r.energy;
      out.early_specular += r.early_specular;
      out.escaped_rays += r.escaped;
    }
  }
  if (out.escaped_rays > 0.01 * config.num_rays) {
    throw TracingError(std::to_string(out.escaped_rays) + " of " +
                       std::to_string(config.num_rays) +
                       " rays escaped the room; the model is not watertight");
  }
  return out;
}

}  // namespace auralkit
