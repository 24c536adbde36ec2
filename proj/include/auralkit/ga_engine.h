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

// Hybrid geometrical-acoustics engine. Image sources give the exact early
// specular arrivals; stochastic ray tracing fills an energy histogram
// with everything else; both are turned into an Ambisonics impulse
// response.
//
// Energies are normalized so that a free-field direct path at 1 m carries
// energy 1 in every band (spherical spreading 1/d^2).

#ifndef AURALKIT_GA_ENGINE_H_
#define AURALKIT_GA_ENGINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "auralkit/geometry.h"
#include "auralkit/polygon_set.h"

namespace auralkit {

struct SimConfig {
  int num_rays = 100000;
  double max_time = 1.5;        // s
  double sample_rate = 44100.0;  // Hz
  int ambisonics_order = 3;
  int image_source_order = 2;
  uint64_t rng_seed = 1;
  bool air_absorption = false;
  double receiver_radius = 0.5;    // m
  double time_bin_width = 1e-3;    // s
  int threads = 0;                 // 0: hardware concurrency
};

// num_rays >= 1000, max_time > 0, order >= 0, rate 44.1 or 48 kHz.
void ValidateSimConfig(const SimConfig& config);

enum class ArrivalKind { kDirect, kSpecular, kStochastic };

struct Arrival {
  double time = 0.0;              // s
  Vec3 direction = Vec3::UnitX();  // unit vector from receiver towards the arrival
  BandVector energy = BandVector::Zero();
  ArrivalKind kind = ArrivalKind::kDirect;
  int order = 0;  // number of reflections
};

// Energy a flat-spectrum pulse with these band energies carries when
// resynthesized through the octave filterbank at `sample_rate`.
double BroadbandEnergy(const BandVector& energy, double sample_rate);

struct Reflectogram {
  double time_bin_width = 1e-3;
  std::vector<Vec3> directions;  // direction grid
  int num_bins = 0;
  // bins x (directions * bands); column = direction * 8 + band.
  // `energy` holds everything not already represented by `arrivals`;
  // `early_specular` holds ray crossings of purely specular paths up to the
  // image-source order, kept for diagnostics and decay analysis.
  Eigen::MatrixXd energy;
  Eigen::MatrixXd early_specular;
  std::vector<Arrival> arrivals;
  double room_volume = 0.0;
  double speed_of_sound = kDefaultSpeedOfSound;
  int num_rays = 0;
  int escaped_rays = 0;

  // bins x bands, summed over directions.
  Eigen::MatrixXd BandHistogram(bool include_early_specular) const;

  // Arrivals (within the histogram span) plus the stochastic remainder,
  // as broadband energy at `sample_rate`.
  double TotalEnergy(double sample_rate) const;
};

struct AmbisonicsIR {
  double sample_rate = 44100.0;
  int order = 3;
  MultiSignal channels;  // samples x (order + 1)^2, ACN / SN3D
  Eigen::Index onset_index = 0;

  Eigen::Index length() const { return channels.rows(); }
};

class TracingError : public Error {
 public:
  using Error::Error;
};

// Per-band air attenuation (1/m, energy) at 20 C and 50 % humidity.
BandVector AirAttenuation();

// Visible specular paths up to `order` reflections, direct path first.
std::vector<Arrival> ImageSources(const RoomModel& model, const Vec3& source,
                                  const Vec3& receiver, int order,
                                  bool air_absorption = false);

// Ray-traces the room and collects the image-source arrivals. Bit-identical
// for a fixed seed regardless of thread count. Throws TracingError when
// more than 1 % of rays escape.
Reflectogram Trace(const RoomModel& model, const Vec3& source,
                   const Vec3& receiver, const SimConfig& config);

// Same, on a prebuilt polygon set (used by the calibration loop).
Reflectogram Trace(const PolygonSet& surfaces, double room_volume,
                   double speed_of_sound, const Vec3& source,
                   const Vec3& receiver, const SimConfig& config,
                   std::vector<Arrival> arrivals);

AmbisonicsIR SynthesizeAir(const Reflectogram& reflectogram,
                           const SimConfig& config);

struct DirectRemoval {
  AmbisonicsIR reverb;
  Eigen::Index zeroed_samples = 0;
  double removed_reverb_energy_fraction = 0.0;
};

// Zeroes [onset, onset + round(window * fs)) in every channel. The energy
// fraction counts reflected arrivals falling inside the zeroed span.
DirectRemoval RemoveDirect(const AmbisonicsIR& air,
                           std::span<const Arrival> arrivals,
                           double window = 4.5e-3);

// Zero-phase 8th-order Butterworth low-pass on every channel.
AmbisonicsIR MakeAnchor(const AmbisonicsIR& air, double cutoff = 2500.0);

// AmbiX WAV plus a "<path>.json" sidecar holding order and onset.
void WriteAir(const std::string& path, const AmbisonicsIR& air);
AmbisonicsIR ReadAir(const std::string& path);

}  // namespace auralkit

#endif  // AURALKIT_GA_ENGINE_H_
