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
#include <fstream>
#include <random>
#include <sstream>

#include "auralkit/dsp.h"
#include "auralkit/ga_engine.h"
#include "auralkit/spherical_harmonics.h"
#include "auralkit/wav.h"
#include "json.hpp"

namespace auralkit {

namespace {

// Overall cap on the synthesized reflection density (1/s).
constexpr double kMaxReflectionDensity = 20000.0;

uint64_t SplitSeed(uint64_t seed, uint64_t stream) {
  uint64_t x = seed ^ (0xD1B54A32D192ED03ull * (stream + 1));
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

struct Pulse {
  Eigen::Index sample;
  int bin;
  double sign;
};

// Poisson pulse train for one direction cell. The density grows as
// 4 pi c^3 t^2 / V (image-source count in a room of volume V), capped,
// and every bin that carries energy receives at least one pulse so the
// histogram energy is fully represented.
std::vector<Pulse> CellPulses(const Eigen::MatrixXd& energy, int cell,
                              int cells, const Reflectogram& r,
                              double sample_rate, Eigen::Index length,
                              uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  std::vector<Pulse> pulses;
  const double c3 = std::pow(r.speed_of_sound, 3.0);
  const double volume = std::max(r.room_volume, 1.0);
  for (int bin = 0; bin < r.num_bins; ++bin) {
    const bool active =
        energy.block<1, kNumOctaveBands>(bin, cell * kNumOctaveBands).sum() > 0.0;
    const double t0 = bin * r.time_bin_width;
    const double t1 = t0 + r.time_bin_width;
    const double tm = 0.5 * (t0 + t1);
    const double density =
        std::min(4.0 * kPi * c3 * tm * tm / volume, kMaxReflectionDensity) /
        cells;
    // Draw the bin's pulses even when inactive so the stream stays aligned.
    std::vector<double> times;
    double t = t0 - std::log(1.0 - uniform()) / density;
    while (t < t1) {
      times.push_back(t);
      t -= std::log(1.0 - uniform()) / density;
    }
    if (times.empty()) times.push_back(t0 + uniform() * r.time_bin_width);
    for (double time : times) {
      const double sign = uniform() < 0.5 ? -1.0 : 1.0;
      if (!active) continue;
      const Eigen::Index s =
          std::min<Eigen::Index>(std::llround(time * sample_rate), length - 1);
      pulses.push_back({s, bin, sign});
    }
  }
  return pulses;
}

}  // namespace

AmbisonicsIR SynthesizeAir(const Reflectogram& reflectogram,
                           const SimConfig& config) {
  ValidateSimConfig(config);
  if (reflectogram.arrivals.empty() && reflectogram.energy.sum() <= 0.0) {
    throw ValidationError("reflectogram is empty");
  }
  const double fs = config.sample_rate;
  const int order = config.ambisonics_order;
  const int channels = AmbisonicChannelCount(order);
  const Eigen::Index length = static_cast<Eigen::Index>(
      std::ceil(reflectogram.num_bins * reflectogram.time_bin_width * fs));
  const int cells = static_cast<int>(reflectogram.directions.size());

  std::vector<Eigen::VectorXd> cell_harmonics;
  for (const Vec3& d : reflectogram.directions) {
    cell_harmonics.push_back(ShEncode(d, order));
  }
  std::vector<std::vector<Pulse>> cell_pulses;
  std::vector<std::vector<int>> pulses_per_bin(cells);
  for (int c = 0; c < cells; ++c) {
    cell_pulses.push_back(CellPulses(reflectogram.energy, c, cells,
                                     reflectogram, fs, length,
                                     SplitSeed(config.rng_seed, c)));
    pulses_per_bin[c].assign(reflectogram.num_bins, 0);
    for (const Pulse& p : cell_pulses[c]) ++pulses_per_bin[c][p.bin];
  }

  AmbisonicsIR air;
  air.sample_rate = fs;
  air.order = order;
  air.channels = MultiSignal::Zero(length, channels);
  for (int band = 0; band < kNumOctaveBands; ++band) {
    MultiSignal band_signal = MultiSignal::Zero(length, channels);
    for (const Arrival& a : reflectogram.arrivals) {
      const Eigen::Index s = std::llround(a.time * fs);
      if (s >= length || a.energy[band] <= 0.0) continue;
      band_signal.row(s) +=
          std::sqrt(a.energy[band]) * ShEncode(a.direction, order).transpose();
    }
    for (int c = 0; c < cells; ++c) {
      for (const Pulse& p : cell_pulses[c]) {
        const double e =
            reflectogram.energy(p.bin, c * kNumOctaveBands + band);
        if (e <= 0.0) continue;
        const double amplitude =
            p.sign * std::sqrt(e / pulses_per_bin[c][p.bin]);
        band_signal.row(p.sample) += amplitude * cell_harmonics[c].transpose();
      }
    }
    air.channels += ZeroPhaseFilter(
        band_signal, fs, [band](double f) { return OctaveBandGain(band, f); });
  }

  air.onset_index = 0;
  const Arrival* first = nullptr;
  for (const Arrival& a : reflectogram.arrivals) {
    if (a.kind == ArrivalKind::kDirect) {
      first = &a;
      break;
    }
  }
  if (!first && !reflectogram.arrivals.empty()) {
    first = &reflectogram.arrivals.front();
  }
  if (first) {
    air.onset_index =
        std::min<Eigen::Index>(std::llround(first->time * fs), length - 1);
  } else {
    for (Eigen::Index s = 0; s < length; ++s) {
      if (air.channels(s, 0) != 0.0) {
        air.onset_index = s;
        break;
      }
    }
  }
  return air;
}

DirectRemoval RemoveDirect(const AmbisonicsIR& air,
                           std::span<const Arrival> arrivals, double window) {
  DirectRemoval out;
  out.zeroed_samples = std::lround(window * air.sample_rate);
  if (air.onset_index < 0 ||
      air.onset_index + out.zeroed_samples > air.length()) {
    throw ValidationError("direct-sound window extends past the end of the IR");
  }
  out.reverb = air;
  out.reverb.channels.middleRows(air.onset_index, out.zeroed_samples).setZero();

  double direct = 0.0;
  double removed = 0.0;
  for (const Arrival& a : arrivals) {
    const double e = BroadbandEnergy(a.energy, air.sample_rate);
    if (a.kind == ArrivalKind::kDirect) {
      direct += e;
      continue;
    }
    const Eigen::Index s = std::llround(a.time * air.sample_rate);
    if (s >= air.onset_index && s < air.onset_index + out.zeroed_samples) {
      removed += e;
    }
  }
  const double reverberant =
      air.channels.col(0).tail(air.length() - air.onset_index).squaredNorm() -
      direct;
  out.removed_reverb_energy_fraction =
      reverberant > 0.0 ? std::min(1.0, removed / reverberant) : 0.0;
  return out;
}

AmbisonicsIR MakeAnchor(const AmbisonicsIR& air, double cutoff) {
  if (!(cutoff > 0.0) || cutoff >= 0.5 * air.sample_rate) {
    throw ValidationError("anchor cutoff must lie below Nyquist");
  }
  const auto sections = ButterworthLowpass(8, cutoff, air.sample_rate);
  AmbisonicsIR out = air;
  for (Eigen::Index c = 0; c < air.channels.cols(); ++c) {
    out.channels.col(c) = FiltFilt(sections, air.channels.col(c));
  }
  return out;
}

void WriteAir(const std::string& path, const AmbisonicsIR& air) {
  WriteWav(path, air.channels, air.sample_rate);
  nlohmann::json meta = {{"format", "ambix"},
                         {"channel_order", "ACN"},
                         {"normalization", "SN3D"},
                         {"order", air.order},
                         {"sample_rate", air.sample_rate},
                         {"onset_index", air.onset_index}};
  std::ofstream out(path + ".json");
  if (!out) throw Error("cannot write '" + path + ".json'");
  out << meta.dump(2) << "\n";
}

AmbisonicsIR ReadAir(const std::string& path) {
  WavData wav = ReadWav(path);
  AmbisonicsIR air;
  air.sample_rate = wav.sample_rate;
  air.channels = std::move(wav.samples);
  std::ifstream in(path + ".json");
  if (in) {
    try {
      const auto meta = nlohmann::json::parse(in);
      air.order = meta.at("order").get<int>();
      air.onset_index = meta.at("onset_index").get<Eigen::Index>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("'" + path + ".json': " + e.what());
    }
  } else {
    air.order = static_cast<int>(std::lround(std::sqrt(air.channels.cols()))) - 1;
  }
  if (AmbisonicChannelCount(air.order) != air.channels.cols()) {
    throw ParseError("'" + path + "': channel count does not match order");
  }
  return air;
}

}  // namespace auralkit
