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
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unsupported/Eigen/FFT>

#include "auralkit/binaural.h"
#include "auralkit/spherical_harmonics.h"
#include "auralkit/wav.h"

namespace auralkit {

namespace {

constexpr double kHeadRadius = 0.0875;
constexpr double kMaxGapDegrees = 30.0;
constexpr int kCoverageProbes = 4000;

double Degrees(double rad) { return rad * 180.0 / kPi; }

// Woodworth delay (s) relative to the head centre for an ear on `axis`.
double EarDelay(const Vec3& direction, const Vec3& axis) {
  const double c = std::clamp(direction.dot(axis), -1.0, 1.0);
  const double theta = std::acos(c);
  const double scale = kHeadRadius / kDefaultSpeedOfSound;
  return c >= 0.0 ? -scale * c : scale * (theta - 0.5 * kPi);
}

Signal EarResponse(const Vec3& direction, const Vec3& axis, double sample_rate,
                   Eigen::Index length) {
  const double theta = std::acos(std::clamp(direction.dot(axis), -1.0, 1.0));
  const double alpha = 1.05 + 0.95 * std::cos(theta * 180.0 / 150.0);
  const double w0 = kDefaultSpeedOfSound / kHeadRadius;
  const double delay = 32.0 / sample_rate + EarDelay(direction, axis);
  std::vector<std::complex<double>> spectrum(length / 2 + 1);
  for (size_t k = 0; k < spectrum.size(); ++k) {
    const double w = 2.0 * kPi * k * sample_rate / length;
    const std::complex<double> shadow =
        std::complex<double>(1.0, alpha * w / (2.0 * w0)) /
        std::complex<double>(1.0, w / (2.0 * w0));
    spectrum[k] = shadow * std::polar(1.0, -w * delay);
  }
  spectrum.back() = spectrum.back().real();
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  std::vector<double> ir;
  fft.inv(ir, spectrum, length);
  Signal out = Eigen::Map<Signal>(ir.data(), length);
  const Eigen::Index fade = length / 8;
  for (Eigen::Index i = 0; i < fade; ++i) {
    out[length - fade + i] *= 0.5 + 0.5 * std::cos(kPi * (i + 0.5) / fade);
  }
  return out;
}

}  // namespace

void ValidateHrirSet(const HRIRSet& set) {
  if (!(set.sample_rate > 0.0)) {
    throw ValidationError("HRIR set sample rate must be > 0");
  }
  if (set.entries.size() < 20) {
    throw ValidationError("HRIR set needs at least 20 directions, has " +
                          std::to_string(set.entries.size()));
  }
  const Eigen::Index length = set.length();
  if (length == 0) throw ValidationError("HRIRs are empty");
  for (size_t i = 0; i < set.entries.size(); ++i) {
    const HrirEntry& e = set.entries[i];
    if (std::abs(e.direction.norm() - 1.0) > 1e-9) {
      throw ValidationError("HRIR direction " + std::to_string(i) +
                            " is not a unit vector");
    }
    if (e.left.size() != length || e.right.size() != length) {
      throw ValidationError("HRIRs differ in length");
    }
    if (!e.left.allFinite() || !e.right.allFinite()) {
      throw ValidationError("HRIR " + std::to_string(i) + " is not finite");
    }
    for (size_t j = 0; j < i; ++j) {
      if (set.entries[j].direction.dot(e.direction) > 1.0 - 1e-12) {
        throw ValidationError("HRIR directions " + std::to_string(j) + " and " +
                              std::to_string(i) + " coincide");
      }
    }
  }
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  double worst = 0.0;
  for (int k = 0; k < kCoverageProbes; ++k) {
    const double z = 1.0 - (2.0 * k + 1.0) / kCoverageProbes;
    const double r = std::sqrt(1.0 - z * z);
    const Vec3 probe(r * std::cos(golden * k), r * std::sin(golden * k), z);
    const Vec3& nearest = set.entries[NearestHrir(set, probe)].direction;
    worst = std::max(worst,
                     std::acos(std::clamp(nearest.dot(probe), -1.0, 1.0)));
  }
  if (Degrees(worst) > kMaxGapDegrees) {
    throw ValidationError("HRIR set leaves a " + std::to_string(Degrees(worst)) +
                          " degree gap (limit 30)");
  }
}

int NearestHrir(const HRIRSet& set, const Vec3& direction) {
  if (set.entries.empty()) throw ValidationError("HRIR set is empty");
  const Vec3 d = direction.normalized();
  int best = 0;
  double best_dot = -2.0;
  for (size_t i = 0; i < set.entries.size(); ++i) {
    const double dot = set.entries[i].direction.dot(d);
    if (dot > best_dot) {
      best_dot = dot;
      best = static_cast<int>(i);
    }
  }
  return best;
}

HRIRSet SphericalHeadHrirs(double sample_rate, double step_deg,
                           Eigen::Index length) {
  if (!(step_deg > 0.0) || step_deg > 30.0 || length < 64) {
    throw ValidationError("HRIR grid step must lie in (0, 30] and length >= 64");
  }
  HRIRSet set;
  set.name = "spherical-head";
  set.sample_rate = sample_rate;
  const Vec3 left_ear = Vec3::UnitY();
  const Vec3 right_ear = -Vec3::UnitY();
  auto add = [&](const Vec3& d) {
    set.entries.push_back({d, EarResponse(d, left_ear, sample_rate, length),
                           EarResponse(d, right_ear, sample_rate, length)});
  };
  const int rings = static_cast<int>(std::round(90.0 / step_deg));
  const int azimuths = static_cast<int>(std::round(360.0 / step_deg));
  add(-Vec3::UnitZ());
  for (int e = -rings + 1; e < rings; ++e) {
    const double el = e * 90.0 / rings * kPi / 180.0;
    for (int a = 0; a < azimuths; ++a) {
      add(DirectionFromAngles(2.0 * kPi * a / azimuths, el));
    }
  }
  add(Vec3::UnitZ());
  return set;
}

HRIRSet LoadHrirSet(const std::string& directory) {
  namespace fs = std::filesystem;
  const fs::path root(directory);
  std::ifstream index(root / "index.txt");
  if (!index) throw ParseError("'" + directory + "' has no index.txt");
  HRIRSet set;
  set.name = root.filename().string();
  set.sample_rate = 0.0;
  std::string line;
  int line_number = 0;
  while (std::getline(index, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream s(line);
    double az, el;
    std::string file;
    if (!(s >> az >> el >> file)) {
      throw ParseError("index.txt:" + std::to_string(line_number) +
                       ": expected 'azimuth elevation file'");
    }
    const WavData wav = ReadWav((root / file).string());
    if (wav.samples.cols() != 2) {
      throw ParseError("'" + file + "' must have two channels");
    }
    if (set.sample_rate == 0.0) set.sample_rate = wav.sample_rate;
    if (wav.sample_rate != set.sample_rate) {
      throw ParseError("'" + file + "' has a different sample rate");
    }
    set.entries.push_back({DirectionFromAngles(az * kPi / 180.0, el * kPi / 180.0),
                           wav.samples.col(0), wav.samples.col(1)});
  }
  ValidateHrirSet(set);
  return set;
}

void SaveHrirSet(const std::string& directory, const HRIRSet& set) {
  namespace fs = std::filesystem;
  ValidateHrirSet(set);
  fs::create_directories(directory);
  std::ofstream index(fs::path(directory) / "index.txt");
  if (!index) throw Error("cannot write index.txt in '" + directory + "'");
  index.precision(12);
  index << "# azimuth_deg elevation_deg file\n";
  for (size_t i = 0; i < set.entries.size(); ++i) {
    const HrirEntry& e = set.entries[i];
    char file[32];
    std::snprintf(file, sizeof(file), "hrir_%04zu.wav", i);
    MultiSignal pair(e.left.size(), 2);
    pair << e.left, e.right;
    WriteWav((fs::path(directory) / file).string(), pair, set.sample_rate);
    index << Degrees(std::atan2(e.direction.y(), e.direction.x())) << " "
          << Degrees(std::asin(std::clamp(e.direction.z(), -1.0, 1.0))) << " "
          << file << "\n";
  }
}

}  // namespace auralkit
