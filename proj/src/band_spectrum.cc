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

#include "auralkit/band_spectrum.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace auralkit {

namespace {

bool IsAllowedLength(Eigen::Index n) {
  return n == 8 || n == 4 || n == 2 || n == 1;
}

}  // namespace

BandSpectrum BandSpectrum::Octave(const Eigen::VectorXd& values) {
  BandSpectrum s;
  s.centers = Eigen::Map<const Eigen::VectorXd>(kOctaveCenters.data(),
                                                kNumOctaveBands);
  s.values = values;
  return s;
}

BandSpectrum BandSpectrum::Uniform(double value, int bands) {
  BandSpectrum octave =
      Octave(Eigen::VectorXd::Constant(kNumOctaveBands, value));
  return bands == kNumOctaveBands ? octave : BandReduce(octave, bands);
}

void ValidateBands(const BandSpectrum& spectrum) {
  if (spectrum.centers.size() != spectrum.values.size()) {
    throw ValidationError("band spectrum: " +
                          std::to_string(spectrum.centers.size()) +
                          " centers but " +
                          std::to_string(spectrum.values.size()) + " values");
  }
  if (!IsAllowedLength(spectrum.values.size())) {
    throw ValidationError("band spectrum: length must be 8, 4, 2 or 1, got " +
                          std::to_string(spectrum.values.size()));
  }
  for (Eigen::Index i = 0; i < spectrum.centers.size(); ++i) {
    if (!(spectrum.centers[i] > 0.0)) {
      throw ValidationError("band spectrum: non-positive center frequency");
    }
    if (i > 0 && !(spectrum.centers[i] > spectrum.centers[i - 1])) {
      throw ValidationError("band spectrum: centers not strictly ascending");
    }
  }
}

void ValidateCoefficients(const BandSpectrum& spectrum) {
  ValidateBands(spectrum);
  for (double v : spectrum.values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValidationError("coefficient " + std::to_string(v) +
                            " outside [0, 1]");
    }
  }
}

BandSpectrum BandReduce(const BandSpectrum& spectrum, int target_bands) {
  ValidateBands(spectrum);
  if (spectrum.size() != kNumOctaveBands) {
    throw ValidationError("band reduction needs the 8-band octave form, got " +
                          std::to_string(spectrum.size()) + " bands");
  }
  for (int i = 0; i < kNumOctaveBands; ++i) {
    if (std::abs(spectrum.centers[i] - kOctaveCenters[i]) >
        1e-9 * kOctaveCenters[i]) {
      throw ValidationError("band reduction needs canonical octave centers");
    }
  }
  if (target_bands != 4 && target_bands != 2 && target_bands != 1) {
    throw ValidationError("band reduction target must be 4, 2 or 1, got " +
                          std::to_string(target_bands));
  }
  const int group = kNumOctaveBands / target_bands;
  BandSpectrum out;
  out.centers.resize(target_bands);
  out.values.resize(target_bands);
  for (int g = 0; g < target_bands; ++g) {
    out.values[g] = spectrum.values.segment(g * group, group).mean();
    out.centers[g] = std::exp(
        spectrum.centers.segment(g * group, group).array().log().mean());
  }
  return out;
}

Eigen::VectorXd ExpandToOctaves(const BandSpectrum& spectrum) {
  ValidateBands(spectrum);
  const Eigen::Index group = kNumOctaveBands / spectrum.size();
  Eigen::VectorXd out(kNumOctaveBands);
  for (int b = 0; b < kNumOctaveBands; ++b) out[b] = spectrum.values[b / group];
  return out;
}

Eigen::VectorXd OctaveBandwidthFractions(double sample_rate) {
  const double nyquist = 0.5 * sample_rate;
  Eigen::VectorXd fractions(kNumOctaveBands);
  double lower = 0.0;
  for (int b = 0; b < kNumOctaveBands; ++b) {
    double upper = b + 1 < kNumOctaveBands
                       ? std::sqrt(kOctaveCenters[b] * kOctaveCenters[b + 1])
                       : nyquist;
    upper = std::min(upper, nyquist);
    fractions[b] = std::max(0.0, upper - lower) / nyquist;
    lower = upper;
  }
  return fractions;
}

}  // namespace auralkit
