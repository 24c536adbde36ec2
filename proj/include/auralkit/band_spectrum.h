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

#ifndef AURALKIT_BAND_SPECTRUM_H_
#define AURALKIT_BAND_SPECTRUM_H_

#include <array>

#include "auralkit/common.h"

namespace auralkit {

// 125 Hz ... 16 kHz octave centers used for every material and simulation.
inline constexpr std::array<double, kNumOctaveBands> kOctaveCenters = {
    125.0, 250.0, 500.0, 1000.0, 2000.0, 4000.0, 8000.0, 16000.0};

// Per-band coefficients (absorption, scattering, reverberation time, ...)
// together with the band center frequencies they belong to.
struct BandSpectrum {
  Eigen::VectorXd centers;
  Eigen::VectorXd values;

  Eigen::Index size() const { return values.size(); }

  static BandSpectrum Octave(const Eigen::VectorXd& values);
  static BandSpectrum Uniform(double value, int bands = kNumOctaveBands);
};

// Centers ascending and positive, lengths equal and in {8, 4, 2, 1}.
// Throws ValidationError.
void ValidateBands(const BandSpectrum& spectrum);

// Additionally requires every value in [0, 1].
void ValidateCoefficients(const BandSpectrum& spectrum);

// Merges adjacent groups of 8 / target_bands octave bands. The merged
// value is the arithmetic mean and the merged center the geometric mean.
BandSpectrum BandReduce(const BandSpectrum& spectrum, int target_bands);

// Expands a 8/4/2/1-band spectrum onto the 8 octave simulation bands,
// each octave taking the value of the group it was merged into.
Eigen::VectorXd ExpandToOctaves(const BandSpectrum& spectrum);

// Fraction of [0, fs/2] covered by each octave band with crossovers at
// the geometric midpoints between centers. Sums to 1.
Eigen::VectorXd OctaveBandwidthFractions(double sample_rate);

}  // namespace auralkit

#endif  // AURALKIT_BAND_SPECTRUM_H_
