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

#ifndef AURALKIT_DSP_H_
#define AURALKIT_DSP_H_

#include <functional>
#include <vector>

#include "auralkit/common.h"

namespace auralkit {

Eigen::Index NextPowerOfTwo(Eigen::Index n);

// Full linear convolution (length a + b - 1) through the FFT.
Signal FftConvolve(const Signal& a, const Signal& b);

// Real, zero-phase frequency-domain filter applied to every column of `x`.
// `gain(f)` is the magnitude response; `padding` samples of zeros guard
// against circular wrap of the filter tails.
MultiSignal ZeroPhaseFilter(const MultiSignal& x, double sample_rate,
                            const std::function<double(double)>& gain,
                            Eigen::Index padding = 8192);
Signal ZeroPhaseFilter(const Signal& x, double sample_rate,
                       const std::function<double(double)>& gain,
                       Eigen::Index padding = 8192);

// Magnitude of octave band `band` (0 = 125 Hz ... 7 = 16 kHz) at `freq`.
// Neighbouring bands cross over with a raised-sine transition 1/6 octave
// either side of the geometric midpoint, and the bands sum to exactly 1 at
// every frequency, so the full bank reconstructs its input.
double OctaveBandGain(int band, double freq);

Signal OctaveBandFilter(const Signal& x, int band, double sample_rate);

// Second-order section, direct form I coefficients (a0 normalized to 1).
struct Biquad {
  double b0, b1, b2, a1, a2;
};

// Butterworth low-pass as cascaded biquads via the bilinear transform.
// `order` must be even.
std::vector<Biquad> ButterworthLowpass(int order, double cutoff,
                                       double sample_rate);

Signal FilterCascade(const std::vector<Biquad>& sections, const Signal& x);

// Forward-backward application: zero phase, squared magnitude.
Signal FiltFilt(const std::vector<Biquad>& sections, const Signal& x);

// Glasberg & Moore ERB scale.
double ErbBandwidth(double freq);
double ErbNumber(double freq);
double ErbNumberToFrequency(double erb_number);

// `count` center frequencies equally spaced on the ERB-number scale.
std::vector<double> ErbSpacedFrequencies(int count, double lo, double hi);

// 4th-order gammatone impulse response normalized to unit gain at `center`.
Signal GammatoneImpulseResponse(double center, double sample_rate,
                                double duration = 0.05);

}  // namespace auralkit

#endif  // AURALKIT_DSP_H_
