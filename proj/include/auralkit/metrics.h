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

#ifndef AURALKIT_METRICS_H_
#define AURALKIT_METRICS_H_

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "auralkit/common.h"
#include "auralkit/ga_engine.h"

namespace auralkit {

class DecayError : public Error {
 public:
  using Error::Error;
};

// Backward-integrated energy decay in dB, 0 dB at the first sample.
struct DecayCurve {
  double time_step = 0.0;  // s per point
  Eigen::VectorXd level_db;
};

// Band-filters (band = -1 for broadband), squares and integrates
// backwards. Throws DecayError for silent or impulse-like input.
DecayCurve SchroederDecay(const Signal& ir, int band, double sample_rate);

// Schroeder integration of an energy envelope sampled every `time_step`.
DecayCurve EnergyDecay(const Eigen::VectorXd& energy, double time_step);

// Decay of one octave band of a reflectogram from every ray crossing,
// early specular ones included.
DecayCurve ReflectogramDecay(const Reflectogram& reflectogram, int band);

// Least-squares slope over [-5, -35] dB, extrapolated to 60 dB.
double T30(const DecayCurve& decay);
// Least-squares slope over [0, -10] dB, extrapolated to 60 dB.
double Edt(const DecayCurve& decay);

// Direct-to-reverberant ratio (dB) of a two-ear impulse response, the
// direct part being [onset, onset + window] with the onset at the first
// sample within 20 dB of the peak.
double Drr(const StereoSignal& brir, double sample_rate,
           double direct_window = 4.5e-3);

// Default auditory filterbank: 36 gammatone channels, 50 Hz - 16 kHz.
std::vector<double> DefaultGammatoneCenters();

// Gammatone-filtered two-ear frames shared by IACC and the direct-sound
// weighting.
struct BinauralFrames {
  double sample_rate = 0.0;
  double frame_seconds = 0.0;
  double hop_seconds = 0.0;
  std::vector<double> centers;
  Eigen::MatrixXd iacc;    // frames x channels
  Eigen::MatrixXd energy;  // frames x channels, both ears summed
};

BinauralFrames AnalyzeBinaural(const StereoSignal& brir, double sample_rate,
                               double frame_ms = 20.0,
                               const std::vector<double>& centers =
                                   DefaultGammatoneCenters());

struct IaccMatrix {
  double frame_seconds = 0.0;
  std::vector<double> centers;
  Eigen::MatrixXd values;  // frames x channels, in [0, 1]
};

// Max over |lag| <= 1 ms of the absolute normalized interaural
// cross-correlation per frame and gammatone channel.
IaccMatrix Iacc(const StereoSignal& brir, double sample_rate,
                double frame_ms = 20.0,
                const std::vector<double>& centers = DefaultGammatoneCenters());

struct DirectWeight {
  Eigen::MatrixXd values;  // frames x channels, in [0, 1]
};

// Maps frame energies (frames x channels) and the hop size to P(n, c).
using DirectWeightStrategy =
    std::function<DirectWeight(const Eigen::MatrixXd& energy, double hop)>;

// Frame energy over the running maximum of its channel, gated to 1 for
// 10 ms after the channel onset and decaying with a 20 ms time constant
// afterwards.
DirectWeight OnsetGatedDirectWeight(const Eigen::MatrixXd& energy,
                                    double hop_seconds);

DirectWeight ComputeDirectWeight(
    const StereoSignal& brir, double sample_rate, double frame_ms = 20.0,
    const std::vector<double>& centers = DefaultGammatoneCenters(),
    const DirectWeightStrategy& strategy = OnsetGatedDirectWeight);

struct SpatialImpression {
  double asw = 0.0;
  double lev = 0.0;
};

// ASW = 1 - sum(IACC^4 P) / sum(P); LEV = 1 - sum(IACC^4 (1 - P)) / sum(P).
// LEV is returned unclamped.
SpatialImpression AswLev(const IaccMatrix& iacc, const DirectWeight& weight);

inline constexpr double kSpatialJnd = 0.075;
inline constexpr double kT30RelativeJnd = 0.05;

// Long-term average power spectrum, linear power per frequency bin
// (DC excluded), smoothed with a Gaussian of sigma 1/3 octave.
struct Spectrum {
  Eigen::VectorXd frequencies;
  Eigen::VectorXd power;

  Eigen::VectorXd Decibels() const;
};

// 4096-point Hann-windowed DFTs with 50 % overlap, power-averaged.
Spectrum LtaSpectrum(const Signal& signal, double sample_rate);

// Per-band power over the 42 ERB bands centred on ERB-numbers 1..42.
Eigen::VectorXd ErbBandLevels(const Spectrum& spectrum);

// Mean absolute level difference (dB) over the 42 ERB bands.
double SpectralDifference(const Spectrum& a, const Spectrum& b);

struct MetricsReport {
  BandVector t30 = BandVector::Constant(NAN);
  BandVector edt = BandVector::Constant(NAN);
  double drr = NAN;
  double asw = NAN;
  double lev = NAN;
  double mean_iacc = NAN;
  std::optional<double> spectral_difference;
};

struct JndFlags {
  bool asw = false;
  bool lev = false;
  std::array<bool, kNumOctaveBands> t30{};

  bool any() const;
};

JndFlags CompareJnd(const MetricsReport& a, const MetricsReport& b);

// T30/EDT from the omnidirectional room response, DRR and ASW/LEV from the
// binaural one.
MetricsReport AnalyzeResponses(const Signal& omni_ir, const StereoSignal& brir,
                               double sample_rate);

std::string MetricsToJson(const MetricsReport& report);
MetricsReport MetricsFromJson(const std::string& text);

// Two-column "frequency_hz level_db" table.
void WriteSpectrumTable(const std::string& path, const Spectrum& spectrum);
Spectrum ReadSpectrumTable(const std::string& path);

}  // namespace auralkit

#endif  // AURALKIT_METRICS_H_
