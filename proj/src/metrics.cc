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

#include "auralkit/metrics.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unsupported/Eigen/FFT>

#include "auralkit/dsp.h"
#include "json.hpp"

namespace auralkit {

namespace {

constexpr Eigen::Index kLtaSize = 4096;
constexpr double kSmoothingSigma = 1.0 / 3.0;  // octaves
constexpr int kErbBands = 42;

DecayCurve IntegrateBackwards(const Eigen::VectorXd& energy, double step) {
  DecayCurve curve;
  curve.time_step = step;
  const Eigen::Index n = energy.size();
  Eigen::VectorXd tail(n);
  double sum = 0.0;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    sum += energy[i];
    tail[i] = sum;
  }
  if (!(sum > 0.0)) throw DecayError("decay undefined: no energy");
  curve.level_db = (tail / sum).array().log10() * 10.0;
  return curve;
}

double FitDecay(const DecayCurve& decay, double upper_db, double lower_db) {
  const Eigen::VectorXd& level = decay.level_db;
  if (level.size() == 0 || !(level.minCoeff() <= lower_db)) {
    throw DecayError("decay range insufficient: does not reach " +
                     std::to_string(lower_db) + " dB");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = 0;
  for (Eigen::Index i = 0; i < level.size(); ++i) {
    const double y = level[i];
    if (y > upper_db) continue;
    if (y < lower_db) break;
    const double x = i * decay.time_step;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  if (n < 2 || !(denom > 0.0)) {
    throw DecayError("decay range insufficient: too few points to fit");
  }
  const double slope = (n * sxy - sx * sy) / denom;
  if (!(slope < 0.0)) throw DecayError("decay slope is not negative");
  return -60.0 / slope;
}

Signal Gammatone(const Signal& x, double center, double sample_rate) {
  return FftConvolve(x, GammatoneImpulseResponse(center, sample_rate))
      .head(x.size());
}

void CheckStereo(const StereoSignal& brir) {
  if (brir.rows() == 0) throw ValidationError("binaural signal is empty");
}

}  // namespace

DecayCurve SchroederDecay(const Signal& ir, int band, double sample_rate) {
  if (band < -1 || band >= kNumOctaveBands) {
    throw ValidationError("band index out of range");
  }
  const double peak = ir.size() ? ir.cwiseAbs().maxCoeff() : 0.0;
  if (!(peak > 0.0)) throw DecayError("decay undefined: silent signal");
  if ((ir.array().abs() > 1e-3 * peak).count() < 2) {
    throw DecayError("decay undefined: impulse without a tail");
  }
  const Signal x = band < 0 ? ir : OctaveBandFilter(ir, band, sample_rate);
  const Eigen::VectorXd energy = x.array().square();
  if (!(energy.sum() > 1e-10 * ir.squaredNorm())) {
    throw DecayError("decay undefined: band " + std::to_string(band) +
                     " is silent");
  }
  return IntegrateBackwards(energy, 1.0 / sample_rate);
}

DecayCurve EnergyDecay(const Eigen::VectorXd& energy, double time_step) {
  return IntegrateBackwards(energy, time_step);
}

DecayCurve ReflectogramDecay(const Reflectogram& reflectogram, int band) {
  if (band < 0 || band >= kNumOctaveBands) {
    throw ValidationError("band index out of range");
  }
  return IntegrateBackwards(reflectogram.BandHistogram(true).col(band),
                            reflectogram.time_bin_width);
}

double T30(const DecayCurve& decay) { return FitDecay(decay, -5.0, -35.0); }

double Edt(const DecayCurve& decay) { return FitDecay(decay, 0.0, -10.0); }

double Drr(const StereoSignal& brir, double sample_rate, double direct_window) {
  CheckStereo(brir);
  const Eigen::VectorXd magnitude = brir.cwiseAbs().rowwise().maxCoeff();
  const double peak = magnitude.maxCoeff();
  if (!(peak > 0.0)) throw ValidationError("DRR undefined: silent signal");
  Eigen::Index onset = 0;
  while (magnitude[onset] < 0.1 * peak) ++onset;
  const Eigen::Index end = std::min<Eigen::Index>(
      brir.rows(), onset + std::lround(direct_window * sample_rate));
  const Eigen::VectorXd energy = brir.rowwise().squaredNorm();
  const double direct = energy.segment(onset, end - onset).sum();
  const double tail = energy.tail(brir.rows() - end).sum();
  if (!(tail > 0.0)) throw ValidationError("DRR undefined: no tail energy");
  return 10.0 * std::log10(direct / tail);
}

std::vector<double> DefaultGammatoneCenters() {
  return ErbSpacedFrequencies(36, 50.0, 16000.0);
}

BinauralFrames AnalyzeBinaural(const StereoSignal& brir, double sample_rate,
                               double frame_ms,
                               const std::vector<double>& centers) {
  CheckStereo(brir);
  if (frame_ms < 2.0) throw ValidationError("frame must be at least 2 ms");
  const Eigen::Index frame = std::lround(frame_ms * 1e-3 * sample_rate);
  const Eigen::Index hop = std::max<Eigen::Index>(1, frame / 2);
  const Eigen::Index max_lag = std::lround(1e-3 * sample_rate);
  const Eigen::Index length = std::max(brir.rows(), frame);
  const Eigen::Index frames = (length - frame) / hop + 1;

  BinauralFrames out;
  out.sample_rate = sample_rate;
  out.frame_seconds = static_cast<double>(frame) / sample_rate;
  out.hop_seconds = static_cast<double>(hop) / sample_rate;
  out.centers = centers;
  const Eigen::Index channels = static_cast<Eigen::Index>(centers.size());
  out.iacc = Eigen::MatrixXd::Zero(frames, channels);
  out.energy = Eigen::MatrixXd::Zero(frames, channels);

  Signal left = Signal::Zero(length), right = Signal::Zero(length);
  left.head(brir.rows()) = brir.col(0);
  right.head(brir.rows()) = brir.col(1);
  for (Eigen::Index c = 0; c < channels; ++c) {
    const Signal l = Gammatone(left, centers[c], sample_rate);
    const Signal r = Gammatone(right, centers[c], sample_rate);
    for (Eigen::Index n = 0; n < frames; ++n) {
      const auto lf = l.segment(n * hop, frame);
      const auto rf = r.segment(n * hop, frame);
      const double el = lf.squaredNorm();
      const double er = rf.squaredNorm();
      out.energy(n, c) = el + er;
      if (!(el > 0.0) || !(er > 0.0)) continue;
      double best = 0.0;
      for (Eigen::Index lag = -max_lag; lag <= max_lag; ++lag) {
        const Eigen::Index span = frame - std::abs(lag);
        if (span <= 0) continue;
        const double xc = lag >= 0
                              ? lf.head(span).dot(rf.tail(span))
                              : lf.tail(span).dot(rf.head(span));
        best = std::max(best, std::abs(xc));
      }
      out.iacc(n, c) = std::clamp(best / std::sqrt(el * er), 0.0, 1.0);
    }
  }
  return out;
}

IaccMatrix Iacc(const StereoSignal& brir, double sample_rate, double frame_ms,
                const std::vector<double>& centers) {
  BinauralFrames frames = AnalyzeBinaural(brir, sample_rate, frame_ms, centers);
  return {frames.frame_seconds, std::move(frames.centers),
          std::move(frames.iacc)};
}

DirectWeight OnsetGatedDirectWeight(const Eigen::MatrixXd& energy,
                                    double hop_seconds) {
  constexpr double kGate = 10e-3;
  constexpr double kDecay = 20e-3;
  DirectWeight w;
  w.values = Eigen::MatrixXd::Zero(energy.rows(), energy.cols());
  for (Eigen::Index c = 0; c < energy.cols(); ++c) {
    const double peak = energy.col(c).maxCoeff();
    if (!(peak > 0.0)) continue;
    Eigen::Index onset = 0;
    while (energy(onset, c) <= 1e-6 * peak) ++onset;
    double running = 0.0;
    for (Eigen::Index n = onset; n < energy.rows(); ++n) {
      running = std::max(running, energy(n, c));
      const double t = (n - onset) * hop_seconds;
      const double gate = t <= kGate ? 1.0 : std::exp(-(t - kGate) / kDecay);
      w.values(n, c) = std::clamp(energy(n, c) / running, 0.0, 1.0) * gate;
    }
  }
  return w;
}

DirectWeight ComputeDirectWeight(const StereoSignal& brir, double sample_rate,
                                 double frame_ms,
                                 const std::vector<double>& centers,
                                 const DirectWeightStrategy& strategy) {
  const BinauralFrames frames =
      AnalyzeBinaural(brir, sample_rate, frame_ms, centers);
  return strategy(frames.energy, frames.hop_seconds);
}

SpatialImpression AswLev(const IaccMatrix& iacc, const DirectWeight& weight) {
  const Eigen::MatrixXd& i = iacc.values;
  const Eigen::MatrixXd& p = weight.values;
  if (i.rows() != p.rows() || i.cols() != p.cols()) {
    throw ValidationError("IACC and weight shapes differ");
  }
  const double sum_p = p.sum();
  if (!(sum_p > 0.0)) {
    throw ValidationError("ASW/LEV undefined: direct weight sums to zero");
  }
  const Eigen::ArrayXXd i4 = i.array().square().square();
  SpatialImpression s;
  s.asw = 1.0 - (i4 * p.array()).sum() / sum_p;
  s.lev = 1.0 - (i4 * (1.0 - p.array())).sum() / sum_p;
  return s;
}

Eigen::VectorXd Spectrum::Decibels() const {
  return power.cwiseMax(1e-300).array().log10() * 10.0;
}

Spectrum LtaSpectrum(const Signal& signal, double sample_rate) {
  if (signal.size() < kLtaSize) {
    throw ValidationError("signal shorter than 4096 samples");
  }
  const Eigen::Index hop = kLtaSize / 2;
  const Eigen::Index bins = kLtaSize / 2;
  Eigen::VectorXd window(kLtaSize);
  for (Eigen::Index i = 0; i < kLtaSize; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / kLtaSize);
  }
  const double norm = sample_rate * window.squaredNorm();

  Eigen::FFT<double> fft;
  std::vector<double> block(kLtaSize);
  std::vector<std::complex<double>> spectrum;
  Eigen::VectorXd raw = Eigen::VectorXd::Zero(bins);
  int count = 0;
  for (Eigen::Index start = 0; start + kLtaSize <= signal.size();
       start += hop, ++count) {
    for (Eigen::Index i = 0; i < kLtaSize; ++i) {
      block[i] = signal[start + i] * window[i];
    }
    fft.fwd(spectrum, block);
    for (Eigen::Index k = 1; k <= bins; ++k) raw[k - 1] += std::norm(spectrum[k]);
  }
  raw /= count * norm;

  Spectrum out;
  out.frequencies.resize(bins);
  for (Eigen::Index k = 0; k < bins; ++k) {
    out.frequencies[k] = (k + 1) * sample_rate / kLtaSize;
  }
  // Gaussian in log2 frequency; each bin weighted by its log-width (1/f)
  // so the kernel integrates the spectrum as a density on that axis.
  out.power.resize(bins);
  const double reach = std::exp2(4.0 * kSmoothingSigma);
  for (Eigen::Index k = 0; k < bins; ++k) {
    const double fk = out.frequencies[k];
    double num = 0.0, den = 0.0;
    const Eigen::Index lo = std::max<Eigen::Index>(
        0, static_cast<Eigen::Index>(std::floor(fk / reach * kLtaSize / sample_rate)) - 1);
    const Eigen::Index hi = std::min<Eigen::Index>(
        bins - 1,
        static_cast<Eigen::Index>(std::ceil(fk * reach * kLtaSize / sample_rate)));
    for (Eigen::Index j = lo; j <= hi; ++j) {
      const double fj = out.frequencies[j];
      const double x = std::log2(fj / fk) / kSmoothingSigma;
      const double w = std::exp(-0.5 * x * x) / fj;
      num += w * raw[j];
      den += w;
    }
    out.power[k] = num / den;
  }
  return out;
}

Eigen::VectorXd ErbBandLevels(const Spectrum& spectrum) {
  const Eigen::VectorXd& f = spectrum.frequencies;
  const Eigen::VectorXd& p = spectrum.power;
  Eigen::VectorXd levels(kErbBands);
  for (int n = 1; n <= kErbBands; ++n) {
    const double lo = ErbNumberToFrequency(n - 0.5);
    const double hi = ErbNumberToFrequency(n + 0.5);
    double sum = 0.0;
    int count = 0;
    for (Eigen::Index k = 0; k < f.size(); ++k) {
      if (f[k] >= lo && f[k] < hi) {
        sum += p[k];
        ++count;
      }
    }
    double power;
    if (count > 0) {
      power = sum / count;
    } else {
      // Band narrower than a bin: interpolate at its centre.
      const double fc = ErbNumberToFrequency(n);
      const Eigen::Index above = std::lower_bound(f.data(), f.data() + f.size(), fc) - f.data();
      if (above == 0) {
        power = p[0];
      } else if (above >= f.size()) {
        power = p[f.size() - 1];
      } else {
        const double a = (fc - f[above - 1]) / (f[above] - f[above - 1]);
        power = (1.0 - a) * p[above - 1] + a * p[above];
      }
    }
    levels[n - 1] = 10.0 * std::log10(std::max(power, 1e-300));
  }
  return levels;
}

double SpectralDifference(const Spectrum& a, const Spectrum& b) {
  if (a.frequencies.size() != b.frequencies.size() ||
      !a.frequencies.isApprox(b.frequencies, 1e-12)) {
    throw ValidationError("spectra have different frequency support");
  }
  return (ErbBandLevels(a) - ErbBandLevels(b)).cwiseAbs().mean();
}

bool JndFlags::any() const {
  return asw || lev || std::any_of(t30.begin(), t30.end(), [](bool f) { return f; });
}

JndFlags CompareJnd(const MetricsReport& a, const MetricsReport& b) {
  JndFlags flags;
  flags.asw = std::abs(a.asw - b.asw) > kSpatialJnd;
  flags.lev = std::abs(a.lev - b.lev) > kSpatialJnd;
  for (int band = 0; band < kNumOctaveBands; ++band) {
    flags.t30[band] =
        std::abs(b.t30[band] - a.t30[band]) > kT30RelativeJnd * a.t30[band];
  }
  return flags;
}

MetricsReport AnalyzeResponses(const Signal& omni_ir, const StereoSignal& brir,
                               double sample_rate) {
  MetricsReport report;
  for (int band = 0; band < kNumOctaveBands; ++band) {
    try {
      const DecayCurve decay = SchroederDecay(omni_ir, band, sample_rate);
      report.edt[band] = Edt(decay);
      report.t30[band] = T30(decay);
    } catch (const DecayError&) {
    }
  }
  report.drr = Drr(brir, sample_rate);
  const BinauralFrames frames = AnalyzeBinaural(brir, sample_rate);
  const IaccMatrix iacc{frames.frame_seconds, frames.centers, frames.iacc};
  const SpatialImpression s =
      AswLev(iacc, OnsetGatedDirectWeight(frames.energy, frames.hop_seconds));
  report.asw = s.asw;
  report.lev = s.lev;
  report.mean_iacc = frames.iacc.mean();
  return report;
}

std::string MetricsToJson(const MetricsReport& report) {
  auto bands = [](const BandVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) {
      a.push_back(std::isfinite(x) ? nlohmann::json(x) : nlohmann::json());
    }
    return a;
  };
  auto scalar = [](double x) {
    return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json();
  };
  nlohmann::json j = {{"t30", bands(report.t30)},   {"edt", bands(report.edt)},
                      {"drr", scalar(report.drr)},  {"asw", scalar(report.asw)},
                      {"lev", scalar(report.lev)},
                      {"mean_iacc", scalar(report.mean_iacc)}};
  if (report.spectral_difference) {
    j["spectral_difference"] = *report.spectral_difference;
  }
  return j.dump(2);
}

MetricsReport MetricsFromJson(const std::string& text) {
  auto number = [](const nlohmann::json& v) {
    return v.is_null() ? NAN : v.get<double>();
  };
  try {
    const auto j = nlohmann::json::parse(text);
    MetricsReport r;
    for (int b = 0; b < kNumOctaveBands; ++b) {
      r.t30[b] = number(j.at("t30").at(b));
      r.edt[b] = number(j.at("edt").at(b));
    }
    r.drr = number(j.at("drr"));
    r.asw = number(j.at("asw"));
    r.lev = number(j.at("lev"));
    r.mean_iacc = number(j.at("mean_iacc"));
    if (j.contains("spectral_difference")) {
      r.spectral_difference = j["spectral_difference"].get<double>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("metrics report: ") + e.what());
  }
}

void WriteSpectrumTable(const std::string& path, const Spectrum& spectrum) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out.precision(17);
  out << "# frequency_hz level_db\n";
  const Eigen::VectorXd db = spectrum.Decibels();
  for (Eigen::Index k = 0; k < db.size(); ++k) {
    out << spectrum.frequencies[k] << " " << db[k] << "\n";
  }
}

Spectrum ReadSpectrumTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path + "'");
  std::vector<double> f, db;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream s(line);
    double a, b;
    if (!(s >> a >> b)) throw ParseError("'" + path + "': bad line '" + line + "'");
    f.push_back(a);
    db.push_back(b);
  }
  Spectrum out;
  out.frequencies = Eigen::Map<Eigen::VectorXd>(f.data(), f.size());
  out.power = Eigen::Map<Eigen::VectorXd>(db.data(), db.size());
  out.power = (out.power * (std::log(10.0) / 10.0)).array().exp();
  return out;
}

}  // namespace auralkit
