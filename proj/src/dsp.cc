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

#include "auralkit/dsp.h"

#include <cmath>
#include <complex>

#include <unsupported/Eigen/FFT>

#include "auralkit/band_spectrum.h"

namespace auralkit {

namespace {

using Complex = std::complex<double>;

constexpr double kCrossoverHalfWidthOctaves = 1.0 / 6.0;

// Weight of the lower band across the crossover at `edge`.
double LowerCrossoverWeight(double freq, double edge) {
  if (freq <= 0.0) return 1.0;
  const double u = std::log2(freq / edge);
  if (u <= -kCrossoverHalfWidthOctaves) return 1.0;
  if (u >= kCrossoverHalfWidthOctaves) return 0.0;
  return 0.5 * (1.0 - std::sin(0.5 * kPi * u / kCrossoverHalfWidthOctaves));
}

}  // namespace

Eigen::Index NextPowerOfTwo(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

Signal FftConvolve(const Signal& a, const Signal& b) {
  if (a.size() == 0 || b.size() == 0) return Signal();
  const Eigen::Index out_len = a.size() + b.size() - 1;
  if (std::min(a.size(), b.size()) <= 32) {
    Signal out = Signal::Zero(out_len);
    const Signal& longer = a.size() >= b.size() ? a : b;
    const Signal& shorter = a.size() >= b.size() ? b : a;
    for (Eigen::Index k = 0; k < shorter.size(); ++k) {
      if (shorter[k] != 0.0) {
        out.segment(k, longer.size()) += shorter[k] * longer;
      }
    }
    return out;
  }
  const Eigen::Index n = NextPowerOfTwo(out_len);
  Eigen::FFT<double> fft;
  std::vector<double> pa(n, 0.0), pb(n, 0.0);
  std::copy(a.data(), a.data() + a.size(), pa.begin());
  std::copy(b.data(), b.data() + b.size(), pb.begin());
  std::vector<Complex> fa, fb;
  fft.fwd(fa, pa);
  fft.fwd(fb, pb);
  for (Eigen::Index k = 0; k < n; ++k) fa[k] *= fb[k];
  std::vector<double> out;
  fft.inv(out, fa);
  return Eigen::Map<Signal>(out.data(), out_len);
}

MultiSignal ZeroPhaseFilter(const MultiSignal& x, double sample_rate,
                            const std::function<double(double)>& gain,
                            Eigen::Index padding) {
  const Eigen::Index len = x.rows();
  MultiSignal out(len, x.cols());
  if (len == 0) return out;
  const Eigen::Index n = NextPowerOfTwo(len + 2 * padding);
  std::vector<double> response(n / 2 + 1);
  for (Eigen::Index k = 0; k <= n / 2; ++k) {
    response[k] = gain(static_cast<double>(k) * sample_rate / n);
  }
  Eigen::FFT<double> fft;
  std::vector<double> buffer(n);
  std::vector<Complex> spectrum;
  std::vector<double> result;
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    if (x.col(c).isZero(0.0)) {
      out.col(c).setZero();
      continue;
    }
    std::fill(buffer.begin(), buffer.end(), 0.0);
    for (Eigen::Index i = 0; i < len; ++i) buffer[padding + i] = x(i, c);
    fft.fwd(spectrum, buffer);
    for (Eigen::Index k = 0; k < n; ++k) {
      spectrum[k] *= response[k <= n / 2 ? k : n - k];
    }
    fft.inv(result, spectrum);
    for (Eigen::Index i = 0; i < len; ++i) out(i, c) = result[padding + i];
  }
  return out;
}

Signal ZeroPhaseFilter(const Signal& x, double sample_rate,
                       const std::function<double(double)>& gain,
                       Eigen::Index padding) {
  MultiSignal m = x;
  return ZeroPhaseFilter(m, sample_rate, gain, padding).col(0);
}

double OctaveBandGain(int band, double freq) {
  double g = 1.0;
  if (band > 0) {
    const double edge =
        std::sqrt(kOctaveCenters[band - 1] * kOctaveCenters[band]);
    g *= 1.0 - LowerCrossoverWeight(freq, edge);
  }
  if (band + 1 < kNumOctaveBands) {
    const double edge =
        std::sqrt(kOctaveCenters[band] * kOctaveCenters[band + 1]);
    g *= LowerCrossoverWeight(freq, edge);
  }
  return g;
}

Signal OctaveBandFilter(const Signal& x, int band, double sample_rate) {
  return ZeroPhaseFilter(x, sample_rate,
                         [band](double f) { return OctaveBandGain(band, f); });
}

std::vector<Biquad> ButterworthLowpass(int order, double cutoff,
                                       double sample_rate) {
  if (order <= 0 || order % 2 != 0) {
    throw ValidationError("Butterworth order must be a positive even number");
  }
  if (!(cutoff > 0.0) || cutoff >= 0.5 * sample_rate) {
    throw ValidationError("low-pass cutoff must lie in (0, Nyquist)");
  }
  // Pre-warped analog prototype, one biquad per conjugate pole pair.
  const double k = std::tan(kPi * cutoff / sample_rate);
  std::vector<Biquad> sections;
  for (int i = 0; i < order / 2; ++i) {
    const double theta = kPi * (2.0 * i + 1.0) / (2.0 * order);
    const double q_inv = 2.0 * std::sin(theta);
    const double norm = 1.0 / (1.0 + q_inv * k + k * k);
    Biquad s;
    s.b0 = k * k * norm;
    s.b1 = 2.0 * s.b0;
    s.b2 = s.b0;
    s.a1 = 2.0 * (k * k - 1.0) * norm;
    s.a2 = (1.0 - q_inv * k + k * k) * norm;
    sections.push_back(s);
  }
  return sections;
}

Signal FilterCascade(const std::vector<Biquad>& sections, const Signal& x) {
  Signal y = x;
  for (const Biquad& s : sections) {
    double x1 = 0, x2 = 0, y1 = 0, y2 = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double in = y[i];
      const double out =
          s.b0 * in + s.b1 * x1 + s.b2 * x2 - s.a1 * y1 - s.a2 * y2;
      x2 = x1;
      x1 = in;
      y2 = y1;
      y1 = out;
      y[i] = out;
    }
  }
  return y;
}

Signal FiltFilt(const std::vector<Biquad>& sections, const Signal& x) {
  Signal forward = FilterCascade(sections, x);
  Signal reversed = forward.reverse();
  return FilterCascade(sections, reversed).reverse();
}

double ErbBandwidth(double freq) { return 24.7 * (4.37e-3 * freq + 1.0); }

double ErbNumber(double freq) { return 21.4 * std::log10(1.0 + 4.37e-3 * freq); }

double ErbNumberToFrequency(double erb_number) {
  return (std::pow(10.0, erb_number / 21.4) - 1.0) / 4.37e-3;
}

std::vector<double> ErbSpacedFrequencies(int count, double lo, double hi) {
  std::vector<double> out;
  const double e_lo = ErbNumber(lo);
  const double e_hi = ErbNumber(hi);
  for (int i = 0; i < count; ++i) {
    const double e =
        count == 1 ? e_lo : e_lo + (e_hi - e_lo) * i / (count - 1.0);
    out.push_back(ErbNumberToFrequency(e));
  }
  return out;
}

Signal GammatoneImpulseResponse(double center, double sample_rate,
                                double duration) {
  const Eigen::Index n = static_cast<Eigen::Index>(duration * sample_rate);
  const double b = 2.0 * kPi * 1.019 * ErbBandwidth(center);
  const double w = 2.0 * kPi * center;
  Signal g(n);
  Complex response = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = i / sample_rate;
    const double envelope = t * t * t * std::exp(-b * t);
    g[i] = envelope * std::cos(w * t);
    response += g[i] * std::exp(Complex(0.0, -w * t));
  }
  return g / std::abs(response);
}

}  // namespace auralkit
