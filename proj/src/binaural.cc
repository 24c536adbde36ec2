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

#include "auralkit/binaural.h"

#include <algorithm>
#include <cmath>

#include "auralkit/dsp.h"
#include "auralkit/spherical_harmonics.h"
#include "auralkit/wav.h"

namespace auralkit {

namespace {

double Legendre(int degree, double x) {
  double p0 = 1.0, p1 = x;
  if (degree == 0) return p0;
  for (int l = 2; l <= degree; ++l) {
    const double p2 = ((2 * l - 1) * x * p1 - (l - 1) * p0) / l;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double Energy(const StereoSignal& x) { return x.squaredNorm(); }

StereoSignal PadTo(const StereoSignal& x, Eigen::Index rows) {
  StereoSignal out = StereoSignal::Zero(rows, 2);
  out.topRows(x.rows()) = x;
  return out;
}

}  // namespace

SpeakerLayout SpeakerLayout::Dodecahedron() {
  return {DodecahedronVertices<double>()};
}

AmbisonicsIR RotateAir(const AmbisonicsIR& air, double yaw, double pitch,
                       double roll) {
  const Eigen::MatrixXd m =
      ShRotationMatrix<double>(YawPitchRoll(yaw, pitch, roll), air.order);
  AmbisonicsIR out = air;
  out.channels = air.channels * m.transpose();
  return out;
}

Eigen::MatrixXd DecoderMatrix(const SpeakerLayout& layout, int order,
                              bool max_re) {
  const int channels = AmbisonicChannelCount(order);
  if (static_cast<int>(layout.directions.size()) < channels) {
    throw ValidationError("layout has " +
                          std::to_string(layout.directions.size()) +
                          " speakers, order " + std::to_string(order) +
                          " needs " + std::to_string(channels));
  }
  const Eigen::MatrixXd y = ShSamplingMatrix(layout.directions, order);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(y, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd s = svd.singularValues();
  if (!(s.minCoeff() > 1e-9 * s.maxCoeff())) {
    throw ValidationError("speaker sampling matrix is rank deficient");
  }
  // pinv(Y^T) = U S^-1 V^T.
  Eigen::MatrixXd decoder =
      svd.matrixU() * s.cwiseInverse().asDiagonal() * svd.matrixV().transpose();
  if (max_re) {
    const double x = std::cos(137.9 / (order + 1.51) * kPi / 180.0);
    for (int l = 0; l <= order; ++l) {
      decoder.middleCols(l * l, 2 * l + 1) *= Legendre(l, x);
    }
  }
  return decoder;
}

MultiSignal DecodeToSpeakers(const AmbisonicsIR& air,
                             const SpeakerLayout& layout, bool max_re) {
  if (air.channels.cols() != AmbisonicChannelCount(air.order)) {
    throw ValidationError("AIR channel count does not match its order");
  }
  return air.channels * DecoderMatrix(layout, air.order, max_re).transpose();
}

StereoSignal Binauralize(const AmbisonicsIR& air, const HRIRSet& hrirs,
                         const SpeakerLayout& layout, bool max_re) {
  if (hrirs.sample_rate != air.sample_rate) {
    throw ValidationError("HRIR sample rate " +
                          std::to_string(hrirs.sample_rate) +
                          " differs from AIR sample rate " +
                          std::to_string(air.sample_rate));
  }
  const MultiSignal feeds = DecodeToSpeakers(air, layout, max_re);
  StereoSignal out = StereoSignal::Zero(air.length() + hrirs.length() - 1, 2);
  for (Eigen::Index k = 0; k < feeds.cols(); ++k) {
    if (feeds.col(k).isZero(0.0)) continue;
    const HrirEntry& h = hrirs.entries[NearestHrir(hrirs, layout.directions[k])];
    out.col(0) += FftConvolve(feeds.col(k), h.left);
    out.col(1) += FftConvolve(feeds.col(k), h.right);
  }
  return out;
}

StereoSignal RenderDirect(const Signal& anechoic, const Vec3& direction,
                          double distance, const HRIRSet& hrirs,
                          Eigen::Index truncate, double speed_of_sound,
                          bool allow_short_truncation) {
  if (truncate > hrirs.length()) {
    throw ValidationError("truncation of " + std::to_string(truncate) +
                          " samples exceeds the HRIR length " +
                          std::to_string(hrirs.length()));
  }
  if (truncate < kMinDirectTruncation && !allow_short_truncation) {
    throw ValidationError("direct-path HRIR truncated below 158 samples");
  }
  if (truncate < 1) throw ValidationError("truncation must be positive");
  if (!(distance > 0.0)) throw ValidationError("source distance must be > 0");
  const HrirEntry& h = hrirs.entries[NearestHrir(hrirs, direction)];
  Eigen::VectorXd window = Eigen::VectorXd::Ones(truncate);
  const Eigen::Index fade = std::min(kDirectFadeLength, truncate);
  for (Eigen::Index i = 0; i < fade; ++i) {
    window[truncate - fade + i] = 0.5 + 0.5 * std::cos(kPi * (i + 0.5) / fade);
  }
  const Signal left = h.left.head(truncate).cwiseProduct(window) / distance;
  const Signal right = h.right.head(truncate).cwiseProduct(window) / distance;
  const Eigen::Index delay =
      std::llround(distance / speed_of_sound * hrirs.sample_rate);
  const Signal l = FftConvolve(anechoic, left);
  StereoSignal out = StereoSignal::Zero(delay + l.size(), 2);
  out.col(0).tail(l.size()) = l;
  out.col(1).tail(l.size()) = FftConvolve(anechoic, right);
  return out;
}

StereoSignal GateReverb(const StereoSignal& direct, const StereoSignal& reverb,
                        double sample_rate, double window) {
  if (direct.cols() != 2 || reverb.cols() != 2) {
    throw ValidationError("direct and reverb must have two channels");
  }
  const Eigen::VectorXd magnitude = direct.cwiseAbs().rowwise().maxCoeff();
  const double peak = magnitude.size() ? magnitude.maxCoeff() : 0.0;
  if (!(peak > 0.0)) throw ValidationError("direct part is silent");
  Eigen::Index onset = 0;
  while (magnitude[onset] < 0.1 * peak) ++onset;
  const Eigen::Index end = std::min<Eigen::Index>(
      reverb.rows(), onset + std::lround(window * sample_rate));
  StereoSignal out = reverb;
  if (end > onset) out.middleRows(onset, end - onset).setZero();
  return out;
}

double DrrGain(const StereoSignal& direct, const StereoSignal& reverb,
               double target_drr) {
  const double ed = Energy(direct);
  const double er = Energy(reverb);
  if (!(ed > 0.0) || !(er > 0.0)) {
    throw ValidationError("DRR mixing needs nonzero direct and reverb energy");
  }
  return std::sqrt(ed / (er * std::pow(10.0, target_drr / 10.0)));
}

BinauralStimulus Mix(const StereoSignal& direct, const StereoSignal& reverb,
                     double target_drr, double sample_rate) {
  BinauralStimulus out;
  out.sample_rate = sample_rate;
  const StereoSignal gated = GateReverb(direct, reverb, sample_rate);
  out.reverb_gain = DrrGain(direct, gated, target_drr);
  const Eigen::Index rows = std::max(direct.rows(), gated.rows());
  out.samples = PadTo(direct, rows) + out.reverb_gain * PadTo(gated, rows);
  return out;
}

SceneRender RenderScene(const std::vector<SceneSource>& sources,
                        const HRIRSet& hrirs, double head_yaw,
                        const SpeakerLayout& layout, double speed_of_sound,
                        Eigen::Index truncate) {
  if (sources.empty()) throw ValidationError("scene has no sources");
  std::vector<const SceneSource*> ordered;
  for (const SceneSource& s : sources) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(),
            [](const SceneSource* a, const SceneSource* b) {
              return a->label < b->label;
            });
  const double fs = hrirs.sample_rate;
  if (truncate < 0) truncate = std::lround(4.5e-3 * fs);
  const Eigen::Matrix3d to_head = YawPitchRoll(-head_yaw, 0.0, 0.0);
  Signal impulse = Signal::Zero(1);
  impulse[0] = 1.0;

  SceneRender render;
  render.stimulus.sample_rate = fs;
  render.stimulus.head_yaw = head_yaw;
  for (const SceneSource* s : ordered) {
    if (render.brirs.count(s->label)) {
      throw ValidationError("duplicate source label '" + s->label + "'");
    }
    const StereoSignal direct = RenderDirect(
        impulse, to_head * s->direction.normalized(), s->distance, hrirs,
        truncate, speed_of_sound);
    // HRIR lead-in shifts the onset past the AIR's direct window; gate
    // again at the binaural onset.
    const StereoSignal reverb = GateReverb(
        direct, Binauralize(RotateAir(s->reverb, -head_yaw), hrirs, layout), fs);
    const double gain =
        s->target_drr ? DrrGain(direct, reverb, *s->target_drr) : s->reverb_gain;
    const Eigen::Index rows = std::max(direct.rows(), reverb.rows());
    StereoSignal brir = PadTo(direct, rows) + gain * PadTo(reverb, rows);

    StereoSignal wet(s->anechoic.size() + rows - 1, 2);
    wet.col(0) = FftConvolve(s->anechoic, brir.col(0));
    wet.col(1) = FftConvolve(s->anechoic, brir.col(1));
    StereoSignal& total = render.stimulus.samples;
    if (wet.rows() > total.rows()) total = PadTo(total, wet.rows());
    total.topRows(wet.rows()) += wet;

    render.reverb_gains[s->label] = gain;
    render.brirs[s->label] = std::move(brir);
    render.stimulus.source +=
        (render.stimulus.source.empty() ? "" : "+") + s->label;
  }
  if (ordered.size() == 1) {
    render.stimulus.reverb_gain = render.reverb_gains.begin()->second;
  }
  return render;
}

void WriteStimulus(const std::string& path, const BinauralStimulus& stimulus) {
  if (!stimulus.samples.allFinite()) {
    throw ValidationError("stimulus contains non-finite samples");
  }
  WriteWav(path, stimulus.samples, stimulus.sample_rate);
}

}  // namespace auralkit
