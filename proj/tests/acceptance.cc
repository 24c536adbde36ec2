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

// Acceptance suite: one PASS/FAIL line per criterion. Always exits 0 once
// every criterion has run; the lines are the result.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "auralkit/band_spectrum.h"
#include "auralkit/binaural.h"
#include "auralkit/calibrate.h"
#include "auralkit/dsp.h"
#include "auralkit/ga_engine.h"
#include "auralkit/metrics.h"
#include "auralkit/pipeline.h"
#include "auralkit/presets.h"
#include "auralkit/room_io.h"
#include "auralkit/spherical_harmonics.h"
#include "auralkit/wav.h"
#include "json.hpp"

namespace auralkit {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kFs = 44100.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

double Magnitude(const Signal& h, double freq, double fs) {
  std::complex<double> acc = 0.0;
  for (Eigen::Index n = 0; n < h.size(); ++n) {
    acc += h[n] * std::polar(1.0, -2.0 * kPi * freq * n / fs);
  }
  return std::abs(acc);
}

Material UniformMaterial(double alpha, double scattering) {
  return {"m", BandSpectrum::Uniform(alpha), BandSpectrum::Uniform(scattering)};
}

// Eyring time from first principles, not through the library.
double EyringOracle(double volume, double surface, double alpha) {
  return 0.161 * volume / (-surface * std::log(1.0 - alpha));
}

// Backward integration and -5..-35 dB regression, independent of the
// library's decay code.
double FitT30(const Eigen::VectorXd& energy, double dt) {
  Eigen::VectorXd s(energy.size());
  double acc = 0.0;
  for (Eigen::Index i = energy.size() - 1; i >= 0; --i) s[i] = acc += energy[i];
  double n = 0, st = 0, sl = 0, stt = 0, stl = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double db = 10.0 * std::log10(s[i] / s[0]);
    if (db > -5.0 || db < -35.0) continue;
    const double t = i * dt;
    n += 1;
    st += t;
    sl += db;
    stt += t * t;
    stl += t * db;
  }
  return -60.0 / ((n * stl - st * sl) / (n * stt - st * st));
}

// Direction-averaged late decay of a purely specular box.
double SpecularBoxT30(const Vec3& dims, double alpha, double max_time) {
  const int nz = 100, nphi = 200;
  const double dt = 1e-3;
  const int bins = static_cast<int>(max_time / dt);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(bins);
  for (int i = 0; i < nz; ++i) {
    const double z = -1.0 + (2.0 * i + 1.0) / nz;
    const double r = std::sqrt(1.0 - z * z);
    for (int j = 0; j < nphi; ++j) {
      const double phi = 2.0 * kPi * (j + 0.5) / nphi;
      const double rate = 343.0 * (std::abs(r * std::cos(phi)) / dims.x() +
                                   std::abs(r * std::sin(phi)) / dims.y() +
                                   std::abs(z) / dims.z());
      for (int k = 0; k < bins; ++k) e[k] += std::exp(std::log1p(-alpha) * rate * k * dt);
    }
  }
  return FitT30(e, dt);
}

Outcome EyringAgreement() {
  const Vec3 dims(5, 4, 3);
  const double eyring = EyringOracle(60.0, 94.0, 0.2);
  SimConfig c;
  c.num_rays = 100000;
  c.max_time = 1.5;
  c.threads = 0;
  const auto start = std::chrono::steady_clock::now();
  const Reflectogram r = Trace(MakeShoebox(Vec3::Zero(), dims, UniformMaterial(0.2, 0.0)),
                               {1.5, 1.2, 1.4}, {3.4, 2.7, 1.6}, c);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double worst = 0.0, t30_mid = 0.0;
  for (int b = 0; b < kNumOctaveBands; ++b) {
    const double t30 = T30(ReflectogramDecay(r, b));
    if (b == 3) t30_mid = t30;
    worst = std::max(worst, std::abs(t30 / eyring - 1.0));
  }
  const double lattice = SpecularBoxT30(dims, 0.2, 1.5);

  // Context: the same box with diffuse walls.
  c.max_time = 1.0;
  const Reflectogram d = Trace(MakeShoebox(Vec3::Zero(), dims, UniformMaterial(0.2, 1.0)),
                               {1.5, 1.2, 1.4}, {3.4, 2.7, 1.6}, c);
  const double diffuse = T30(ReflectogramDecay(d, 3));
  std::printf("  info: s=0 T30(1k) %.3f s, Eyring %.3f s, specular-lattice oracle %.3f s; "
              "s=1 T30(1k) %.3f s (%+.1f%%); 1e5 rays in %.1f s on %u core(s)\n",
              t30_mid, eyring, lattice, diffuse, 100.0 * (diffuse / eyring - 1.0), seconds,
              std::max(1u, std::thread::hardware_concurrency()));
  return {worst <= 0.10 && seconds < 60.0,
          Fmt("worst band |T30/Eyring - 1| = %.1f%% (limit 10%%), %.1f s", 100.0 * worst,
              seconds)};
}

Outcome ImageSourceExactness() {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int compared = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Vec3 dims(3.0 + 5.0 * u(rng), 2.5 + 4.0 * u(rng), 2.2 + 1.5 * u(rng));
    Vec3 s, r;
    for (int i = 0; i < 3; ++i) {
      s[i] = dims[i] * (0.1 + 0.8 * u(rng));
      r[i] = dims[i] * (0.1 + 0.8 * u(rng));
    }
    // Mirror lattice: x' = 2nL + x (2|n| reflections) or 2nL - x
    // (|2n - 1| reflections), per axis.
    std::vector<double> expected;
    for (int nx = -2; nx <= 2; ++nx)
      for (int px = 0; px < 2; ++px)
        for (int ny = -2; ny <= 2; ++ny)
          for (int py = 0; py < 2; ++py)
            for (int nz = -2; nz <= 2; ++nz)
              for (int pz = 0; pz < 2; ++pz) {
                const int n[3] = {nx, ny, nz}, p[3] = {px, py, pz};
                int order = 0;
                Vec3 image;
                for (int i = 0; i < 3; ++i) {
                  image[i] = 2.0 * n[i] * dims[i] + (p[i] ? -s[i] : s[i]);
                  order += p[i] ? std::abs(2 * n[i] - 1) : 2 * std::abs(n[i]);
                }
                if (order >= 1 && order <= 2) expected.push_back((image - r).norm() / 343.0);
              }
    std::vector<double> got;
    for (const Arrival& a : ImageSources(MakeShoebox(Vec3::Zero(), dims, UniformMaterial(0.2, 0.0)),
                                         s, r, 2)) {
      if (a.order >= 1) got.push_back(a.time);
    }
    if (got.size() != expected.size()) {
      return {false, Fmt("configuration %d: %zu arrivals, lattice has %zu", trial, got.size(),
                         expected.size())};
    }
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    for (size_t i = 0; i < got.size(); ++i) {
      worst = std::max(worst, std::abs(got[i] - expected[i]) * kFs);
      ++compared;
    }
  }
  return {worst < 1.0, Fmt("%d first/second-order delays, worst error %.2e samples (limit 1)",
                           compared, worst)};
}

Outcome CalibrationConvergence() {
  const RoomModel room = SyntheticLivingRoom();
  const Vec3 src = room.sources.at("A1");
  const Vec3 rcv = room.receivers.at("P1");
  SimConfig c;
  c.num_rays = 10000;
  c.max_time = 1.2;
  c.threads = 0;
  DecayTarget target;
  target.t30 = 0.9 * SimulateDecay(room, src, rcv, c).t30;
  target.tolerance = 0.01;
  const CalibrationResult r = Calibrate(room, target, src, rcv, c, 10);
  // Re-trace the calibrated model and check the residuals independently.
  const DecayEstimate check = SimulateDecay(r.model, src, rcv, c);
  double worst = 0.0;
  for (int b = 0; b < kNumOctaveBands; ++b) {
    worst = std::max(worst, std::abs(check.t30[b] / target.t30[b] - 1.0));
  }
  return {r.report.converged && r.report.iterations <= 10 && worst <= 0.01,
          Fmt("living room A1-P1, %d iteration(s), worst residual %.2f%% (limit 1%%)",
              r.report.iterations, 100.0 * worst)};
}

Outcome BandReductionCenters() {
  const BandSpectrum full = BandSpectrum::Octave(Eigen::VectorXd::Constant(8, 0.2));
  const double octave[] = {125, 250, 500, 1000, 2000, 4000, 8000, 16000};
  struct Row {
    int bands;
    std::vector<double> printed;
  };
  const Row rows[] = {{4, {177, 710, 2840, 11360}}, {2, {355, 5680}}, {1, {1420}}};
  double worst_exact = 0.0, worst_printed = 0.0;
  std::string centers;
  for (const Row& row : rows) {
    const BandSpectrum reduced = BandReduce(full, row.bands);
    const int group = 8 / row.bands;
    for (int i = 0; i < row.bands; ++i) {
      double log_sum = 0.0;
      for (int k = 0; k < group; ++k) log_sum += std::log(octave[i * group + k]);
      const double exact = std::exp(log_sum / group);
      worst_exact = std::max(worst_exact, std::abs(reduced.centers[i] / exact - 1.0));
      worst_printed = std::max(worst_printed, std::abs(reduced.centers[i] / row.printed[i] - 1.0));
      centers += Fmt("%s%.1f", centers.empty() ? "" : "/", reduced.centers[i]);
    }
  }
  return {worst_exact < 1e-12 && worst_printed <= 0.01,
          Fmt("centers %s Hz; vs geometric means %.1e, vs printed %.2f%% (limit 1%%)",
              centers.c_str(), worst_exact, 100.0 * worst_printed)};
}

Outcome TruncationArithmetic() {
  Reflectogram r;
  r.time_bin_width = 1e-3;
  r.directions = DodecahedronVertices();
  r.num_bins = 100;
  r.energy = Eigen::MatrixXd::Zero(100, 20 * kNumOctaveBands);
  r.early_specular = r.energy;
  r.room_volume = 60.0;
  Arrival direct, first;
  direct.time = 0.010;
  direct.energy = BandVector::Ones();
  first.time = 0.016;
  first.direction = Vec3::UnitY();
  first.energy = BandVector::Constant(0.3);
  first.kind = ArrivalKind::kSpecular;
  first.order = 1;
  r.arrivals = {direct, first};
  r.energy.block<1, kNumOctaveBands>(40, 0).setConstant(1e-2);
  const AmbisonicsIR air = SynthesizeAir(r, SimConfig());
  const DirectRemoval out = RemoveDirect(air, r.arrivals);
  const Eigen::Index window = std::lround(4.5e-3 * kFs);
  const Eigen::Index onset = std::lround(0.010 * kFs);
  const bool span_zero = out.reverb.channels.middleRows(onset, window).isZero(0.0);
  const bool rest_kept =
      out.reverb.channels.topRows(onset) == air.channels.topRows(onset) &&
      out.reverb.channels.bottomRows(air.length() - onset - window) ==
          air.channels.bottomRows(air.length() - onset - window);
  return {window == 198 && out.zeroed_samples == 198 && span_zero && rest_kept &&
              out.removed_reverb_energy_fraction == 0.0,
          Fmt("window %ld samples, zeroed %ld, span exact %s, loss with reflection at +6 ms %.3g%%",
              static_cast<long>(window), static_cast<long>(out.zeroed_samples),
              span_zero && rest_kept ? "yes" : "no", 100.0 * out.removed_reverb_energy_fraction)};
}

Outcome ShAlgebra() {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  auto direction = [&] { return Vec3(g(rng), g(rng), g(rng)).normalized(); };
  double rotate = 0.0, norm = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(std::abs(g(rng)) * kPi, direction()).toRotationMatrix();
    const Vec3 d = direction();
    const Eigen::MatrixXd m = ShRotationMatrix(rot, 3);
    rotate = std::max(rotate, (ShEncode<double>(rot * d, 3) - m * ShEncode(d, 3)).cwiseAbs().maxCoeff());
    Eigen::VectorXd field(16);
    for (auto& v : field) v = g(rng);
    const Eigen::VectorXd turned = m * field;
    for (int l = 0; l <= 3; ++l) {
      norm = std::max(norm, std::abs(turned.segment(l * l, 2 * l + 1).norm() -
                                     field.segment(l * l, 2 * l + 1).norm()));
    }
  }
  const SpeakerLayout layout = SpeakerLayout::Dodecahedron();
  const Eigen::MatrixXd decoder = DecoderMatrix(layout, 3);
  const Eigen::MatrixXd y = ShSamplingMatrix(layout.directions, 3);
  double identity = 0.0;
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd field(16);
    for (auto& v : field) v = g(rng);
    identity = std::max(identity, (y.transpose() * (decoder * field) - field).cwiseAbs().maxCoeff());
  }
  return {rotate < 1e-9 && identity < 1e-9 && norm < 1e-9,
          Fmt("rotate/encode %.1e, decode-encode %.1e, per-degree norm %.1e (limit 1e-9)",
              rotate, identity, norm)};
}

Outcome SpatialMeasures() {
  std::mt19937 rng(11);
  std::normal_distribution<double> g;
  const Eigen::Index n = 22050;
  Signal a(n), b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double env = std::pow(10.0, -3.0 * (i / kFs) / 0.5);
    a[i] = env * g(rng);
    b[i] = env * g(rng);
  }
  StereoSignal diotic(n, 2), decorrelated(n, 2);
  diotic << a, a;
  decorrelated << a, b;
  auto measure = [](const StereoSignal& brir) {
    const BinauralFrames f = AnalyzeBinaural(brir, kFs);
    const SpatialImpression s = AswLev({f.frame_seconds, f.centers, f.iacc},
                                       OnsetGatedDirectWeight(f.energy, f.hop_seconds));
    return std::make_pair(s.asw, f.iacc.mean());
  };
  const auto [asw_diotic, iacc_diotic] = measure(diotic);
  const auto [asw_wide, iacc_wide] = measure(decorrelated);

  bool jnd = true;
  for (double delta : {0.0, 0.05, 0.074, 0.075, 0.076, 0.1, -0.074, -0.076}) {
    MetricsReport x, y;
    x.asw = y.asw = x.lev = y.lev = 0.3;
    x.t30 = y.t30 = BandVector::Constant(0.5);
    y.asw += delta;
    y.lev -= delta;
    const JndFlags f = CompareJnd(x, y);
    // 0.3 + 0.075 is not exactly representable; compare the computed gap.
    const bool expect = std::abs(y.asw - x.asw) > 0.075;
    jnd = jnd && f.asw == expect && f.lev == (std::abs(y.lev - x.lev) > 0.075);
  }
  (void)iacc_diotic;
  return {asw_diotic == 0.0 && asw_wide > 0.8 && iacc_wide < 0.3 && jnd,
          Fmt("diotic ASW %.3g; decorrelated ASW %.3f (> 0.8), mean IACC %.3f (< 0.3); JND flags %s",
              asw_diotic, asw_wide, iacc_wide, jnd ? "ok" : "wrong")};
}

Outcome DrrRoundTrip() {
  const RoomModel room = SyntheticLivingRoom();
  const HRIRSet hrirs = SphericalHeadHrirs(kFs);
  SimConfig c;
  c.num_rays = 20000;
  c.max_time = 1.0;
  c.threads = 0;
  Signal impulse = Signal::Zero(1);
  impulse[0] = 1.0;
  double worst = 0.0;
  std::string measured;
  for (const char* receiver : {"P1", "P3"}) {
    const Vec3 src = room.sources.at("A1");
    const Vec3 rcv = room.receivers.at(receiver);
    const Reflectogram r = Trace(room, src, rcv, c);
    const AmbisonicsIR air = SynthesizeAir(r, c);
    SceneSource s;
    s.label = "A1";
    s.anechoic = impulse;
    s.reverb = RemoveDirect(air, r.arrivals).reverb;
    s.direction = (src - rcv).normalized();
    s.distance = (src - rcv).norm();
    for (double target : {3.57, -7.57, -8.44}) {
      s.target_drr = target;
      const SceneRender render = RenderScene({s}, hrirs, 0.0);
      const double drr = Drr(render.brirs.at("A1"), kFs);
      worst = std::max(worst, std::abs(drr - target));
      measured += Fmt(" %s:%+.2f->%+.2f", receiver, target, drr);
    }
  }
  return {worst <= 0.1, Fmt("worst |error| %.3f dB (limit 0.1);%s", worst, measured.c_str())};
}

// The living-room experiment shared by the last three criteria.
struct Experiment {
  fs::path dir;
  bool ran = false;
  std::string error;
};

Experiment& LivingRoomExperiment() {
  static Experiment e = [] {
    Experiment x;
    x.dir = fs::temp_directory_path() / "auralkit_acceptance";
    fs::remove_all(x.dir);
    fs::create_directories(x.dir);
    try {
      SaveRoom(SyntheticLivingRoom(), (x.dir / "room.json").string());
      const Signal speech = SyntheticSpeech(kFs, 3.0, 1);
      WriteWav((x.dir / "speech.wav").string(), MultiSignal(speech), kFs);
      const json plan = {
          {"schema", kPlanSchema},
          {"room", "room.json"},
          {"output", "out"},
          {"sim", {{"num_rays", 20000}, {"max_time", 1.0}, {"threads", 0}}},
          {"receivers", {"P1", "P3"}},
          {"stimuli", {{{"id", "speech"}, {"sources", {{"A1", "speech.wav"}}}}}},
          {"drr", {{"A1", {{"P1", 3.57}, {"P3", -8.44}}}}},
          {"conditions",
           {{{"id", "reference"}, {"kind", "reference"},
             {"t30_target", {0.70, 0.62, 0.55, 0.50, 0.47, 0.44, 0.40, 0.35}}},
            {{"id", "BR4"}, {"kind", "br"}, {"bands", 4}},
            {{"id", "BR1"}, {"kind", "br"}, {"bands", 1}},
            {{"id", "anchor"}, {"kind", "anchor"}}}}};
      for (const ConditionOutcome& o : RunPlan(ParsePlan(plan.dump(), x.dir.string()))) {
        if (!o.success) x.error += o.id + ": " + o.error + "; ";
      }
      x.ran = x.error.empty();
    } catch (const std::exception& err) {
      x.error = err.what();
    }
    return x;
  }();
  return e;
}

double StoredSd(const Experiment& e, const std::string& condition, const std::string& receiver) {
  const MetricsReport m = MetricsFromJson(
      Slurp(e.dir / "out" / condition / "metrics" / ("speech_" + receiver + ".json")));
  return m.spectral_difference.value();
}

Outcome AnchorSeparation() {
  const Experiment& e = LivingRoomExperiment();
  if (!e.ran) return {false, "experiment failed: " + e.error};
  bool ordered = true;
  std::string values;
  for (const char* r : {"P1", "P3"}) {
    const double anchor = StoredSd(e, "anchor", r);
    const double br4 = StoredSd(e, "BR4", r);
    ordered = ordered && anchor > br4;
    values += Fmt(" %s anchor %.2f dB vs BR4 %.2f dB;", r, anchor, br4);
  }
  const AmbisonicsIR ref = ReadAir((e.dir / "out" / "reference" / "air" / "A1_P3.wav").string());
  const AmbisonicsIR low = MakeAnchor(ref);
  const double attenuation = 20.0 * std::log10(Magnitude(low.channels.col(0), 5000.0, kFs) /
                                               Magnitude(ref.channels.col(0), 5000.0, kFs));
  const WavData speech = ReadWav((e.dir / "speech.wav").string());
  const Spectrum s = LtaSpectrum(speech.samples.col(0), kFs);
  const double self = SpectralDifference(s, s);
  const double stored_self = StoredSd(e, "reference", "P3");
  return {ordered && attenuation <= -40.0 && self == 0.0 && stored_self == 0.0,
          Fmt("%s 5 kHz %.1f dB (limit -40); identical input %.1f dB", values.c_str(),
              attenuation, self)};
}

Outcome Determinism() {
  const fs::path dir = fs::temp_directory_path() / "auralkit_acceptance_det";
  fs::remove_all(dir);
  fs::create_directories(dir);
  SaveRoom(SyntheticLivingRoom(), (dir / "room.json").string());
  WriteWav((dir / "speech.wav").string(), MultiSignal(SyntheticSpeech(kFs, 1.0, 2)), kFs);
  json plan = {{"schema", kPlanSchema},
               {"room", "room.json"},
               {"sim", {{"num_rays", 10000}, {"max_time", 0.8}, {"threads", 0}, {"rng_seed", 42}}},
               {"receivers", {"P1", "P3"}},
               {"stimuli", {{{"id", "speech"}, {"sources", {{"A0", "speech.wav"}, {"A2", "speech.wav"}}}}}},
               {"conditions", {{{"id", "reference"}, {"kind", "reference"}},
                               {{"id", "BR2"}, {"kind", "br"}, {"bands", 2}}}}};
  plan["output"] = "first";
  RunPlan(ParsePlan(plan.dump(), dir.string()));
  plan["output"] = "second";
  plan["sim"]["threads"] = 1;
  RunPlan(ParsePlan(plan.dump(), dir.string()));
  int files = 0, identical = 0;
  for (const char* condition : {"reference", "BR2"}) {
    for (const auto& f : fs::directory_iterator(dir / "first" / condition / "air")) {
      if (f.path().extension() != ".wav") continue;
      ++files;
      const std::string a = Slurp(f.path());
      const std::string b = Slurp(dir / "second" / condition / "air" / f.path().filename());
      if (!a.empty() && a == b) ++identical;
    }
  }
  fs::remove_all(dir);
  return {files == 8 && identical == files,
          Fmt("%d of %d AIR WAV files bit-identical across runs (worker threads all vs 1)",
              identical, files)};
}

Outcome Plausibility() {
  const Experiment& e = LivingRoomExperiment();
  if (!e.ran) return {false, "experiment failed: " + e.error};
  const RoomModel room = LoadRoom((e.dir / "out" / "reference" / "room.json").string());
  const double volume = ComputeVolume(room);
  const double far = StoredSd(e, "BR1", "P3");
  const double near = StoredSd(e, "BR1", "P1");
  return {volume >= 60.0 && volume <= 80.0 && far >= 0.5 && far <= 6.0,
          Fmt("calibrated living room %.1f m^3: BR1 at P3 %.2f dB (band 0.5-6), at P1 %.2f dB",
              volume, far, near)};
}

}  // namespace
}  // namespace auralkit

int main() {
  using auralkit::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"eyring-agreement", auralkit::EyringAgreement},
      {"image-source-exactness", auralkit::ImageSourceExactness},
      {"calibration", auralkit::CalibrationConvergence},
      {"band-reduction-centers", auralkit::BandReductionCenters},
      {"truncation-arithmetic", auralkit::TruncationArithmetic},
      {"sh-algebra", auralkit::ShAlgebra},
      {"asw-lev-behavior", auralkit::SpatialMeasures},
      {"drr-round-trip", auralkit::DrrRoundTrip},
      {"anchor-separation", auralkit::AnchorSeparation},
      {"determinism", auralkit::Determinism},
      {"plausibility", auralkit::Plausibility},
  };
  int passed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    passed += o.pass;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", passed, criteria.size());
  std::filesystem::remove_all(std::filesystem::temp_directory_path() / "auralkit_acceptance");
  return 0;
}
