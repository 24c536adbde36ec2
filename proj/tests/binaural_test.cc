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
#include <filesystem>
#include <random>

#include "auralkit/binaural.h"
#include "auralkit/dsp.h"
#include "auralkit/metrics.h"
#include "auralkit/spherical_harmonics.h"
#include "doctest.h"

namespace auralkit {
namespace {

constexpr double kFs = 44100.0;

const HRIRSet& Head() {
  static const HRIRSet set = SphericalHeadHrirs(kFs);
  return set;
}

Eigen::Index PeakIndex(const Signal& x) {
  Eigen::Index i;
  x.cwiseAbs().maxCoeff(&i);
  return i;
}

double BandEnergy(const Signal& x, int band) {
  return OctaveBandFilter(x, band, kFs).squaredNorm();
}

// A single plane wave from `d`, 30 ms into a 0.1 s AIR.
AmbisonicsIR PlaneWave(const Vec3& d, int order = 3) {
  AmbisonicsIR air;
  air.order = order;
  air.channels = MultiSignal::Zero(4410, AmbisonicChannelCount(order));
  air.channels.row(1323) = ShEncode(d.normalized(), order).transpose();
  return air;
}

Signal Impulse() {
  Signal x = Signal::Zero(1);
  x[0] = 1.0;
  return x;
}

TEST_CASE("spherical-head set covers the sphere") {
  const HRIRSet& h = Head();
  CHECK(h.entries.size() == 614);
  CHECK(h.length() == 256);
  CHECK_NOTHROW(ValidateHrirSet(h));

  // Left ear on +y: earlier and brighter for sources on the left.
  const HrirEntry& left = h.entries[NearestHrir(h, {0, 1, 0})];
  CHECK(PeakIndex(left.left) < PeakIndex(left.right));
  CHECK(BandEnergy(left.left, 6) > 4.0 * BandEnergy(left.right, 6));
  // Woodworth: a (pi/2 + 1) / c, about 0.66 ms, between the ears.
  const double itd = (PeakIndex(left.right) - PeakIndex(left.left)) / kFs;
  CHECK(itd == doctest::Approx(0.0875 * (kPi / 2 + 1) / 343.0).epsilon(0.1));
  const HrirEntry& front = h.entries[NearestHrir(h, {1, 0, 0})];
  CHECK(PeakIndex(front.left) == PeakIndex(front.right));
  CHECK((front.left - front.right).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("HRIR set validation") {
  HRIRSet h = SphericalHeadHrirs(kFs, 30.0, 64);
  CHECK_NOTHROW(ValidateHrirSet(h));
  HRIRSet few = h;
  few.entries.resize(19);
  CHECK_THROWS_AS(ValidateHrirSet(few), ValidationError);
  // Drop the upper half: a large gap around the pole.
  HRIRSet lower;
  lower.sample_rate = kFs;
  for (const HrirEntry& e : h.entries) {
    if (e.direction.z() < 0.1) lower.entries.push_back(e);
  }
  REQUIRE(lower.entries.size() >= 20);
  CHECK_THROWS_AS(ValidateHrirSet(lower), ValidationError);
  HRIRSet ragged = h;
  ragged.entries[3].left.conservativeResize(60);
  CHECK_THROWS_AS(ValidateHrirSet(ragged), ValidationError);
  HRIRSet twin = h;
  twin.entries[5].direction = twin.entries[4].direction;
  CHECK_THROWS_AS(ValidateHrirSet(twin), ValidationError);
  HRIRSet bent = h;
  bent.entries[2].direction *= 1.1;
  CHECK_THROWS_AS(ValidateHrirSet(bent), ValidationError);
  CHECK_THROWS_AS(SphericalHeadHrirs(kFs, 45.0), ValidationError);
}

TEST_CASE("nearest HRIR prefers the lower index on ties") {
  HRIRSet h;
  h.entries.push_back({Vec3(1, 0, 0), Signal::Zero(4), Signal::Zero(4)});
  h.entries.push_back({Vec3(0, 1, 0), Signal::Zero(4), Signal::Zero(4)});
  h.entries.push_back({Vec3(0, 0, 1), Signal::Zero(4), Signal::Zero(4)});
  CHECK(NearestHrir(h, {1, 1, 0}) == 0);
  CHECK(NearestHrir(h, {0, 1, 1}) == 1);
  CHECK(NearestHrir(h, {0.1, 1, 0.2}) == 1);
  CHECK(NearestHrir(h, {0, 0, 5}) == 2);
  CHECK_THROWS_AS(NearestHrir(HRIRSet(), {1, 0, 0}), ValidationError);
}

TEST_CASE("HRIR sets round-trip through a directory") {
  const HRIRSet h = SphericalHeadHrirs(48000.0, 30.0, 64);
  const auto dir = (std::filesystem::temp_directory_path() / "auralkit_hrir_test").string();
  std::filesystem::remove_all(dir);
  SaveHrirSet(dir, h);
  const HRIRSet back = LoadHrirSet(dir);
  REQUIRE(back.entries.size() == h.entries.size());
  CHECK(back.sample_rate == 48000.0);
  for (size_t i = 0; i < h.entries.size(); ++i) {
    CHECK((back.entries[i].direction - h.entries[i].direction).norm() < 1e-9);
    CHECK((back.entries[i].left - h.entries[i].left).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((back.entries[i].right - h.entries[i].right).cwiseAbs().maxCoeff() < 1e-6);
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(LoadHrirSet(dir), ParseError);
}

TEST_CASE("rotating an AIR moves its plane waves") {
  const Vec3 d = Vec3(0.3, -0.8, 0.5).normalized();
  const AmbisonicsIR air = PlaneWave(d);
  const double yaw = 0.7, pitch = -0.2, roll = 0.4;
  const AmbisonicsIR turned = RotateAir(air, yaw, pitch, roll);
  const Eigen::VectorXd expected = ShEncode(Vec3(YawPitchRoll(yaw, pitch, roll) * d), 3);
  CHECK((turned.channels.row(1323).transpose() - expected).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(turned.channels.row(1322).isZero(0.0));
  const AmbisonicsIR back = RotateAir(turned, -yaw);
  // The omni channel is rotation invariant.
  CHECK((back.channels.col(0) - air.channels.col(0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("binaural decoding keeps lateral cues") {
  const SpeakerLayout layout = SpeakerLayout::Dodecahedron();
  CHECK(layout.directions.size() == 20);
  const StereoSignal left = Binauralize(PlaneWave({0, 1, 0}), Head(), layout);
  CHECK(left.rows() == 4410 + 255);
  CHECK(left.col(0).squaredNorm() > 2.0 * left.col(1).squaredNorm());
  const StereoSignal right = Binauralize(PlaneWave({0, -1, 0}), Head(), layout);
  CHECK(right.col(1).squaredNorm() > 2.0 * right.col(0).squaredNorm());
  // Mirror symmetry of the head and of the layout about the median plane
  // is only approximate for the dodecahedron, so compare energies loosely.
  CHECK(left.col(0).squaredNorm() == doctest::Approx(right.col(1).squaredNorm()).epsilon(0.2));

  const StereoSignal re = Binauralize(PlaneWave({0, 1, 0}), Head(), layout, true);
  CHECK(re.col(0).squaredNorm() > re.col(1).squaredNorm());

  AmbisonicsIR fast = PlaneWave({1, 0, 0});
  fast.sample_rate = 48000.0;
  CHECK_THROWS_AS(Binauralize(fast, Head(), layout), ValidationError);
  CHECK_THROWS_AS(Binauralize(PlaneWave({1, 0, 0}, 4), Head(), layout), ValidationError);
}

TEST_CASE("direct path is truncated, delayed and scaled") {
  const HRIRSet& h = Head();
  const Vec3 d = Vec3(1, 1, 0).normalized();
  const HrirEntry& e = h.entries[NearestHrir(h, d)];
  const StereoSignal out = RenderDirect(Impulse(), d, 3.43, h, 198);
  // 3.43 m at 343 m/s is 10 ms, 441 samples.
  CHECK(out.rows() == 441 + 198);
  CHECK(out.topRows(441).isZero(0.0));
  for (Eigen::Index i = 0; i < 198 - kDirectFadeLength; ++i) {
    CHECK(out(441 + i, 0) == doctest::Approx(e.left[i] / 3.43).epsilon(1e-9));
    CHECK(out(441 + i, 1) == doctest::Approx(e.right[i] / 3.43).epsilon(1e-9));
  }
  CHECK(std::abs(out(441 + 197, 0)) < std::abs(e.left[197]) / 3.43 * 0.01 + 1e-15);

  // Inverse-distance law.
  const StereoSignal far = RenderDirect(Impulse(), d, 6.86, h, 198);
  CHECK(far.rows() == 882 + 198);
  CHECK(far.bottomRows(198).squaredNorm() ==
        doctest::Approx(out.bottomRows(198).squaredNorm() / 4.0));

  CHECK_THROWS_AS(RenderDirect(Impulse(), d, 3.43, h, 157), ValidationError);
  CHECK_NOTHROW(RenderDirect(Impulse(), d, 3.43, h, 100, kDefaultSpeedOfSound, true));
  CHECK_THROWS_AS(RenderDirect(Impulse(), d, 3.43, h, 257), ValidationError);
  CHECK_THROWS_AS(RenderDirect(Impulse(), d, 0.0, h, 198), ValidationError);
}

TEST_CASE("mixing reaches the requested direct-to-reverberant ratio") {
  // Direct pair up front, reverb starting after the 4.5 ms window, so the
  // DRR metric sees exactly the two parts.
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  StereoSignal direct = StereoSignal::Zero(150, 2);
  direct(20, 0) = 1.0;
  direct(22, 1) = 0.7;
  StereoSignal reverb = StereoSignal::Zero(20000, 2);
  for (Eigen::Index n = 300; n < reverb.rows(); ++n) {
    const double env = 0.05 * std::exp(-(n - 300) / 3000.0);
    reverb(n, 0) = env * g(rng);
    reverb(n, 1) = env * g(rng);
  }
  for (double target : {3.57, -7.57, -8.44}) {
    const BinauralStimulus mixed = Mix(direct, reverb, target, kFs);
    CHECK(mixed.samples.rows() == 20000);
    CHECK(std::abs(Drr(mixed.samples, kFs) - target) < 0.1);
    CHECK(10 * std::log10(direct.squaredNorm() /
                          (mixed.reverb_gain * mixed.reverb_gain * reverb.squaredNorm())) ==
          doctest::Approx(target).epsilon(1e-12));
  }
  CHECK_THROWS_AS(DrrGain(direct, StereoSignal::Zero(10, 2), 0.0), ValidationError);
}

TEST_CASE("reverb gate follows the binaural onset") {
  StereoSignal direct = StereoSignal::Zero(100, 2);
  direct(30, 1) = 0.05;  // lead-in below 20 dB of the peak
  direct(40, 0) = 1.0;
  direct(41, 1) = -0.8;
  const StereoSignal reverb = StereoSignal::Ones(1000, 2);
  const StereoSignal gated = GateReverb(direct, reverb, kFs);
  CHECK(gated.topRows(40) == reverb.topRows(40));
  CHECK(gated.middleRows(40, 198).isZero(0.0));
  CHECK(gated.bottomRows(1000 - 238) == reverb.bottomRows(1000 - 238));
  CHECK(GateReverb(direct, reverb, 48000.0).middleRows(40, 216).isZero(0.0));
  CHECK(GateReverb(direct, reverb, 48000.0)(40 + 216, 0) == 1.0);
  CHECK_THROWS_AS(GateReverb(StereoSignal::Zero(10, 2), reverb, kFs), ValidationError);

  // Mix keeps the energy definition on the gated reverb.
  const BinauralStimulus m = Mix(direct, reverb, 0.0, kFs);
  CHECK(m.reverb_gain * m.reverb_gain * gated.squaredNorm() ==
        doctest::Approx(direct.squaredNorm()).epsilon(1e-12));
  CHECK(m.samples.middleRows(40, 60) == direct.middleRows(40, 60));
}

TEST_CASE("scene rendering") {
  AmbisonicsIR reverb = PlaneWave({-1, 0, 0});
  reverb.channels.row(1323).setZero();
  reverb.channels.row(2000) = 0.1 * ShEncode(Vec3(0, -1, 0), 3).transpose();
  SceneSource s;
  s.label = "S1";
  s.anechoic = Impulse();
  s.reverb = reverb;
  s.direction = {0, 1, 0};
  s.distance = 2.0;
  s.target_drr = 3.0;

  const SceneRender r = RenderScene({s}, Head(), 0.0);
  REQUIRE(r.brirs.count("S1") == 1);
  const StereoSignal& brir = r.brirs.at("S1");
  CHECK(r.stimulus.reverb_gain == r.reverb_gains.at("S1"));
  CHECK(r.stimulus.source == "S1");
  // Source on the left: left ear dominates the direct part.
  const double delay = std::lround(2.0 / 343.0 * kFs);
  CHECK(brir.col(0).segment(delay, 198).squaredNorm() >
        2.0 * brir.col(1).segment(delay, 198).squaredNorm());

  // Inside the direct window the BRIR is the direct path alone.
  const StereoSignal direct = RenderDirect(Impulse(), s.direction, 2.0, Head(), 198);
  const Eigen::VectorXd peak = direct.cwiseAbs().rowwise().maxCoeff();
  Eigen::Index onset = 0;
  while (peak[onset] < 0.1 * peak.maxCoeff()) ++onset;
  CHECK(onset > delay);
  const Eigen::Index rest = direct.rows() - onset;
  REQUIRE(rest < 198);
  CHECK(brir.middleRows(onset, rest) == direct.bottomRows(rest));
  CHECK(brir.middleRows(direct.rows(), 198 - rest).isZero(0.0));

  // Turning the head 90 degrees to the left puts the source in front.
  const SceneRender turned = RenderScene({s}, Head(), kPi / 2);
  const StereoSignal& tb = turned.brirs.at("S1");
  CHECK(tb.col(0).segment(delay, 198).squaredNorm() ==
        doctest::Approx(tb.col(1).segment(delay, 198).squaredNorm()).epsilon(1e-6));

  SceneSource fixed = s;
  fixed.label = "A";
  fixed.target_drr.reset();
  fixed.reverb_gain = 0.25;
  const SceneRender two = RenderScene({s, fixed}, Head(), 0.0);
  CHECK(two.stimulus.source == "A+S1");
  CHECK(two.reverb_gains.at("A") == 0.25);
  const StereoSignal sum = two.brirs.at("A") + two.brirs.at("S1");
  CHECK((two.stimulus.samples - sum).cwiseAbs().maxCoeff() < 1e-9);

  CHECK_THROWS_AS(RenderScene({}, Head(), 0.0), ValidationError);
  CHECK_THROWS_AS(RenderScene({s, s}, Head(), 0.0), ValidationError);
}

TEST_CASE("stimuli with non-finite samples are not written") {
  BinauralStimulus st;
  st.samples = StereoSignal::Zero(10, 2);
  st.samples(3, 1) = NAN;
  CHECK_THROWS_AS(WriteStimulus("/tmp/auralkit_never.wav", st), ValidationError);
  CHECK_FALSE(std::filesystem::exists("/tmp/auralkit_never.wav"));
}

}  // namespace
}  // namespace auralkit
