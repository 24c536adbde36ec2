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

#include "auralkit/calibrate.h"
#include "auralkit/metrics.h"
#include "doctest.h"

namespace auralkit {
namespace {

Eigen::VectorXd Ramp(double lo, double hi) {
  return Eigen::VectorXd::LinSpaced(kNumOctaveBands, lo, hi);
}

RoomModel Box(const Eigen::VectorXd& alpha, double scattering = 0.7) {
  const Material m{"walls", BandSpectrum::Octave(alpha),
                   BandSpectrum::Uniform(scattering)};
  return MakeShoebox(Vec3::Zero(), {6, 5, 3}, m);
}

SimConfig Config() {
  SimConfig c;
  c.num_rays = 10000;
  c.max_time = 1.2;
  c.threads = 1;
  return c;
}

const Vec3 kSource(1.6, 1.3, 1.5);
const Vec3 kReceiver(4.1, 3.4, 1.2);

TEST_CASE("Eyring reverberation time") {
  const RoomModel box = Box(Ramp(0.1, 0.45));
  const BandVector t = EyringRt(box);
  // V = 90, S = 126.
  for (int b = 0; b < kNumOctaveBands; ++b) {
    const double alpha = 0.1 + 0.05 * b;
    CHECK(t[b] == doctest::Approx(0.161 * 90 / (-126 * std::log(1 - alpha))));
  }
  CHECK_THROWS_AS(EyringRt(Box(Eigen::VectorXd::Ones(8))), ValidationError);
}

TEST_CASE("absorption scaling clamps to the open unit interval") {
  const RoomModel box = Box(Ramp(0.1, 0.45));
  BandVector g = BandVector::Ones();
  g[0] = 0.01;
  g[1] = 100.0;
  g[2] = 2.0;
  const RoomModel scaled = ScaleAbsorption(box, g);
  const Eigen::VectorXd& a = scaled.materials.at("walls").absorption.values;
  CHECK(a[0] == kMinCalibratedAbsorption);
  CHECK(a[1] == kMaxCalibratedAbsorption);
  CHECK(a[2] == doctest::Approx(0.4));
  CHECK(a[5] == doctest::Approx(0.35));
  // Scattering is untouched.
  CHECK(scaled.materials.at("walls").scattering.values ==
        box.materials.at("walls").scattering.values);

  RoomModel coarse = box;
  coarse.materials.at("walls").absorption =
      BandReduce(coarse.materials.at("walls").absorption, 4);
  CHECK_THROWS_AS(ScaleAbsorption(coarse, g), ValidationError);
  CHECK_THROWS_AS(Calibrate(coarse, DecayTarget{EyringRt(box)}, kSource, kReceiver, Config()),
                  ValidationError);
}

TEST_CASE("calibration reaches a 10 % shorter decay") {
  const RoomModel box = Box(Ramp(0.08, 0.30));
  const SimConfig c = Config();
  const DecayEstimate start = SimulateDecay(box, kSource, kReceiver, c);
  DecayTarget target;
  target.t30 = 0.9 * start.t30;
  const CalibrationResult r = Calibrate(box, target, kSource, kReceiver, c);
  CHECK(r.report.converged);
  CHECK(r.report.iterations <= 10);
  CHECK(r.report.t30_residual.cwiseAbs().maxCoeff() <= 0.01);
  // More absorption everywhere, and an independent trace of the result
  // lands on the target.
  CHECK((r.report.scale.array() > 1.0).all());
  const DecayEstimate check = SimulateDecay(r.model, kSource, kReceiver, c);
  for (int b = 0; b < kNumOctaveBands; ++b) {
    CHECK(std::abs(check.t30[b] / target.t30[b] - 1.0) <= 0.01);
  }
  CHECK_FALSE(r.model.warnings.empty());
  CHECK(CalibrationReportToJson(r.report).find("\"converged\": true") != std::string::npos);
}

TEST_CASE("an already matching target needs no iterations") {
  const RoomModel box = Box(Ramp(0.08, 0.30));
  DecayTarget target;
  target.t30 = SimulateDecay(box, kSource, kReceiver, Config()).t30;
  const CalibrationResult r = Calibrate(box, target, kSource, kReceiver, Config());
  CHECK(r.report.converged);
  CHECK(r.report.iterations == 0);
  CHECK(r.report.scale == BandVector::Ones());
}

TEST_CASE("unreachable targets are rejected before tracing") {
  const RoomModel box = Box(Ramp(0.08, 0.30));
  DecayTarget target;
  target.t30 = BandVector::Constant(0.5);
  target.t30[4] = 60.0;  // needs mean absorption below 0.005
  try {
    Calibrate(box, target, kSource, kReceiver, Config());
    FAIL("expected a ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("band 4") != std::string::npos);
  }
  target.t30[4] = 0.01;
  CHECK_THROWS_AS(Calibrate(box, target, kSource, kReceiver, Config()), ValidationError);
  target.t30[4] = -1.0;
  CHECK_THROWS_AS(Calibrate(box, target, kSource, kReceiver, Config()), ValidationError);
}

TEST_CASE("non-convergence reports the residuals") {
  const RoomModel box = Box(Ramp(0.08, 0.30));
  DecayTarget target;
  target.t30 = 0.6 * EyringRt(box);
  target.tolerance = 1e-6;
  try {
    Calibrate(box, target, kSource, kReceiver, Config(), 2);
    FAIL("expected a CalibrationError");
  } catch (const CalibrationError& e) {
    CHECK(e.report().iterations == 2);
    CHECK_FALSE(e.report().converged);
    CHECK(std::string(e.what()).find("residuals") != std::string::npos);
  }
}

}  // namespace
}  // namespace auralkit
