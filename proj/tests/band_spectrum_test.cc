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

#include "auralkit/band_spectrum.h"
#include "doctest.h"

namespace auralkit {
namespace {

Eigen::VectorXd Ramp() {
  Eigen::VectorXd v(8);
  v << 0.05, 0.10, 0.20, 0.30, 0.40, 0.50, 0.60, 0.70;
  return v;
}

TEST_CASE("reduced centers are geometric means of the merged octaves") {
  const BandSpectrum full = BandSpectrum::Octave(Ramp());
  const BandSpectrum four = BandReduce(full, 4);
  const BandSpectrum two = BandReduce(full, 2);
  const BandSpectrum one = BandReduce(full, 1);
  // Independent values: sqrt of the products of the octave centers.
  const double expect4[] = {std::sqrt(125.0 * 250.0), std::sqrt(500.0 * 1000.0),
                            std::sqrt(2000.0 * 4000.0), std::sqrt(8000.0 * 16000.0)};
  for (int i = 0; i < 4; ++i) CHECK(four.centers[i] == doctest::Approx(expect4[i]));
  CHECK(four.centers[0] == doctest::Approx(176.78).epsilon(1e-4));
  CHECK(four.centers[3] == doctest::Approx(11313.71).epsilon(1e-4));
  CHECK(two.centers[0] == doctest::Approx(std::pow(125.0 * 250 * 500 * 1000, 0.25)));
  CHECK(two.centers[1] == doctest::Approx(5656.85).epsilon(1e-4));
  CHECK(one.centers[0] == doctest::Approx(1414.21).epsilon(1e-4));
}

TEST_CASE("reduced centers within 1 % of the published rounded values") {
  const BandSpectrum full = BandSpectrum::Octave(Ramp());
  const double printed4[] = {177, 710, 2840, 11360};
  const double printed2[] = {355, 5680};
  const BandSpectrum four = BandReduce(full, 4);
  const BandSpectrum two = BandReduce(full, 2);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(four.centers[i] / printed4[i] - 1.0) < 0.01);
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(two.centers[i] / printed2[i] - 1.0) < 0.01);
  }
  CHECK(std::abs(BandReduce(full, 1).centers[0] / 1420.0 - 1.0) < 0.01);
}

TEST_CASE("reduced values are arithmetic means and expand back") {
  const BandSpectrum full = BandSpectrum::Octave(Ramp());
  const BandSpectrum four = BandReduce(full, 4);
  CHECK(four.values[0] == doctest::Approx(0.075));
  CHECK(four.values[3] == doctest::Approx(0.65));
  CHECK(BandReduce(full, 1).values[0] == doctest::Approx(Ramp().mean()));
  const Eigen::VectorXd expanded = ExpandToOctaves(four);
  REQUIRE(expanded.size() == 8);
  for (int b = 0; b < 8; ++b) CHECK(expanded[b] == doctest::Approx(four.values[b / 2]));
  CHECK(ExpandToOctaves(full) == Ramp());

  Eigen::VectorXd tenths(8);
  tenths << 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8;
  const BandSpectrum pairs = BandReduce(BandSpectrum::Octave(tenths), 4);
  const double expect[] = {0.15, 0.35, 0.55, 0.75};
  for (int i = 0; i < 4; ++i) CHECK(pairs.values[i] == doctest::Approx(expect[i]));
}

TEST_CASE("invalid spectra are rejected") {
  CHECK_THROWS_AS(BandReduce(BandSpectrum::Octave(Ramp()), 3), ValidationError);
  // Only the 8-band form reduces.
  CHECK_THROWS_AS(BandReduce(BandReduce(BandSpectrum::Octave(Ramp()), 4), 2),
                  ValidationError);
  BandSpectrum bad = BandSpectrum::Octave(Ramp());
  bad.values[2] = -0.1;
  CHECK_THROWS_AS(ValidateCoefficients(bad), ValidationError);
  BandSpectrum unordered = BandSpectrum::Octave(Ramp());
  std::swap(unordered.centers[0], unordered.centers[1]);
  CHECK_THROWS_AS(ValidateBands(unordered), ValidationError);
  BandSpectrum three;
  three.values = Eigen::VectorXd::Constant(3, 0.1);
  three.centers = Eigen::VectorXd::LinSpaced(3, 100, 300);
  CHECK_THROWS_AS(ValidateBands(three), ValidationError);
}

TEST_CASE("bandwidth fractions partition the audio band") {
  for (double fs : {44100.0, 48000.0}) {
    const Eigen::VectorXd f = OctaveBandwidthFractions(fs);
    CHECK(f.size() == 8);
    CHECK(f.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((f.array() > 0.0).all());
    // 1 kHz band spans sqrt(500 * 1000) .. sqrt(1000 * 2000).
    CHECK(f[3] == doctest::Approx((std::sqrt(2e6) - std::sqrt(5e5)) / (fs / 2)));
  }
}

}  // namespace
}  // namespace auralkit
