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

#ifndef AURALKIT_CALIBRATE_H_
#define AURALKIT_CALIBRATE_H_

#include <string>
#include <vector>

#include "auralkit/ga_engine.h"
#include "auralkit/geometry.h"

namespace auralkit {

inline constexpr double kMinCalibratedAbsorption = 0.005;
inline constexpr double kMaxCalibratedAbsorption = 0.995;

// Eyring reverberation time per octave band, 0.161 V / (-S ln(1 - A/S)).
// Infinite where the mean absorption is zero; throws ValidationError when
// it reaches 1.
BandVector EyringRt(const RoomModel& model);

struct DecayTarget {
  BandVector t30 = BandVector::Constant(NAN);
  BandVector edt = BandVector::Constant(NAN);  // optional, reported only
  double tolerance = 0.01;                     // relative
};

struct DecayEstimate {
  BandVector t30 = BandVector::Constant(NAN);
  BandVector edt = BandVector::Constant(NAN);
};

// Ray-traced T30 and EDT per band from the full energy histogram.
DecayEstimate SimulateDecay(const RoomModel& model, const Vec3& source,
                            const Vec3& receiver, const SimConfig& config);

struct CalibrationReport {
  BandVector scale = BandVector::Ones();  // g(b)
  int iterations = 0;
  bool converged = false;
  BandVector t30 = BandVector::Constant(NAN);
  BandVector t30_residual = BandVector::Constant(NAN);  // (sim - target) / target
  BandVector edt = BandVector::Constant(NAN);
  BandVector edt_residual = BandVector::Constant(NAN);
  std::vector<std::string> warnings;
};

class CalibrationError : public Error {
 public:
  CalibrationError(const std::string& what, CalibrationReport report)
      : Error(what), report_(std::move(report)) {}
  const CalibrationReport& report() const { return report_; }

 private:
  CalibrationReport report_;
};

// Multiplies every material's absorption in band b by scale(b), clamped to
// [0.005, 0.995]. Materials must carry 8 bands.
RoomModel ScaleAbsorption(const RoomModel& model, const BandVector& scale);

struct CalibrationResult {
  RoomModel model;
  CalibrationReport report;
};

// Secant search per band on the simulated T30 for a global absorption
// scale. Every candidate is traced with the same seed. Throws
// ValidationError for unreachable targets and CalibrationError when
// `max_iters` simulations do not bring every band within tolerance.
CalibrationResult Calibrate(const RoomModel& model, const DecayTarget& target,
                            const Vec3& source, const Vec3& receiver,
                            const SimConfig& config, int max_iters = 20);

std::string CalibrationReportToJson(const CalibrationReport& report);

}  // namespace auralkit

#endif  // AURALKIT_CALIBRATE_H_
