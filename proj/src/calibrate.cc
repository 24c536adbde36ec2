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

#include "auralkit/calibrate.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "auralkit/metrics.h"
#include "json.hpp"

namespace auralkit {

namespace {

constexpr double kEyringConstant = 0.161;

double EyringTime(double volume, double surface, double mean_alpha) {
  if (mean_alpha <= 0.0) return INFINITY;
  return kEyringConstant * volume / (-surface * std::log1p(-mean_alpha));
}

double EyringAlpha(double volume, double surface, double time) {
  return -std::expm1(-kEyringConstant * volume / (surface * time));
}

bool Within(const BandVector& t30, const BandVector& target, double tol,
            BandVector* residual) {
  *residual = ((t30 - target).array() / target.array()).matrix();
  bool ok = true;
  for (int b = 0; b < kNumOctaveBands; ++b) {
    ok = ok && std::isfinite((*residual)[b]) && std::abs((*residual)[b]) <= tol;
  }
  return ok;
}

std::string Residuals(const BandVector& r) {
  std::ostringstream s;
  s.precision(4);
  for (int b = 0; b < kNumOctaveBands; ++b) {
    s << (b ? ", " : "") << r[b] * 100.0 << "%";
  }
  return s.str();
}

}  // namespace

BandVector EyringRt(const RoomModel& model) {
  const double volume = ComputeVolume(model);
  const double surface = TotalSurfaceArea(model);
  const Eigen::VectorXd area = EquivalentAbsorptionArea(model).values;
  BandVector out;
  for (int b = 0; b < kNumOctaveBands; ++b) {
    const double mean_alpha = area[b] / surface;
    if (mean_alpha >= 1.0) {
      throw ValidationError("Eyring undefined: mean absorption reaches 1 in band " +
                            std::to_string(b));
    }
    out[b] = EyringTime(volume, surface, mean_alpha);
  }
  return out;
}

DecayEstimate SimulateDecay(const RoomModel& model, const Vec3& source,
                            const Vec3& receiver, const SimConfig& config) {
  const Reflectogram r =
      Trace(PolygonSet(model), ComputeVolume(model), model.speed_of_sound,
            source, receiver, config, {});
  DecayEstimate out;
  for (int b = 0; b < kNumOctaveBands; ++b) {
    try {
      const DecayCurve decay = ReflectogramDecay(r, b);
      out.edt[b] = Edt(decay);
      out.t30[b] = T30(decay);
    } catch (const DecayError&) {
    }
  }
  return out;
}

RoomModel ScaleAbsorption(const RoomModel& model, const BandVector& scale) {
  RoomModel out = model;
  for (auto& [id, material] : out.materials) {
    if (material.absorption.size() != kNumOctaveBands) {
      throw ValidationError("calibration needs 8-band materials; '" + id +
                            "' has " +
                            std::to_string(material.absorption.size()));
    }
    for (int b = 0; b < kNumOctaveBands; ++b) {
      material.absorption.values[b] =
          std::clamp(material.absorption.values[b] * scale[b],
                     kMinCalibratedAbsorption, kMaxCalibratedAbsorption);
    }
  }
  return out;
}

CalibrationResult Calibrate(const RoomModel& model, const DecayTarget& target,
                            const Vec3& source, const Vec3& receiver,
                            const SimConfig& config, int max_iters) {
  if (!(target.tolerance > 0.0)) {
    throw ValidationError("calibration tolerance must be > 0");
  }
  if (!(target.t30.array() > 0.0).all()) {
    throw ValidationError("T30 targets must be > 0 in every band");
  }
  if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
  ScaleAbsorption(model, BandVector::Ones());

  const double volume = ComputeVolume(model);
  const double surface = TotalSurfaceArea(model);
  const Eigen::VectorXd area = EquivalentAbsorptionArea(model).values;
  const double shortest = EyringTime(volume, surface, kMaxCalibratedAbsorption);
  const double longest = EyringTime(volume, surface, kMinCalibratedAbsorption);
  for (int b = 0; b < kNumOctaveBands; ++b) {
    if (target.t30[b] < shortest || target.t30[b] > longest) {
      std::ostringstream s;
      s << "T30 target " << target.t30[b] << " s in band " << b
        << " is outside the achievable Eyring range [" << shortest << ", "
        << longest << "] s (needs mean absorption "
        << EyringAlpha(volume, surface, target.t30[b]) << ")";
      throw ValidationError(s.str());
    }
  }

  CalibrationReport report;
  auto finish = [&](const DecayEstimate& e) {
    report.t30 = e.t30;
    report.edt = e.edt;
    report.edt_residual =
        ((e.edt - target.edt).array() / target.edt.array()).matrix();
    return Within(e.t30, target.t30, target.tolerance, &report.t30_residual);
  };

  DecayEstimate current = SimulateDecay(model, source, receiver, config);
  if (finish(current)) {
    report.converged = true;
    return {model, report};
  }

  // Start from Eyring inversion of the target, corrected by how far the
  // simulation sits from Eyring at the current absorption.
  BandVector g_prev = BandVector::Ones();
  BandVector t_prev = current.t30;
  BandVector g;
  for (int b = 0; b < kNumOctaveBands; ++b) {
    const double alpha = area[b] / surface;
    double goal = target.t30[b];
    if (std::isfinite(t_prev[b]) && alpha > 0.0) {
      goal *= EyringTime(volume, surface, alpha) / t_prev[b];
    }
    const double required = std::clamp(EyringAlpha(volume, surface, goal),
                                       kMinCalibratedAbsorption,
                                       kMaxCalibratedAbsorption);
    g[b] = alpha > 0.0 ? std::log1p(-required) / std::log1p(-alpha)
                       : required / kMinCalibratedAbsorption;
  }

  RoomModel candidate = model;
  for (int iter = 1; iter <= max_iters; ++iter) {
    candidate = ScaleAbsorption(model, g);
    current = SimulateDecay(candidate, source, receiver, config);
    report.iterations = iter;
    report.scale = g;
    if (finish(current)) {
      report.converged = true;
      candidate.warnings.push_back("absorption calibrated to T30 targets");
      return {candidate, report};
    }
    BandVector next = g;
    for (int b = 0; b < kNumOctaveBands; ++b) {
      const double t = current.t30[b];
      if (!std::isfinite(t)) {
        next[b] = g[b] * 0.5;
        continue;
      }
      if (std::abs(report.t30_residual[b]) <= target.tolerance) continue;
      const double dg = std::log(g[b] / g_prev[b]);
      const double dt = std::log(t / t_prev[b]);
      if (dg != 0.0 && dt * dg >= 0.0) {
        report.warnings.push_back("band " + std::to_string(b) +
                                  ": T30 not decreasing in absorption at iteration " +
                                  std::to_string(iter) +
                                  "; simulation noise, consider more rays");
      }
      // Secant on log T30 against log g; slope -1 (Eyring-like) when the
      // last step carries no information.
      double slope = dg != 0.0 && std::isfinite(t_prev[b]) ? dt / dg : -1.0;
      if (!(slope < -0.05)) slope = -1.0;
      const double step = std::clamp(std::log(target.t30[b] / t) / slope,
                                      -std::log(4.0), std::log(4.0));
      next[b] = g[b] * std::exp(step);
    }
    g_prev = g;
    t_prev = current.t30;
    g = next;
  }
  throw CalibrationError("calibration did not converge in " +
                             std::to_string(max_iters) +
                             " iterations; T30 residuals per band: " +
                             Residuals(report.t30_residual),
                         report);
}

std::string CalibrationReportToJson(const CalibrationReport& report) {
  auto bands = [](const BandVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) {
      a.push_back(std::isfinite(x) ? nlohmann::json(x) : nlohmann::json());
    }
    return a;
  };
  nlohmann::json j = {{"converged", report.converged},
                      {"iterations", report.iterations},
                      {"scale", bands(report.scale)},
                      {"t30", bands(report.t30)},
                      {"t30_residual", bands(report.t30_residual)},
                      {"edt", bands(report.edt)},
                      {"edt_residual", bands(report.edt_residual)},
                      {"warnings", report.warnings}};
  return j.dump(2);
}

}  // namespace auralkit
