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

// Experiment orchestration: builds every model condition from a room,
// simulates, renders and evaluates it, and indexes the artifacts in a
// manifest.

#ifndef AURALKIT_PIPELINE_H_
#define AURALKIT_PIPELINE_H_

#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "auralkit/ga_engine.h"
#include "auralkit/metrics.h"

namespace auralkit {

inline constexpr char kPlanSchema[] = "auralkit.plan/1";
inline constexpr char kManifestSchema[] = "auralkit.manifest/1";

enum class ConditionKind { kReference, kGeometry, kBands, kAnchor };

struct ConditionSpec {
  std::string id;
  ConditionKind kind = ConditionKind::kReference;
  // kGeometry
  double threshold = 0.0;  // m^2
  std::set<std::string> remove_tags;
  bool shoebox = false;
  bool calibrate = true;
  // kBands
  int bands = 8;
  // kAnchor
  double cutoff = 2500.0;  // Hz
  // kReference: optional per-band T30 the room is first calibrated to.
  std::optional<BandVector> t30_target;
};

struct StimulusSpec {
  std::string id;
  std::map<std::string, std::string> sources;  // source label -> WAV path
};

struct ExperimentPlan {
  std::string room;    // room file
  std::string output;  // artifact directory
  std::string hrirs = "spherical-head";  // HRIR directory or the built-in set
  double head_yaw_deg = 0.0;
  SimConfig sim;
  std::vector<std::string> receivers;
  std::vector<StimulusSpec> stimuli;
  // Target DRR (dB) per source and receiver, applied to the reference;
  // the resulting reverb gains are reused by every other condition.
  std::map<std::string, std::map<std::string, double>> drr;
  std::vector<ConditionSpec> conditions;
  double tolerance = 0.01;
  int max_iters = 20;
  std::string calibration_source;    // default: first source used
  std::string calibration_receiver;  // default: first receiver
  bool parallel_conditions = false;
};

// Relative paths are resolved against `base_dir`. Throws ParseError.
ExperimentPlan ParsePlan(const std::string& text, const std::string& base_dir);
ExperimentPlan LoadPlan(const std::string& path);

// Exactly one reference, unique ids, labels present in `room`.
void ValidatePlan(const ExperimentPlan& plan, const RoomModel& room);

struct ConditionOutcome {
  std::string id;
  bool success = false;
  std::string error;
};

// Runs every condition; a failing condition is recorded in the manifest
// and the others proceed. Returns one outcome per condition, plan order.
std::vector<ConditionOutcome> RunPlan(const ExperimentPlan& plan,
                                      std::ostream* log = nullptr);

struct MetricsComparison {
  std::string key;  // "<stimulus>_<receiver>"
  MetricsReport reference;
  MetricsReport condition;
  double delta_asw = 0.0;
  double delta_lev = 0.0;
  BandVector delta_t30 = BandVector::Zero();
  std::optional<double> spectral_difference;
  JndFlags flags;
};

// Compares the metrics of two condition directories key by key. Throws
// ValidationError when they do not cover the same stimuli and receivers.
std::vector<MetricsComparison> CompareConditions(
    const std::string& reference_dir, const std::string& condition_dir);

std::string ComparisonsToJson(const std::vector<MetricsComparison>& rows);

}  // namespace auralkit

#endif  // AURALKIT_PIPELINE_H_
