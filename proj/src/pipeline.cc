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

#include "auralkit/pipeline.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <mutex>
#include <sstream>

#include "auralkit/binaural.h"
#include "auralkit/calibrate.h"
#include "auralkit/dsp.h"
#include "auralkit/room_io.h"
#include "auralkit/wav.h"
#include "json.hpp"

namespace auralkit {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string Resolve(const std::string& base, const std::string& path) {
  if (path.empty() || fs::path(path).is_absolute() || base.empty()) return path;
  return (fs::path(base) / path).lexically_normal().string();
}

uint64_t Fnv1a(const std::string& text) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string PairKey(const std::string& a, const std::string& b) {
  return a + "_" + b;
}

BandVector BandsFromJson(const json& j) {
  if (!j.is_array() || j.size() != kNumOctaveBands) {
    throw ParseError("expected an array of 8 per-band values");
  }
  BandVector v;
  for (int b = 0; b < kNumOctaveBands; ++b) v[b] = j[b].get<double>();
  return v;
}

json BandsToJson(const BandVector& v) {
  json a = json::array();
  for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json());
  return a;
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text << "\n";
}

const char* KindName(ConditionKind kind) {
  switch (kind) {
    case ConditionKind::kReference: return "reference";
    case ConditionKind::kGeometry: return "gr";
    case ConditionKind::kBands: return "br";
    case ConditionKind::kAnchor: return "anchor";
  }
  return "";
}

Spectrum StereoLta(const StereoSignal& x, double fs) {
  Spectrum left = LtaSpectrum(x.col(0), fs);
  const Spectrum right = LtaSpectrum(x.col(1), fs);
  left.power = 0.5 * (left.power + right.power);
  return left;
}

StereoSignal AddPadded(const StereoSignal& a, const StereoSignal& b) {
  StereoSignal out = StereoSignal::Zero(std::max(a.rows(), b.rows()), 2);
  out.topRows(a.rows()) += a;
  out.topRows(b.rows()) += b;
  return out;
}

struct PairData {
  AmbisonicsIR air;
  AmbisonicsIR reverb;
  Vec3 direction;
  double distance = 0.0;
};

// Shared state: the reference results every other condition builds on.
struct Context {
  Context(const ExperimentPlan& p, RoomModel r) : plan(p), room(std::move(r)) {}

  const ExperimentPlan& plan;
  RoomModel room;
  HRIRSet hrirs;
  std::map<std::string, Signal> signals;  // by path
  std::vector<std::string> sources;       // labels in use, sorted
  std::string cal_source;
  std::string cal_receiver;

  RoomModel reference_model;
  BandVector reference_t30;
  std::map<std::string, PairData> reference_pairs;
  std::map<std::string, double> reference_gains;
  std::map<std::string, Spectrum> reference_spectra;

  std::mutex log_mutex;
  std::ostream* log = nullptr;

  void Log(const std::string& line) {
    if (!log) return;
    std::lock_guard<std::mutex> lock(log_mutex);
    *log << line << std::endl;
  }

  SimConfig PairConfig(const std::string& source,
                       const std::string& receiver) const {
    SimConfig c = plan.sim;
    c.rng_seed = plan.sim.rng_seed ^ Fnv1a(source + "\x1f" + receiver);
    return c;
  }
};

struct ConditionRun {
  ConditionOutcome outcome;
  json entry;
};

DecayTarget TargetFor(const Context& ctx, const BandVector& t30) {
  DecayTarget target;
  target.t30 = t30;
  target.tolerance = ctx.plan.tolerance;
  return target;
}

RoomModel BuildModel(Context& ctx, const ConditionSpec& spec, const fs::path& dir,
                     json* entry) {
  const Vec3* src = nullptr;
  const Vec3* rcv = nullptr;
  auto calibrate = [&](const RoomModel& model, const BandVector& t30) {
    src = &model.sources.at(ctx.cal_source);
    rcv = &model.receivers.at(ctx.cal_receiver);
    CalibrationResult result;
    try {
      result = Calibrate(model, TargetFor(ctx, t30), *src, *rcv,
                         ctx.PairConfig(ctx.cal_source, ctx.cal_receiver),
                         ctx.plan.max_iters);
    } catch (const CalibrationError& e) {
      WriteText(dir / "calibration.json", CalibrationReportToJson(e.report()));
      throw;
    }
    WriteText(dir / "calibration.json", CalibrationReportToJson(result.report));
    (*entry)["calibration"] = {{"iterations", result.report.iterations},
                               {"scale", BandsToJson(result.report.scale)},
                               {"t30", BandsToJson(result.report.t30)}};
    return result;
  };

  switch (spec.kind) {
    case ConditionKind::kReference: {
      RoomModel model = ctx.room;
      if (spec.t30_target) {
        const CalibrationResult r = calibrate(model, *spec.t30_target);
        model = r.model;
        ctx.reference_t30 = r.report.t30;
      } else {
        ctx.reference_t30 =
            SimulateDecay(model, model.sources.at(ctx.cal_source),
                          model.receivers.at(ctx.cal_receiver),
                          ctx.PairConfig(ctx.cal_source, ctx.cal_receiver))
                .t30;
      }
      (*entry)["reference_t30"] = BandsToJson(ctx.reference_t30);
      return model;
    }
    case ConditionKind::kGeometry: {
      RoomModel model = spec.shoebox ? ToShoebox(ctx.reference_model)
                                     : Decimate(ctx.reference_model,
                                                spec.threshold, spec.remove_tags);
      if (!spec.calibrate) return model;
      if (!ctx.reference_t30.allFinite()) {
        throw ValidationError("reference T30 undefined in some band; cannot calibrate");
      }
      return calibrate(model, ctx.reference_t30).model;
    }
    case ConditionKind::kBands:
      return BandReduceModel(ctx.reference_model, spec.bands);
    case ConditionKind::kAnchor:
      return ctx.reference_model;
  }
  return ctx.reference_model;
}

ConditionRun RunCondition(Context& ctx, const ConditionSpec& spec) {
  const ExperimentPlan& plan = ctx.plan;
  const double fs = plan.sim.sample_rate;
  ConditionRun run;
  run.outcome.id = spec.id;
  run.entry = {{"id", spec.id}, {"kind", KindName(spec.kind)}};
  const fs::path dir = fs::path(plan.output) / spec.id;
  try {
    for (const char* sub : {"air", "brir", "stimuli", "metrics", "spectra"}) {
      fs::create_directories(dir / sub);
    }
    ctx.Log("[" + spec.id + "] building model");
    const RoomModel model = BuildModel(ctx, spec, dir, &run.entry);
    if (spec.kind == ConditionKind::kReference) ctx.reference_model = model;
    SaveRoom(model, (dir / "room.json").string());
    run.entry["room"] = (fs::path(spec.id) / "room.json").string();
    run.entry["polygons"] = model.polygons.size();
    run.entry["warnings"] = model.warnings;

    const bool anchor = spec.kind == ConditionKind::kAnchor;
    std::vector<Biquad> lowpass;
    if (anchor) lowpass = ButterworthLowpass(8, spec.cutoff, fs);

    std::map<std::string, PairData> pairs;
    json airs = json::array();
    for (const std::string& s : ctx.sources) {
      for (const std::string& r : plan.receivers) {
        const std::string key = PairKey(s, r);
        PairData pair;
        if (anchor) {
          const PairData& ref = ctx.reference_pairs.at(key);
          pair = ref;
          pair.air = MakeAnchor(ref.air, spec.cutoff);
        } else {
          ctx.Log("[" + spec.id + "] tracing " + key);
          const Vec3 src = model.sources.at(s);
          const Vec3 rcv = model.receivers.at(r);
          const SimConfig config = ctx.PairConfig(s, r);
          const Reflectogram refl = Trace(model, src, rcv, config);
          pair.air = SynthesizeAir(refl, config);
          pair.reverb = RemoveDirect(pair.air, refl.arrivals).reverb;
          pair.direction = (src - rcv).normalized();
          pair.distance = (src - rcv).norm();
        }
        const fs::path air_path = dir / "air" / (key + ".wav");
        WriteAir(air_path.string(), pair.air);
        airs.push_back({{"source", s}, {"receiver", r},
                        {"path", (fs::path(spec.id) / "air" / (key + ".wav")).string()}});
        pairs[key] = std::move(pair);
      }
    }
    run.entry["airs"] = airs;
    if (spec.kind == ConditionKind::kReference) ctx.reference_pairs = pairs;

    json stimuli = json::array();
    const double yaw = plan.head_yaw_deg * kPi / 180.0;
    for (const StimulusSpec& stim : plan.stimuli) {
      for (const std::string& r : plan.receivers) {
        const std::string key = PairKey(stim.id, r);
        ctx.Log("[" + spec.id + "] rendering " + key);
        std::vector<SceneSource> scene;
        Signal omni;
        for (const auto& [label, path] : stim.sources) {
          const std::string pk = PairKey(label, r);
          const PairData& pair = pairs.at(pk);
          SceneSource s;
          s.label = label;
          s.anechoic = ctx.signals.at(path);
          s.reverb = pair.reverb;
          s.direction = pair.direction;
          s.distance = pair.distance;
          if (spec.kind == ConditionKind::kReference) {
            const auto by_source = plan.drr.find(label);
            if (by_source != plan.drr.end()) {
              const auto it = by_source->second.find(r);
              if (it != by_source->second.end()) s.target_drr = it->second;
            }
          } else {
            s.reverb_gain = ctx.reference_gains.at(pk);
          }
          scene.push_back(std::move(s));
          if (omni.size() < pair.air.length()) {
            Signal grown = Signal::Zero(pair.air.length());
            grown.head(omni.size()) = omni;
            omni = grown;
          }
          omni.head(pair.air.length()) += pair.air.channels.col(0);
        }
        SceneRender render = RenderScene(scene, ctx.hrirs, yaw);
        if (spec.kind == ConditionKind::kReference) {
          for (const auto& [label, gain] : render.reverb_gains) {
            ctx.reference_gains[PairKey(label, r)] = gain;
          }
        }
        StereoSignal brir(0, 2);
        for (const auto& [label, b] : render.brirs) brir = AddPadded(brir, b);
        StereoSignal samples = render.stimulus.samples;
        if (anchor) {
          for (int ch = 0; ch < 2; ++ch) {
            samples.col(ch) = FiltFilt(lowpass, samples.col(ch));
            brir.col(ch) = FiltFilt(lowpass, brir.col(ch));
          }
        }
        BinauralStimulus stimulus = render.stimulus;
        stimulus.samples = samples;
        stimulus.model_id = spec.id;
        stimulus.receiver = r;
        WriteStimulus((dir / "stimuli" / (key + ".wav")).string(), stimulus);
        WriteWav((dir / "brir" / (key + ".wav")).string(), brir, fs);

        MetricsReport report = AnalyzeResponses(omni, brir, fs);
        const Spectrum spectrum = StereoLta(samples, fs);
        if (spec.kind == ConditionKind::kReference) {
          ctx.reference_spectra[key] = spectrum;
        }
        report.spectral_difference =
            SpectralDifference(ctx.reference_spectra.at(key), spectrum);
        WriteText(dir / "metrics" / (key + ".json"), MetricsToJson(report));
        WriteSpectrumTable((dir / "spectra" / (key + ".txt")).string(), spectrum);

        const std::string id = spec.id + "." + key;
        stimuli.push_back(
            {{"id", id},
             {"stimulus", stim.id},
             {"receiver", r},
             {"path", (fs::path(spec.id) / "stimuli" / (key + ".wav")).string()},
             {"brir", (fs::path(spec.id) / "brir" / (key + ".wav")).string()},
             {"metrics", (fs::path(spec.id) / "metrics" / (key + ".json")).string()}});
      }
    }
    run.entry["stimuli"] = stimuli;
    run.entry["status"] = "success";
    run.outcome.success = true;
  } catch (const std::exception& e) {
    run.entry["status"] = "failure";
    run.entry["error"] = e.what();
    run.outcome.error = e.what();
    ctx.Log("[" + spec.id + "] failed: " + e.what());
  }
  return run;
}

// One trial per stimulus, receiver and model category: the hidden
// reference, the anchor and the category's conditions.
json BuildTrials(const ExperimentPlan& plan,
                 const std::vector<ConditionRun>& runs) {
  json trials = json::array();
  std::string reference;
  std::vector<std::string> anchors;
  std::map<std::string, std::vector<std::string>> categories;
  for (size_t i = 0; i < runs.size(); ++i) {
    if (!runs[i].outcome.success) continue;
    const ConditionSpec& spec = plan.conditions[i];
    switch (spec.kind) {
      case ConditionKind::kReference: reference = spec.id; break;
      case ConditionKind::kAnchor: anchors.push_back(spec.id); break;
      case ConditionKind::kGeometry: categories["gr"].push_back(spec.id); break;
      case ConditionKind::kBands: categories["br"].push_back(spec.id); break;
    }
  }
  if (reference.empty()) return trials;
  for (const StimulusSpec& stim : plan.stimuli) {
    for (const std::string& r : plan.receivers) {
      const std::string key = PairKey(stim.id, r);
      for (const auto& [category, ids] : categories) {
        json conditions = json::array();
        conditions.push_back(reference);
        for (const std::string& a : anchors) conditions.push_back(a);
        for (const std::string& c : ids) conditions.push_back(c);
        trials.push_back({{"id", key + "_" + category},
                          {"stimulus", stim.id},
                          {"receiver", r},
                          {"category", category},
                          {"reference", reference},
                          {"conditions", conditions}});
      }
    }
  }
  return trials;
}

}  // namespace

ExperimentPlan ParsePlan(const std::string& text, const std::string& base_dir) {
  ExperimentPlan plan;
  try {
    const json j = json::parse(text);
    if (j.value("schema", "") != kPlanSchema) {
      throw ParseError(std::string("plan schema must be '") + kPlanSchema + "'");
    }
    plan.room = Resolve(base_dir, j.at("room").get<std::string>());
    plan.output = Resolve(base_dir, j.at("output").get<std::string>());
    plan.hrirs = j.value("hrirs", plan.hrirs);
    if (plan.hrirs != "spherical-head") plan.hrirs = Resolve(base_dir, plan.hrirs);
    plan.head_yaw_deg = j.value("head_yaw_deg", 0.0);
    plan.sim.sample_rate = j.value("sample_rate", plan.sim.sample_rate);
    if (j.contains("sim")) {
      const json& s = j["sim"];
      plan.sim.num_rays = s.value("num_rays", plan.sim.num_rays);
      plan.sim.max_time = s.value("max_time", plan.sim.max_time);
      plan.sim.ambisonics_order = s.value("ambisonics_order", plan.sim.ambisonics_order);
      plan.sim.image_source_order =
          s.value("image_source_order", plan.sim.image_source_order);
      plan.sim.rng_seed = s.value("rng_seed", plan.sim.rng_seed);
      plan.sim.air_absorption = s.value("air_absorption", plan.sim.air_absorption);
      plan.sim.receiver_radius = s.value("receiver_radius", plan.sim.receiver_radius);
      plan.sim.time_bin_width = s.value("time_bin_width", plan.sim.time_bin_width);
      plan.sim.threads = s.value("threads", plan.sim.threads);
    }
    plan.receivers = j.at("receivers").get<std::vector<std::string>>();
    for (const json& s : j.at("stimuli")) {
      StimulusSpec stim;
      stim.id = s.at("id").get<std::string>();
      for (const auto& [label, path] : s.at("sources").items()) {
        stim.sources[label] = Resolve(base_dir, path.get<std::string>());
      }
      plan.stimuli.push_back(std::move(stim));
    }
    if (j.contains("drr")) {
      for (const auto& [source, by_receiver] : j["drr"].items()) {
        for (const auto& [receiver, value] : by_receiver.items()) {
          plan.drr[source][receiver] = value.get<double>();
        }
      }
    }
    for (const json& c : j.at("conditions")) {
      ConditionSpec spec;
      spec.id = c.at("id").get<std::string>();
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "reference") {
        spec.kind = ConditionKind::kReference;
        if (c.contains("t30_target")) spec.t30_target = BandsFromJson(c["t30_target"]);
      } else if (kind == "gr") {
        spec.kind = ConditionKind::kGeometry;
        spec.shoebox = c.value("shoebox", false);
        spec.threshold = c.value("threshold", 0.0);
        spec.remove_tags = c.value("remove_tags", std::set<std::string>{});
        spec.calibrate = c.value("calibrate", true);
        if (!spec.shoebox && !c.contains("threshold") && spec.remove_tags.empty()) {
          throw ParseError("gr condition '" + spec.id +
                           "' needs a threshold, remove_tags or shoebox");
        }
      } else if (kind == "br") {
        spec.kind = ConditionKind::kBands;
        spec.bands = c.at("bands").get<int>();
      } else if (kind == "anchor") {
        spec.kind = ConditionKind::kAnchor;
        spec.cutoff = c.value("cutoff", spec.cutoff);
      } else {
        throw ParseError("unknown condition kind '" + kind + "'");
      }
      plan.conditions.push_back(std::move(spec));
    }
    if (j.contains("calibration")) {
      const json& c = j["calibration"];
      plan.tolerance = c.value("tolerance", plan.tolerance);
      plan.max_iters = c.value("max_iters", plan.max_iters);
      plan.calibration_source = c.value("source", "");
      plan.calibration_receiver = c.value("receiver", "");
    }
    plan.parallel_conditions = j.value("parallel_conditions", false);
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan: ") + e.what());
  }
  return plan;
}

ExperimentPlan LoadPlan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read plan '" + path + "'");
  std::stringstream text;
  text << in.rdbuf();
  return ParsePlan(text.str(), fs::path(path).parent_path().string());
}

void ValidatePlan(const ExperimentPlan& plan, const RoomModel& room) {
  ValidateSimConfig(plan.sim);
  if (plan.output.empty()) throw ValidationError("plan has no output directory");
  int references = 0;
  std::set<std::string> ids;
  for (const ConditionSpec& c : plan.conditions) {
    if (c.id.empty() ||
        c.id.find_first_not_of("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
                               "0123456789-_") != std::string::npos) {
      throw ValidationError("condition id '" + c.id +
                            "' must be non-empty and use [A-Za-z0-9_-]");
    }
    if (!ids.insert(c.id).second) {
      throw ValidationError("duplicate condition id '" + c.id + "'");
    }
    if (c.kind == ConditionKind::kReference) ++references;
    if (c.kind == ConditionKind::kBands && c.bands != 1 && c.bands != 2 &&
        c.bands != 4 && c.bands != 8) {
      throw ValidationError("condition '" + c.id + "': bands must be 1, 2, 4 or 8");
    }
    if (c.kind == ConditionKind::kAnchor &&
        (!(c.cutoff > 0.0) || c.cutoff >= 0.5 * plan.sim.sample_rate)) {
      throw ValidationError("condition '" + c.id + "': cutoff must lie below Nyquist");
    }
  }
  if (references != 1) {
    throw ValidationError("plan needs exactly one reference condition, has " +
                          std::to_string(references));
  }
  if (plan.receivers.empty()) throw ValidationError("plan lists no receivers");
  if (plan.stimuli.empty()) throw ValidationError("plan lists no stimuli");
  for (const std::string& r : plan.receivers) {
    if (!room.receivers.count(r)) {
      throw ValidationError("receiver '" + r + "' is not in the room file");
    }
  }
  std::set<std::string> stim_ids;
  for (const StimulusSpec& s : plan.stimuli) {
    if (!stim_ids.insert(s.id).second) {
      throw ValidationError("duplicate stimulus id '" + s.id + "'");
    }
    if (s.sources.empty()) {
      throw ValidationError("stimulus '" + s.id + "' has no sources");
    }
    for (const auto& [label, path] : s.sources) {
      if (!room.sources.count(label)) {
        throw ValidationError("source '" + label + "' is not in the room file");
      }
    }
  }
  for (const auto& [source, by_receiver] : plan.drr) {
    if (!room.sources.count(source)) {
      throw ValidationError("DRR target for unknown source '" + source + "'");
    }
    for (const auto& [receiver, value] : by_receiver) {
      if (!room.receivers.count(receiver)) {
        throw ValidationError("DRR target for unknown receiver '" + receiver + "'");
      }
    }
  }
  if (!plan.calibration_source.empty() &&
      !room.sources.count(plan.calibration_source)) {
    throw ValidationError("calibration source '" + plan.calibration_source +
                          "' is not in the room file");
  }
  if (!plan.calibration_receiver.empty() &&
      !room.receivers.count(plan.calibration_receiver)) {
    throw ValidationError("calibration receiver '" + plan.calibration_receiver +
                          "' is not in the room file");
  }
}

std::vector<ConditionOutcome> RunPlan(const ExperimentPlan& plan,
                                      std::ostream* log) {
  Context ctx(plan, LoadRoom(plan.room));
  ctx.log = log;
  ValidatePlan(plan, ctx.room);
  const double fs = plan.sim.sample_rate;
  ctx.hrirs = plan.hrirs == "spherical-head" ? SphericalHeadHrirs(fs)
                                             : LoadHrirSet(plan.hrirs);
  ValidateHrirSet(ctx.hrirs);
  if (ctx.hrirs.sample_rate != fs) {
    throw ValidationError("HRIR sample rate differs from the plan's");
  }
  std::set<std::string> labels;
  for (const StimulusSpec& s : plan.stimuli) {
    for (const auto& [label, path] : s.sources) {
      labels.insert(label);
      if (ctx.signals.count(path)) continue;
      const WavData wav = ReadWav(path);
      if (wav.sample_rate != fs) {
        throw ValidationError("'" + path + "' is sampled at " +
                              std::to_string(wav.sample_rate) + " Hz, plan uses " +
                              std::to_string(fs));
      }
      ctx.signals[path] = wav.samples.rowwise().mean();
    }
  }
  ctx.sources.assign(labels.begin(), labels.end());
  ctx.cal_source =
      plan.calibration_source.empty() ? ctx.sources.front() : plan.calibration_source;
  ctx.cal_receiver = plan.calibration_receiver.empty() ? plan.receivers.front()
                                                       : plan.calibration_receiver;
  fs::create_directories(plan.output);

  std::vector<ConditionRun> runs(plan.conditions.size());
  size_t ref = 0;
  while (plan.conditions[ref].kind != ConditionKind::kReference) ++ref;
  runs[ref] = RunCondition(ctx, plan.conditions[ref]);
  const bool reference_ok = runs[ref].outcome.success;

  std::vector<std::pair<size_t, std::future<ConditionRun>>> pending;
  for (size_t i = 0; i < plan.conditions.size(); ++i) {
    if (i == ref) continue;
    const ConditionSpec& spec = plan.conditions[i];
    if (!reference_ok) {
      runs[i].outcome = {spec.id, false, "reference condition failed"};
      runs[i].entry = {{"id", spec.id},
                       {"kind", KindName(spec.kind)},
                       {"status", "failure"},
                       {"error", "reference condition failed"}};
      continue;
    }
    if (plan.parallel_conditions) {
      pending.emplace_back(i, std::async(std::launch::async, [&ctx, &spec] {
                             return RunCondition(ctx, spec);
                           }));
    } else {
      runs[i] = RunCondition(ctx, spec);
    }
  }
  for (auto& [i, f] : pending) runs[i] = f.get();

  json manifest = {{"schema", kManifestSchema},
                   {"room", plan.room},
                   {"sample_rate", fs},
                   {"receivers", plan.receivers},
                   {"sources", ctx.sources}};
  json conditions = json::array();
  std::vector<ConditionOutcome> outcomes;
  for (const ConditionRun& r : runs) {
    conditions.push_back(r.entry);
    outcomes.push_back(r.outcome);
  }
  manifest["conditions"] = conditions;
  manifest["trials"] = BuildTrials(plan, runs);
  WriteText(fs::path(plan.output) / "manifest.json", manifest.dump(2));
  return outcomes;
}

std::vector<MetricsComparison> CompareConditions(
    const std::string& reference_dir, const std::string& condition_dir) {
  auto keys = [](const std::string& dir) {
    std::set<std::string> out;
    const fs::path metrics = fs::path(dir) / "metrics";
    if (!fs::is_directory(metrics)) {
      throw ValidationError("'" + dir + "' has no metrics directory");
    }
    for (const auto& e : fs::directory_iterator(metrics)) {
      if (e.path().extension() == ".json") out.insert(e.path().stem().string());
    }
    return out;
  };
  const std::set<std::string> a = keys(reference_dir);
  const std::set<std::string> b = keys(condition_dir);
  if (a != b) {
    throw ValidationError("conditions cover different stimuli or receivers");
  }
  auto read = [](const fs::path& path) {
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    return MetricsFromJson(text.str());
  };
  std::vector<MetricsComparison> rows;
  for (const std::string& key : a) {
    MetricsComparison row;
    row.key = key;
    row.reference = read(fs::path(reference_dir) / "metrics" / (key + ".json"));
    row.condition = read(fs::path(condition_dir) / "metrics" / (key + ".json"));
    row.delta_asw = row.condition.asw - row.reference.asw;
    row.delta_lev = row.condition.lev - row.reference.lev;
    row.delta_t30 = row.condition.t30 - row.reference.t30;
    const fs::path sa = fs::path(reference_dir) / "spectra" / (key + ".txt");
    const fs::path sb = fs::path(condition_dir) / "spectra" / (key + ".txt");
    if (fs::exists(sa) && fs::exists(sb)) {
      row.spectral_difference = SpectralDifference(
          ReadSpectrumTable(sa.string()), ReadSpectrumTable(sb.string()));
    }
    row.flags = CompareJnd(row.reference, row.condition);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string ComparisonsToJson(const std::vector<MetricsComparison>& rows) {
  json out = json::array();
  for (const MetricsComparison& r : rows) {
    json flags_t30 = json::array();
    for (bool f : r.flags.t30) flags_t30.push_back(f);
    json row = {{"key", r.key},
                {"delta_asw", r.delta_asw},
                {"delta_lev", r.delta_lev},
                {"delta_t30", BandsToJson(r.delta_t30)},
                {"drr_reference", r.reference.drr},
                {"drr_condition", r.condition.drr},
                {"flags", {{"asw", r.flags.asw}, {"lev", r.flags.lev},
                           {"t30", flags_t30}, {"any", r.flags.any()}}}};
    row["spectral_difference"] =
        r.spectral_difference ? json(*r.spectral_difference) : json();
    out.push_back(row);
  }
  return out.dump(2);
}

}  // namespace auralkit
