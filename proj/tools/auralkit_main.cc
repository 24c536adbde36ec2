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

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "auralkit/binaural.h"
#include "auralkit/calibrate.h"
#include "auralkit/ga_engine.h"
#include "auralkit/metrics.h"
#include "auralkit/pipeline.h"
#include "auralkit/presets.h"
#include "auralkit/rating_service.h"
#include "auralkit/room_io.h"
#include "auralkit/wav.h"

namespace {

using namespace auralkit;

void AddSimFlags(CLI::App* app, SimConfig* sim) {
  app->add_option("--rays", sim->num_rays, "Number of rays")->capture_default_str();
  app->add_option("--max-time", sim->max_time, "Impulse response length (s)")
      ->capture_default_str();
  app->add_option("--order", sim->ambisonics_order, "Ambisonics order")
      ->capture_default_str();
  app->add_option("--image-order", sim->image_source_order,
                  "Image-source reflection order")
      ->capture_default_str();
  app->add_option("--seed", sim->rng_seed, "Random seed")->capture_default_str();
  app->add_option("--sample-rate", sim->sample_rate, "44100 or 48000")
      ->capture_default_str();
  app->add_flag("--air-absorption", sim->air_absorption, "Apply air absorption");
  app->add_option("--threads", sim->threads, "Worker threads (0: all cores)")
      ->capture_default_str();
}

Vec3 Lookup(const std::map<std::string, Vec3>& points, const std::string& label,
            const char* what) {
  const auto it = points.find(label);
  if (it == points.end()) {
    throw ValidationError(std::string(what) + " '" + label + "' is not in the room");
  }
  return it->second;
}

void WriteFile(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text << "\n";
}

Signal Mono(const std::string& path, double* sample_rate) {
  const WavData wav = ReadWav(path);
  *sample_rate = wav.sample_rate;
  return wav.samples.rowwise().mean();
}

StereoSignal Stereo(const std::string& path, double* sample_rate) {
  const WavData wav = ReadWav(path);
  if (wav.samples.cols() != 2) {
    throw ValidationError("'" + path + "' must have two channels");
  }
  *sample_rate = wav.sample_rate;
  return wav.samples;
}

HRIRSet Hrirs(const std::string& spec, double sample_rate) {
  return spec == "spherical-head" ? SphericalHeadHrirs(sample_rate)
                                  : LoadHrirSet(spec);
}

RatingServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Room auralization toolkit"};
  app.require_subcommand(1);

  std::string room_path, out_path, source, receiver;
  SimConfig sim;

  auto* simulate = app.add_subcommand("simulate", "Simulate an Ambisonics room impulse response");
  simulate->add_option("--room", room_path, "Room file")->required();
  simulate->add_option("--source", source, "Source label")->required();
  simulate->add_option("--receiver", receiver, "Receiver label")->required();
  simulate->add_option("--out", out_path, "Output AmbiX WAV")->required();
  AddSimFlags(simulate, &sim);

  double threshold = 0.0;
  std::vector<std::string> remove_tags;
  bool shoebox = false;
  auto* decimate = app.add_subcommand("decimate", "Remove small or tagged surfaces");
  decimate->add_option("--room", room_path, "Room file")->required();
  decimate->add_option("--threshold", threshold, "Area threshold (m^2)");
  decimate->add_option("--remove-tag", remove_tags, "Also remove polygons with this tag");
  decimate->add_flag("--shoebox", shoebox, "Replace by a volume-matched box");
  decimate->add_option("--out", out_path, "Output room file")->required();

  int bands = 8;
  auto* band_reduce = app.add_subcommand("band-reduce", "Merge absorption bands");
  band_reduce->add_option("--room", room_path, "Room file")->required();
  band_reduce->add_option("--bands", bands, "4, 2 or 1")->required();
  band_reduce->add_option("--out", out_path, "Output room file")->required();

  std::vector<double> t30;
  std::string target_room, report_path;
  double tolerance = 0.01;
  int max_iters = 20;
  auto* calibrate = app.add_subcommand("calibrate", "Fit absorption to T30 targets");
  calibrate->add_option("--room", room_path, "Room file")->required();
  calibrate->add_option("--source", source, "Source label")->required();
  calibrate->add_option("--receiver", receiver, "Receiver label")->required();
  auto* t30_opt = calibrate->add_option("--t30", t30, "8 per-band T30 targets (s)")
                      ->expected(kNumOctaveBands);
  calibrate->add_option("--target-room", target_room,
                        "Use this room's simulated T30 as the target")
      ->excludes(t30_opt);
  calibrate->add_option("--tolerance", tolerance, "Relative tolerance")->capture_default_str();
  calibrate->add_option("--max-iters", max_iters, "Iteration limit")->capture_default_str();
  calibrate->add_option("--out", out_path, "Output room file")->required();
  calibrate->add_option("--report", report_path, "Fit report (JSON)");
  AddSimFlags(calibrate, &sim);

  std::string air_path, anechoic_path, hrirs = "spherical-head", brir_out;
  std::optional<double> drr;
  double yaw_deg = 0.0;
  int truncate = -1;
  auto* render = app.add_subcommand("render", "Render a binaural stimulus");
  render->add_option("--air", air_path, "AmbiX AIR from simulate")->required();
  render->add_option("--room", room_path, "Room file with the source and receiver")->required();
  render->add_option("--source", source, "Source label")->required();
  render->add_option("--receiver", receiver, "Receiver label")->required();
  render->add_option("--anechoic", anechoic_path, "Anechoic WAV")->required();
  render->add_option("--hrirs", hrirs, "HRIR directory or 'spherical-head'")
      ->capture_default_str();
  render->add_option("--drr", drr, "Target direct-to-reverberant ratio (dB)");
  render->add_option("--yaw", yaw_deg, "Head yaw (degrees)")->capture_default_str();
  render->add_option("--truncate", truncate, "Direct HRIR length (samples)");
  render->add_option("--out", out_path, "Output stereo WAV")->required();
  render->add_option("--brir-out", brir_out, "Also write the binaural IR");

  double cutoff = 2500.0;
  auto* anchor = app.add_subcommand("anchor", "Low-pass an AIR into an anchor");
  anchor->add_option("--air", air_path, "AmbiX AIR")->required();
  anchor->add_option("--cutoff", cutoff, "Cutoff (Hz)")->capture_default_str();
  anchor->add_option("--out", out_path, "Output AmbiX WAV")->required();

  std::string brir_path, omni_path, stimulus_path, reference_path, spectrum_out;
  auto* metrics = app.add_subcommand("metrics", "Objective metrics of a binaural IR");
  metrics->add_option("--brir", brir_path, "Stereo binaural IR")->required();
  metrics->add_option("--omni", omni_path, "IR for decay times (first channel used)");
  metrics->add_option("--stimulus", stimulus_path, "Stereo stimulus for the spectrum");
  metrics->add_option("--reference-stimulus", reference_path,
                      "Reference stimulus for the spectral difference");
  metrics->add_option("--spectrum-out", spectrum_out, "Two-column spectrum table");
  metrics->add_option("--out", out_path, "Output JSON (default stdout)");

  std::string reference_dir, condition_dir;
  auto* compare = app.add_subcommand("compare", "Compare two condition directories");
  compare->add_option("--reference", reference_dir, "Reference condition directory")->required();
  compare->add_option("--condition", condition_dir, "Condition directory")->required();
  compare->add_option("--out", out_path, "Output JSON (default stdout)");

  std::string plan_path;
  bool parallel = false, quiet = false;
  auto* run_plan = app.add_subcommand("run-plan", "Run an experiment plan");
  run_plan->add_option("plan", plan_path, "Plan file")->required();
  run_plan->add_flag("--parallel", parallel, "Run conditions concurrently");
  run_plan->add_flag("--quiet", quiet, "No progress output");

  std::string artifacts, host = "127.0.0.1", ui_dir, csv_path;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve stimuli and collect ratings");
  serve->add_option("--artifacts", artifacts, "run-plan output directory")->required();
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port")->capture_default_str();
  serve->add_option("--ui", ui_dir, "Static UI directory");
  serve->add_option("--csv", csv_path, "Ratings CSV (default <artifacts>/ratings.csv)");

  double step_deg = 10.0;
  double sample_rate = 44100.0;
  auto* hrir_synth = app.add_subcommand("hrir-synth", "Write a spherical-head HRIR set");
  hrir_synth->add_option("--out", out_path, "Output directory")->required();
  hrir_synth->add_option("--sample-rate", sample_rate, "Hz")->capture_default_str();
  hrir_synth->add_option("--step", step_deg, "Grid step (degrees)")->capture_default_str();

  auto* example_room = app.add_subcommand("example-room", "Write the synthetic living room");
  example_room->add_option("--out", out_path, "Output room file")->required();

  std::string kind = "speech";
  double seconds = 6.0;
  uint64_t seed = 1;
  auto* example_signal = app.add_subcommand("example-signal", "Write a synthetic anechoic signal");
  example_signal->add_option("--kind", kind, "speech or music")
      ->check(CLI::IsMember({"speech", "music"}))
      ->capture_default_str();
  example_signal->add_option("--seconds", seconds, "Duration")->capture_default_str();
  example_signal->add_option("--sample-rate", sample_rate, "Hz")->capture_default_str();
  example_signal->add_option("--seed", seed, "Random seed")->capture_default_str();
  example_signal->add_option("--out", out_path, "Output WAV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*simulate) {
      const RoomModel room = LoadRoom(room_path);
      const Reflectogram r = Trace(room, Lookup(room.sources, source, "source"),
                                   Lookup(room.receivers, receiver, "receiver"), sim);
      const AmbisonicsIR air = SynthesizeAir(r, sim);
      WriteAir(out_path, air);
      std::cout << "wrote " << out_path << ": " << air.length() << " samples, "
                << air.channels.cols() << " channels, " << r.arrivals.size()
                << " image-source arrivals\n";
    } else if (*decimate) {
      const RoomModel room = LoadRoom(room_path);
      const RoomModel out =
          shoebox ? ToShoebox(room)
                  : Decimate(room, threshold,
                             std::set<std::string>(remove_tags.begin(), remove_tags.end()));
      SaveRoom(out, out_path);
      std::cout << room.polygons.size() << " -> " << out.polygons.size() << " polygons\n";
      for (const std::string& w : out.warnings) std::cerr << "warning: " << w << "\n";
    } else if (*band_reduce) {
      SaveRoom(BandReduceModel(LoadRoom(room_path), bands), out_path);
    } else if (*calibrate) {
      const RoomModel room = LoadRoom(room_path);
      const Vec3 s = Lookup(room.sources, source, "source");
      const Vec3 r = Lookup(room.receivers, receiver, "receiver");
      DecayTarget target;
      target.tolerance = tolerance;
      if (!target_room.empty()) {
        const RoomModel other = LoadRoom(target_room);
        target.t30 = SimulateDecay(other, Lookup(other.sources, source, "source"),
                                   Lookup(other.receivers, receiver, "receiver"), sim)
                         .t30;
      } else if (t30.size() == kNumOctaveBands) {
        target.t30 = Eigen::Map<const BandVector>(t30.data());
      } else {
        throw ValidationError("give --t30 (8 values) or --target-room");
      }
      try {
        const CalibrationResult result = Calibrate(room, target, s, r, sim, max_iters);
        SaveRoom(result.model, out_path);
        if (!report_path.empty()) {
          WriteFile(report_path, CalibrationReportToJson(result.report));
        }
        std::cout << "converged after " << result.report.iterations << " iterations\n";
      } catch (const CalibrationError& e) {
        if (!report_path.empty()) {
          WriteFile(report_path, CalibrationReportToJson(e.report()));
        }
        throw;
      }
    } else if (*render) {
      const RoomModel room = LoadRoom(room_path);
      const Vec3 s = Lookup(room.sources, source, "source");
      const Vec3 r = Lookup(room.receivers, receiver, "receiver");
      const AmbisonicsIR air = ReadAir(air_path);
      double fs = 0.0;
      SceneSource scene;
      scene.label = source;
      scene.anechoic = Mono(anechoic_path, &fs);
      if (fs != air.sample_rate) {
        throw ValidationError("anechoic and AIR sample rates differ");
      }
      const auto arrivals = ImageSources(room, s, r, 0);
      scene.reverb = RemoveDirect(air, arrivals).reverb;
      scene.direction = (s - r).normalized();
      scene.distance = (s - r).norm();
      scene.target_drr = drr;
      const HRIRSet set = Hrirs(hrirs, fs);
      const SceneRender out = RenderScene({scene}, set, yaw_deg * kPi / 180.0,
                                          SpeakerLayout::Dodecahedron(),
                                          room.speed_of_sound, truncate);
      WriteStimulus(out_path, out.stimulus);
      if (!brir_out.empty()) WriteWav(brir_out, out.brirs.begin()->second, fs);
      std::cout << "reverb gain " << out.reverb_gains.begin()->second << "\n";
    } else if (*anchor) {
      WriteAir(out_path, MakeAnchor(ReadAir(air_path), cutoff));
    } else if (*metrics) {
      double fs = 0.0;
      const StereoSignal brir = Stereo(brir_path, &fs);
      double omni_fs = fs;
      const Signal omni = omni_path.empty()
                              ? Signal(brir.rowwise().mean())
                              : Signal(ReadWav(omni_path).samples.col(0));
      if (!omni_path.empty()) omni_fs = ReadWav(omni_path).sample_rate;
      if (omni_fs != fs) throw ValidationError("IR sample rates differ");
      MetricsReport report = AnalyzeResponses(omni, brir, fs);
      if (!stimulus_path.empty()) {
        double sfs = 0.0;
        const StereoSignal x = Stereo(stimulus_path, &sfs);
        Spectrum spectrum = LtaSpectrum(x.col(0), sfs);
        spectrum.power = 0.5 * (spectrum.power + LtaSpectrum(x.col(1), sfs).power);
        if (!spectrum_out.empty()) WriteSpectrumTable(spectrum_out, spectrum);
        if (!reference_path.empty()) {
          double rfs = 0.0;
          const StereoSignal y = Stereo(reference_path, &rfs);
          Spectrum ref = LtaSpectrum(y.col(0), rfs);
          ref.power = 0.5 * (ref.power + LtaSpectrum(y.col(1), rfs).power);
          report.spectral_difference = SpectralDifference(ref, spectrum);
        }
      }
      WriteFile(out_path, MetricsToJson(report));
    } else if (*compare) {
      WriteFile(out_path, ComparisonsToJson(CompareConditions(reference_dir, condition_dir)));
    } else if (*run_plan) {
      ExperimentPlan plan = LoadPlan(plan_path);
      plan.parallel_conditions = plan.parallel_conditions || parallel;
      const auto outcomes = RunPlan(plan, quiet ? nullptr : &std::cerr);
      int failed = 0;
      for (const ConditionOutcome& o : outcomes) {
        std::cout << o.id << ": " << (o.success ? "success" : "failure: " + o.error) << "\n";
        failed += !o.success;
      }
      return failed ? 1 : 0;
    } else if (*serve) {
      RatingServer server(artifacts, csv_path, ui_dir);
      const int bound = server.Bind(host, port);
      g_server = &server;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      std::cout << "serving " << artifacts << " on http://" << host << ":" << bound
                << std::endl;
      server.Run();
      g_server = nullptr;
    } else if (*hrir_synth) {
      SaveHrirSet(out_path, SphericalHeadHrirs(sample_rate, step_deg));
    } else if (*example_room) {
      SaveRoom(SyntheticLivingRoom(), out_path);
    } else if (*example_signal) {
      const Signal x = kind == "speech" ? SyntheticSpeech(sample_rate, seconds, seed)
                                        : SyntheticMusic(sample_rate, seconds, seed);
      WriteWav(out_path, x, sample_rate);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
