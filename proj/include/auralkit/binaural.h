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

// Hybrid binaural rendering: the direct path through a truncated HRIR,
// the reverberation through Ambisonics decoded on virtual loudspeakers.

#ifndef AURALKIT_BINAURAL_H_
#define AURALKIT_BINAURAL_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "auralkit/common.h"
#include "auralkit/ga_engine.h"

namespace auralkit {

struct HrirEntry {
  Vec3 direction;  // unit, head frame
  Signal left;
  Signal right;
};

struct HRIRSet {
  std::string name;
  double sample_rate = 44100.0;
  std::vector<HrirEntry> entries;

  Eigen::Index length() const {
    return entries.empty() ? 0 : entries.front().left.size();
  }
};

// >= 20 distinct unit directions, equal IR lengths, no point on the sphere
// farther than 30 degrees from an entry. Throws ValidationError.
void ValidateHrirSet(const HRIRSet& set);

// Index of the entry closest in angle; ties go to the lowest index.
int NearestHrir(const HRIRSet& set, const Vec3& direction);

// Rigid spherical head (radius 0.0875 m): single-pole head-shadow filter
// and Woodworth interaural delay, ears on the +y / -y axis. Grid every
// `step_deg` degrees in azimuth and elevation.
HRIRSet SphericalHeadHrirs(double sample_rate, double step_deg = 10.0,
                           Eigen::Index length = 256);

// Directory with "index.txt" ("azimuth_deg elevation_deg file" per line)
// and one two-channel WAV per direction.
HRIRSet LoadHrirSet(const std::string& directory);
void SaveHrirSet(const std::string& directory, const HRIRSet& set);

struct SpeakerLayout {
  std::vector<Vec3> directions;

  // The 20 vertices of a regular dodecahedron.
  static SpeakerLayout Dodecahedron();
};

// Rotates the sound field: a plane wave from d ends up at
// YawPitchRoll(yaw, pitch, roll) * d.
AmbisonicsIR RotateAir(const AmbisonicsIR& air, double yaw, double pitch = 0.0,
                       double roll = 0.0);

// Speakers x channels pseudo-inverse of the transposed sampling matrix, so
// re-encoding the feeds returns the input coefficients. Optional max-rE
// order weighting. Throws ValidationError when the layout is too small or
// the sampling matrix is rank deficient.
Eigen::MatrixXd DecoderMatrix(const SpeakerLayout& layout, int order,
                              bool max_re = false);

// Samples x speakers.
MultiSignal DecodeToSpeakers(const AmbisonicsIR& air,
                             const SpeakerLayout& layout, bool max_re = false);

// Each feed convolved with the HRIR nearest to its speaker, summed per ear.
StereoSignal Binauralize(const AmbisonicsIR& air, const HRIRSet& hrirs,
                         const SpeakerLayout& layout, bool max_re = false);

inline constexpr Eigen::Index kMinDirectTruncation = 158;
inline constexpr Eigen::Index kDirectFadeLength = 16;

// Nearest HRIR, truncated to `truncate` samples with a raised-cosine fade
// over its last 16, scaled by 1 / distance, convolved with `anechoic` and
// delayed by round(distance / c * fs). Truncation below 158 samples needs
// `allow_short_truncation`.
StereoSignal RenderDirect(const Signal& anechoic, const Vec3& direction,
                          double distance, const HRIRSet& hrirs,
                          Eigen::Index truncate,
                          double speed_of_sound = kDefaultSpeedOfSound,
                          bool allow_short_truncation = false);

// Reverb gain g with 10 log10(E_direct / (g^2 E_reverb)) = target_drr.
// Zeroes `reverb` over [onset, onset + window) of `direct`, where the onset
// is the first sample within 20 dB of the direct peak (either ear).
StereoSignal GateReverb(const StereoSignal& direct, const StereoSignal& reverb,
                        double sample_rate, double window = 4.5e-3);

double DrrGain(const StereoSignal& direct, const StereoSignal& reverb,
               double target_drr);

struct BinauralStimulus {
  double sample_rate = 44100.0;
  StereoSignal samples;
  std::string model_id;
  std::string source;
  std::string receiver;
  double head_yaw = 0.0;  // rad
  double reverb_gain = 1.0;
};

// direct + DrrGain(...) * reverb, zero-padded to the longer input.
// Gates the reverb (GateReverb), then scales it to `target_drr`.
BinauralStimulus Mix(const StereoSignal& direct, const StereoSignal& reverb,
                     double target_drr, double sample_rate);

struct SceneSource {
  std::string label;
  Signal anechoic;
  AmbisonicsIR reverb;  // direct sound already removed
  Vec3 direction;       // receiver to source, room frame
  double distance = 1.0;
  // When set, the reverb gain is chosen to reach this DRR on the binaural
  // impulse response; otherwise `reverb_gain` is used as given.
  std::optional<double> target_drr;
  double reverb_gain = 1.0;
};

struct SceneRender {
  BinauralStimulus stimulus;
  std::map<std::string, StereoSignal> brirs;   // per source label
  std::map<std::string, double> reverb_gains;  // per source label
};

// Renders and sums the sources in label order. The listener faces
// `head_yaw` (counter-clockwise from +x): the reverberant field is rotated
// by -head_yaw and so is every direct-path direction.
SceneRender RenderScene(const std::vector<SceneSource>& sources,
                        const HRIRSet& hrirs, double head_yaw,
                        const SpeakerLayout& layout =
                            SpeakerLayout::Dodecahedron(),
                        double speed_of_sound = kDefaultSpeedOfSound,
                        Eigen::Index truncate = -1);

// 32-bit float stereo WAV.
void WriteStimulus(const std::string& path, const BinauralStimulus& stimulus);

}  // namespace auralkit

#endif  // AURALKIT_BINAURAL_H_
