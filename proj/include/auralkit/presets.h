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

#ifndef AURALKIT_PRESETS_H_
#define AURALKIT_PRESETS_H_

#include <cstdint>

#include "auralkit/geometry.h"

namespace auralkit {

// A furnished 5.4 x 4.6 x 2.85 m living room (about 71 m^3): window and
// door set into the walls, furniture boxes, and small detail panels 1 cm
// proud of the surfaces. Sources "A0", "A1", "A2" at one end; receivers
// "P1" (near), "P2", "P3" (far) along the room.
RoomModel SyntheticLivingRoom();

// Speech-like test signal: pink-tilted noise gated by a ~4 Hz syllabic
// envelope with pauses. Peak-normalized to 0.5.
Signal SyntheticSpeech(double sample_rate, double seconds, uint64_t seed);

// Harmonic tones with decaying envelopes over a noise floor.
// Peak-normalized to 0.5.
Signal SyntheticMusic(double sample_rate, double seconds, uint64_t seed);

}  // namespace auralkit

#endif  // AURALKIT_PRESETS_H_
