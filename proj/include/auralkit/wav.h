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

#ifndef AURALKIT_WAV_H_
#define AURALKIT_WAV_H_

#include <string>

#include "auralkit/common.h"

namespace auralkit {

struct WavData {
  double sample_rate = 0.0;
  MultiSignal samples;  // frames x channels
};

// Reads 16/24/32-bit PCM and 32/64-bit float RIFF WAVE files, including
// WAVE_FORMAT_EXTENSIBLE. Throws ParseError.
WavData ReadWav(const std::string& path);

// Writes 32-bit IEEE float; files with more than two channels use
// WAVE_FORMAT_EXTENSIBLE.
void WriteWav(const std::string& path, const MultiSignal& samples,
              double sample_rate);

}  // namespace auralkit

#endif  // AURALKIT_WAV_H_
