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

#include "auralkit/wav.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

namespace auralkit {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint32_t ReadU32(const uint8_t* p) {
  return p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<uint32_t>(p[3]) << 24);
}
uint16_t ReadU16(const uint8_t* p) { return p[0] | (p[1] << 8); }

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xFF);
}
void PutU16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(v & 0xFF);
  out.push_back(v >> 8);
}
void PutTag(std::vector<uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

WavData ReadWav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open WAV file '" + path + "'");
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw ParseError("'" + path + "' is not a RIFF/WAVE file");
  }
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  const uint8_t* data = nullptr;
  size_t data_size = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    const uint32_t size = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    if (body + size > bytes.size()) {
      // Tolerate a truncated final data chunk.
      if (std::memcmp(chunk, "data", 4) != 0) break;
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0 && size >= 16) {
      format = ReadU16(chunk + 8);
      channels = ReadU16(chunk + 10);
      rate = ReadU32(chunk + 12);
      bits = ReadU16(chunk + 22);
      if (format == kFormatExtensible && size >= 40) {
        format = ReadU16(chunk + 8 + 24);
      }
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = chunk + 8;
      data_size = std::min<size_t>(size, bytes.size() - body);
    }
    pos = body + size + (size & 1);
  }
  if (!data || channels == 0 || rate == 0) {
    throw ParseError("'" + path + "': missing fmt or data chunk");
  }
  const size_t sample_bytes = bits / 8;
  const bool supported =
      (format == kFormatPcm && (bits == 16 || bits == 24 || bits == 32)) ||
      (format == kFormatFloat && (bits == 32 || bits == 64));
  if (!supported) {
    throw ParseError("'" + path + "': unsupported sample format " +
                     std::to_string(format) + "/" + std::to_string(bits));
  }
  const size_t frames = data_size / (sample_bytes * channels);
  WavData wav;
  wav.sample_rate = rate;
  wav.samples.resize(frames, channels);
  for (size_t f = 0; f < frames; ++f) {
    for (size_t c = 0; c < channels; ++c) {
      const uint8_t* p = data + (f * channels + c) * sample_bytes;
      double v = 0.0;
      if (format == kFormatFloat && bits == 32) {
        float x;
        std::memcpy(&x, p, 4);
        v = x;
      } else if (format == kFormatFloat) {
        std::memcpy(&v, p, 8);
      } else if (bits == 16) {
        v = static_cast<int16_t>(ReadU16(p)) / 32768.0;
      } else if (bits == 24) {
        int32_t x = p[0] | (p[1] << 8) | (p[2] << 16);
        if (x & 0x800000) x -= 0x1000000;
        v = x / 8388608.0;
      } else {
        v = static_cast<int32_t>(ReadU32(p)) / 2147483648.0;
      }
      wav.samples(f, c) = v;
    }
  }
  return wav;
}

void WriteWav(const std::string& path, const MultiSignal& samples,
              double sample_rate) {
  const uint16_t channels = static_cast<uint16_t>(samples.cols());
  const uint32_t rate = static_cast<uint32_t>(std::lround(sample_rate));
  const bool extensible = channels > 2;
  const uint32_t data_size =
      static_cast<uint32_t>(samples.rows() * channels * 4);
  const uint32_t fmt_size = extensible ? 40 : 16;

  std::vector<uint8_t> out;
  out.reserve(data_size + 80);
  PutTag(out, "RIFF");
  PutU32(out, 4 + 8 + fmt_size + 8 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, fmt_size);
  PutU16(out, extensible ? kFormatExtensible : kFormatFloat);
  PutU16(out, channels);
  PutU32(out, rate);
  PutU32(out, rate * channels * 4);
  PutU16(out, channels * 4);
  PutU16(out, 32);
  if (extensible) {
    PutU16(out, 22);
    PutU16(out, 32);
    PutU32(out, 0);  // no speaker mask for Ambisonics
    // KSDATAFORMAT_SUBTYPE_IEEE_FLOAT
    static const uint8_t kFloatGuid[16] = {0x03, 0x00, 0x00, 0x00, 0x00, 0x00,
                                           0x10, 0x00, 0x80, 0x00, 0x00, 0xAA,
                                           0x00, 0x38, 0x9B, 0x71};
    out.insert(out.end(), kFloatGuid, kFloatGuid + 16);
  }
  PutTag(out, "data");
  PutU32(out, data_size);
  for (Eigen::Index f = 0; f < samples.rows(); ++f) {
    for (Eigen::Index c = 0; c < channels; ++c) {
      const float x = static_cast<float>(samples(f, c));
      uint8_t b[4];
      std::memcpy(b, &x, 4);
      out.insert(out.end(), b, b + 4);
    }
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write WAV file '" + path + "'");
  file.write(reinterpret_cast<const char*>(out.data()), out.size());
}

}  // namespace auralkit
