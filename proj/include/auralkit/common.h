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

#ifndef AURALKIT_COMMON_H_
#define AURALKIT_COMMON_H_

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace auralkit {

using Vec3 = Eigen::Vector3d;

// Mono signal and multichannel buffers. Multichannel buffers are
// samples x channels so every channel is a contiguous column.
using Signal = Eigen::VectorXd;
using MultiSignal = Eigen::MatrixXd;
using StereoSignal = Eigen::Matrix<double, Eigen::Dynamic, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kDefaultSpeedOfSound = 343.0;
inline constexpr int kNumOctaveBands = 8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input documents (room files, plans, WAV headers).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace auralkit

#endif  // AURALKIT_COMMON_H_
