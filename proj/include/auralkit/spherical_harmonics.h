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

// Real spherical harmonics in the AmbiX convention: ACN channel order,
// SN3D normalization, no Condon-Shortley phase. Coordinates are x front,
// y left, z up; azimuth is counter-clockwise from x, elevation up from the
// horizontal plane.

#ifndef AURALKIT_SPHERICAL_HARMONICS_H_
#define AURALKIT_SPHERICAL_HARMONICS_H_

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Geometry>

namespace auralkit {

constexpr int AmbisonicChannelCount(int order) {
  return (order + 1) * (order + 1);
}

constexpr int AcnIndex(int degree, int index) {
  return degree * degree + degree + index;
}

template <typename Scalar>
using ShVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> DirectionFromAngles(Scalar azimuth,
                                                Scalar elevation) {
  using std::cos;
  using std::sin;
  return {cos(elevation) * cos(azimuth), cos(elevation) * sin(azimuth),
          sin(elevation)};
}

// Evaluates all (order + 1)^2 harmonics at a unit direction.
template <typename Scalar>
ShVector<Scalar> ShEncode(const Eigen::Matrix<Scalar, 3, 1>& direction,
                          int order) {
  using std::sqrt;
  const Scalar x = direction.x();
  const Scalar y = direction.y();
  const Scalar z = direction.z();
  const Scalar rho = sqrt(x * x + y * y);  // cos(elevation)
  const Scalar cos_az = rho > Scalar(0) ? x / rho : Scalar(1);
  const Scalar sin_az = rho > Scalar(0) ? y / rho : Scalar(0);

  ShVector<Scalar> out(AmbisonicChannelCount(order));
  // Unnormalized associated Legendre values P_l^m(z) for the current m.
  std::vector<Scalar> legendre(order + 1);
  Scalar pmm = Scalar(1);
  Scalar cos_m = Scalar(1);  // cos(m az)
  Scalar sin_m = Scalar(0);  // sin(m az)
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      pmm *= Scalar(2 * m - 1) * rho;
      const Scalar c = cos_m * cos_az - sin_m * sin_az;
      sin_m = sin_m * cos_az + cos_m * sin_az;
      cos_m = c;
    }
    legendre[m] = pmm;
    if (m + 1 <= order) legendre[m + 1] = z * Scalar(2 * m + 1) * pmm;
    for (int l = m + 2; l <= order; ++l) {
      legendre[l] = (Scalar(2 * l - 1) * z * legendre[l - 1] -
                     Scalar(l + m - 1) * legendre[l - 2]) /
                    Scalar(l - m);
    }
    for (int l = m; l <= order; ++l) {
      // SN3D: sqrt((2 - delta_m0) (l - m)! / (l + m)!)
      Scalar ratio = Scalar(1);
      for (int k = l - m + 1; k <= l + m; ++k) ratio /= Scalar(k);
      const Scalar norm = sqrt((m == 0 ? Scalar(1) : Scalar(2)) * ratio);
      const Scalar base = norm * legendre[l];
      out[AcnIndex(l, m)] = base * cos_m;
      if (m > 0) out[AcnIndex(l, -m)] = base * sin_m;
    }
  }
  return out;
}

// Rows are ShEncode(directions[k]).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> ShSamplingMatrix(
    const std::vector<Eigen::Matrix<Scalar, 3, 1>>& directions, int order) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> y(
      directions.size(), AmbisonicChannelCount(order));
  for (size_t k = 0; k < directions.size(); ++k) {
    y.row(k) = ShEncode(directions[k], order).transpose();
  }
  return y;
}

// The 20 unit-length vertices of a regular dodecahedron: (+-1, +-1, +-1),
// (0, +-1/phi, +-phi), (+-1/phi, +-phi, 0), (+-phi, 0, +-1/phi).
template <typename Scalar = double>
std::vector<Eigen::Matrix<Scalar, 3, 1>> DodecahedronVertices() {
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  const Scalar phi = (Scalar(1) + std::sqrt(Scalar(5))) / Scalar(2);
  const Scalar inv = Scalar(1) / phi;
  std::vector<Vector3> v;
  for (int sx : {-1, 1}) {
    for (int sy : {-1, 1}) {
      for (int sz : {-1, 1}) v.emplace_back(Scalar(sx), Scalar(sy), Scalar(sz));
    }
  }
  for (int s1 : {-1, 1}) {
    for (int s2 : {-1, 1}) {
      v.emplace_back(Scalar(0), s1 * inv, s2 * phi);
      v.emplace_back(s1 * inv, s2 * phi, Scalar(0));
      v.emplace_back(s1 * phi, Scalar(0), s2 * inv);
    }
  }
  for (auto& d : v) d.normalize();
  return v;
}

// Rotation matrix for yaw about z, then pitch about y, then roll about x
// (R = Rz(yaw) Ry(pitch) Rx(roll)).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> YawPitchRoll(Scalar yaw, Scalar pitch,
                                         Scalar roll) {
  using Axis = Eigen::Matrix<Scalar, 3, 1>;
  return (Eigen::AngleAxis<Scalar>(yaw, Axis::UnitZ()) *
          Eigen::AngleAxis<Scalar>(pitch, Axis::UnitY()) *
          Eigen::AngleAxis<Scalar>(roll, Axis::UnitX()))
      .toRotationMatrix();
}

// Block-diagonal matrix M with ShEncode(R d) = M ShEncode(d) for every
// direction d, so a plane wave from d is moved to R d. Each degree block
// is fitted by least squares on a fixed, well-conditioned direction set;
// the fit is exact up to rounding because the blocks are closed under
// rotation.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> ShRotationMatrix(
    const Eigen::Matrix<Scalar, 3, 3>& rotation, int order) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
  const int samples = 2 * AmbisonicChannelCount(order) + 16;
  std::vector<Vector3> original;
  std::vector<Vector3> rotated;
  const Scalar golden = Scalar(3.14159265358979323846) *
                        (Scalar(3) - std::sqrt(Scalar(5)));
  for (int k = 0; k < samples; ++k) {
    const Scalar z = Scalar(1) - Scalar(2 * k + 1) / Scalar(samples);
    const Scalar r = std::sqrt(Scalar(1) - z * z);
    const Vector3 d(r * std::cos(golden * k), r * std::sin(golden * k), z);
    original.push_back(d);
    rotated.push_back(rotation * d);
  }
  const Matrix a = ShSamplingMatrix(original, order);
  const Matrix b = ShSamplingMatrix(rotated, order);
  const int n = AmbisonicChannelCount(order);
  Matrix m = Matrix::Zero(n, n);
  for (int l = 0; l <= order; ++l) {
    const int start = l * l;
    const int width = 2 * l + 1;
    const Matrix block_t = a.middleCols(start, width)
                               .colPivHouseholderQr()
                               .solve(b.middleCols(start, width));
    m.block(start, start, width, width) = block_t.transpose();
  }
  return m;
}

}  // namespace auralkit

#endif  // AURALKIT_SPHERICAL_HARMONICS_H_
