// Copyright 2026 The qlincert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Test-only reference computations, independent of the library code paths
// they are used to check.

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "qlincert/random.hpp"
#include "qlincert/state.hpp"

namespace oracle {

using qlincert::Complex;
using qlincert::Matrix;
using Bloch = std::array<double, 3>;

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// rho = (I + r . sigma) / 2 written out entry by entry.
inline Matrix qubit_from_bloch(const Bloch& r) {
  Matrix m(2, 2);
  m << Complex(0.5 * (1 + r[2]), 0), Complex(0.5 * r[0], -0.5 * r[1]),
      Complex(0.5 * r[0], 0.5 * r[1]), Complex(0.5 * (1 - r[2]), 0);
  return m;
}

/// (x, y, z) read off a 2x2 Hermitian matrix X = (a I + v . sigma): returns v.
inline Bloch pauli_components(const Matrix& x) {
  return {x(0, 1).real(), -x(0, 1).imag(), 0.5 * (x(0, 0).real() - x(1, 1).real())};
}

/// Bloch vector r of rho = (I + r . sigma) / 2.
inline Bloch bloch_vector(const Matrix& rho) {
  const Bloch v = pauli_components(rho);
  return {2 * v[0], 2 * v[1], 2 * v[2]};
}

inline Bloch cross(const Bloch& a, const Bloch& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Pauli-commutator identity: for H = h0 I + h . sigma and
/// rho = (I + r . sigma)/2, -i[H, rho] = (h x r) . sigma.
inline Matrix qubit_commutator_rate(const Bloch& h, const Bloch& r) {
  const Bloch c = cross(h, r);
  Matrix m(2, 2);
  m << Complex(c[2], 0), Complex(c[0], -c[1]), Complex(c[0], c[1]), Complex(-c[2], 0);
  return m;
}

/// Mean-field qubit example H(rho) = g <sigma_z> sigma_x: h = (g z, 0, 0).
inline Matrix meanfield_zx_rate(double g, const Bloch& r) {
  return qubit_commutator_rate({g * r[2], 0.0, 0.0}, r);
}

/// Closed form for the mean-field example with g = 1 starting on the z
/// axis: x stays 0, dy/dt = -2 z^2 = -2 (1 - y^2), so y(t) = -tanh(2t) for
/// both |0> and |1>; the branch average has Bloch vector (0, -tanh 2t, 0)
/// while I/2 is stationary. Trace distance is |r|/2.
inline double meanfield_branch_distance(double t) { return std::tanh(2.0 * t) / 2.0; }

/// exp(-i H t) rho exp(i H t) via Pade scaling-and-squaring.
inline Matrix unitary_conjugation(const Matrix& h, const Matrix& rho, double t) {
  const Matrix u = (Complex(0.0, -t) * h).exp();
  return u * rho * u.adjoint();
}

/// Entropy from a closed-form spectrum.
inline double shannon(std::initializer_list<double> ps) {
  double s = 0.0;
  for (double p : ps) {
    if (p > 0) s -= p * std::log(p);
  }
  return s;
}

}  // namespace oracle
