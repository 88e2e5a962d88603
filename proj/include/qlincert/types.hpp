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

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qlincert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr const char* kVersion = "0.1.0";

// Numerical tolerances shared by every module. Double-precision spectral
// work on matrices of dimension <= 16 sits comfortably inside these.
namespace tol {
inline constexpr double herm = 1e-10;   // Hermiticity and orthonormality
inline constexpr double trace = 1e-10;  // unit trace and unit length
inline constexpr double psd = 1e-9;     // smallest admissible eigenvalue is -psd
inline constexpr double recon = 1e-9;   // reconstruction of decompositions
inline constexpr double rank = 1e-12;   // eigenvalues at or below are dropped
}  // namespace tol

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of incompatible dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A value failed the invariants of the type it was supposed to become.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  IntegrationError(std::size_t step, const std::string& what)
      : Error("integration failed at step " + std::to_string(step) + ": " + what), step_(step) {}

  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

}  // namespace qlincert
