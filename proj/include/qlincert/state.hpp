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

// Finite-dimensional state algebra: density matrices, pure states, ensembles,
// bipartite states on S (x) R and the metrics used to compare them.
//
// Bipartite index ordering is S-major: row index = s * dim_R + r.

#include <span>
#include <utility>
#include <vector>

#include "qlincert/types.hpp"

namespace qlincert {

/// Largest absolute entry of A - A^dagger.
double hermitian_asymmetry(const Matrix& a);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& hermitian);

/// True when every eigenvalue of the Hermitian matrix is >= -tolerance.
bool is_psd_within(const Matrix& hermitian, double tolerance);

/// Hermitian operator representing a physical quantity; optionally a projector.
class Observable {
 public:
  /// Throws InvalidStateError unless the matrix is square and Hermitian.
  explicit Observable(Matrix m);

  /// Same as the constructor, additionally requiring P^2 = P.
  static Observable projector(Matrix m);

  /// Rank-1 projector onto the normalized direction of v.
  static Observable projector_onto(const Vector& v);

  static Observable identity(Index dim);

  const Matrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }
  bool is_projector() const noexcept { return is_projector_; }

 private:
  Matrix matrix_;
  bool is_projector_ = false;
};

/// Unit vector in C^dim.
class PureState {
 public:
  /// Throws InvalidStateError unless |v| = 1 within tol::trace.
  explicit PureState(Vector v);

  /// Scales v to unit length; throws on a zero vector.
  static PureState normalized(Vector v);

  static PureState basis(Index dim, Index k);

  const Vector& vector() const noexcept { return vector_; }
  Index dim() const noexcept { return vector_.size(); }

 private:
  Vector vector_;
};

/// Hermitian, positive-semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (tol::herm), trace (tol::trace) and PSD (tol::psd).
  explicit DensityMatrix(Matrix m);

  /// Skips validation. The caller must already have established the
  /// invariants (used by integrators that check them with their own policy).
  static DensityMatrix assume_valid(Matrix m);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix basis_state(Index dim, Index k);
  static DensityMatrix diagonal(std::span<const double> weights);

  const Matrix& matrix() const noexcept { return matrix_; }
  Index dim() const noexcept { return matrix_.rows(); }

 private:
  struct Unchecked {};
  DensityMatrix(Matrix m, Unchecked) : matrix_(std::move(m)) {}

  Matrix matrix_;
};

struct Branch {
  double weight;
  DensityMatrix state;
};

/// Weighted list of separately prepared states (a proper mixture).
class Ensemble {
 public:
  /// Requires a nonempty list, weights in (0, 1] summing to 1 within
  /// tol::trace, and one shared dimension.
  explicit Ensemble(std::vector<Branch> branches);

  /// Two-branch ensemble {(p, rho1), (1 - p, rho2)}; p must lie in (0, 1).
  static Ensemble pair(const DensityMatrix& rho1, const DensityMatrix& rho2, double p);

  const std::vector<Branch>& branches() const noexcept { return branches_; }
  std::size_t size() const noexcept { return branches_.size(); }
  Index dim() const noexcept { return branches_.front().state.dim(); }

 private:
  std::vector<Branch> branches_;
};

/// Density matrix on S (x) R with the factor dimensions recorded.
class BipartiteState {
 public:
  BipartiteState(DensityMatrix state, Index dim_s, Index dim_r);

  const DensityMatrix& state() const noexcept { return state_; }
  const Matrix& matrix() const noexcept { return state_.matrix(); }
  Index dim_s() const noexcept { return dim_s_; }
  Index dim_r() const noexcept { return dim_r_; }

 private:
  DensityMatrix state_;
  Index dim_s_;
  Index dim_r_;
};

struct SpectralPair {
  double weight;
  PureState vector;
};

/// Eigen-decomposition rho = sum_j p_j |psi_j><psi_j| with p_j > tol::rank,
/// ordered by decreasing weight.
struct SpectralDecomposition {
  std::vector<SpectralPair> pairs;

  Matrix reconstruct() const;
};

/// Tr[Q rho]. Throws DimensionError on mismatch and InvalidStateError when
/// the imaginary residue is not negligible.
double mean_value(const Observable& q, const DensityMatrix& rho);

/// Tr[Q rho] for a raw matrix, real part only. For integrator substages.
double mean_value_unchecked(const Matrix& q, const Matrix& rho);

DensityMatrix mix(const Ensemble& e);

double purity(const DensityMatrix& rho);

/// -sum lambda ln lambda over the spectrum, with 0 ln 0 := 0.
double von_neumann_entropy(const DensityMatrix& rho);

/// Kronecker product of raw matrices in S-major order.
Matrix kron(const Matrix& a, const Matrix& b);

BipartiteState tensor_product(const DensityMatrix& rho_s, const DensityMatrix& sigma_r);

Matrix partial_trace_r(const Matrix& m, Index dim_s, Index dim_r);
DensityMatrix partial_trace_r(const BipartiteState& pi);

/// sum_k p_k rho_k (x) |k><k| on a dim-k ancilla; needs at least two branches.
BipartiteState embed_classical_ancilla(const Ensemble& e);

/// p rho1 (x) |alpha><alpha| + (1 - p) rho2 (x) |beta><beta| for p in [0, 1].
BipartiteState embed_classical_ancilla(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                       double p);

/// Tr[(P (x) |k><k|) Pi]: joint probability of P on S and ancilla outcome k.
double joint_probability(const Observable& projector, const BipartiteState& pi,
                         Index ancilla_index);

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// 1/2 sum |eigenvalues of (rho - sigma)|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const Matrix& rho, const Matrix& sigma);

}  // namespace qlincert
