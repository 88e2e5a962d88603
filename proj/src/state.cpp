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

#include "qlincert/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qlincert {
namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidStateError(std::string(what) + " must be a nonempty square matrix, got " +
                            std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_dim(Index a, Index b, const char* op) {
  if (a != b) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a) +
                         " vs " + std::to_string(b) + ")");
  }
}

Eigen::VectorXd eigenvalues_of(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

double hermitian_asymmetry(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Matrix& hermitian) { return eigenvalues_of(hermitian).minCoeff(); }

bool is_psd_within(const Matrix& hermitian, double tolerance) {
  // A successful Cholesky factorization of M + tol I settles the common case
  // without a full eigensolve.
  Matrix shifted = hermitian;
  shifted.diagonal().array() += tolerance;
  Eigen::LLT<Matrix> llt(shifted);
  if (llt.info() == Eigen::Success) return true;
  return min_eigenvalue(hermitian) >= -tolerance;
}

// ---------------------------------------------------------------------------
// Observable

Observable::Observable(Matrix m) : matrix_(std::move(m)) {
  require_square(matrix_, "observable");
  const double asym = hermitian_asymmetry(matrix_);
  if (asym > tol::herm * std::max(1.0, matrix_.cwiseAbs().maxCoeff())) {
    throw InvalidStateError("observable is not Hermitian (max asymmetry " + std::to_string(asym) +
                            ")");
  }
}

Observable Observable::projector(Matrix m) {
  Observable q(std::move(m));
  const double idem = (q.matrix_ * q.matrix_ - q.matrix_).cwiseAbs().maxCoeff();
  if (idem > tol::herm) {
    throw InvalidStateError("observable is not a projector (max |P^2 - P| " +
                            std::to_string(idem) + ")");
  }
  q.is_projector_ = true;
  return q;
}

Observable Observable::projector_onto(const Vector& v) {
  const PureState psi = PureState::normalized(v);
  Matrix p = psi.vector() * psi.vector().adjoint();
  // Exact Hermiticity; the outer product can differ from its adjoint by an ulp.
  p = (p + p.adjoint()) / 2.0;
  return projector(std::move(p));
}

Observable Observable::identity(Index dim) {
  return projector(Matrix::Identity(dim, dim));
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Vector v) : vector_(std::move(v)) {
  if (vector_.size() == 0) throw InvalidStateError("pure state must have positive dimension");
  const double norm = vector_.norm();
  if (std::abs(norm - 1.0) > tol::trace) {
    throw InvalidStateError("pure state is not a unit vector (length " + std::to_string(norm) +
                            ")");
  }
}

PureState PureState::normalized(Vector v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidStateError("cannot normalize a zero or non-finite vector");
  }
  return PureState(v / norm);
}

PureState PureState::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw PreconditionError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return PureState(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(Matrix m) : matrix_(std::move(m)) {
  require_square(matrix_, "density matrix");
  const double asym = hermitian_asymmetry(matrix_);
  if (asym > tol::herm) {
    throw InvalidStateError("density matrix is not Hermitian (max asymmetry " +
                            std::to_string(asym) + ")");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::trace) {
    throw InvalidStateError("density matrix trace is " + std::to_string(tr.real()) +
                            ", expected 1");
  }
  if (!is_psd_within(matrix_, tol::psd)) {
    throw InvalidStateError("density matrix has eigenvalue " +
                            std::to_string(min_eigenvalue(matrix_)) + " below -" +
                            std::to_string(tol::psd));
  }
}

DensityMatrix DensityMatrix::assume_valid(Matrix m) { return DensityMatrix(std::move(m), Unchecked{}); }

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  Matrix m = psi.vector() * psi.vector().adjoint();
  m = (m + m.adjoint()) / 2.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim <= 0) throw PreconditionError("dimension must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(Index dim, Index k) {
  return from_pure(PureState::basis(dim, k));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> weights) {
  const auto n = static_cast<Index>(weights.size());
  Matrix m = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = weights[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m));
}

// ---------------------------------------------------------------------------
// Ensemble

Ensemble::Ensemble(std::vector<Branch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw InvalidStateError("ensemble has no branches");
  double total = 0.0;
  for (const auto& b : branches_) {
    if (!(b.weight > 0.0) || b.weight > 1.0 + tol::trace) {
      throw InvalidStateError("ensemble weight " + std::to_string(b.weight) +
                              " outside (0, 1]");
    }
    require_same_dim(b.state.dim(), branches_.front().state.dim(), "ensemble");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > tol::trace) {
    throw InvalidStateError("ensemble weights sum to " + std::to_string(total) + ", expected 1");
  }
}

Ensemble Ensemble::pair(const DensityMatrix& rho1, const DensityMatrix& rho2, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw PreconditionError("mixing weight must lie strictly between 0 and 1");
  }
  return Ensemble({{p, rho1}, {1.0 - p, rho2}});
}

// ---------------------------------------------------------------------------
// BipartiteState

BipartiteState::BipartiteState(DensityMatrix state, Index dim_s, Index dim_r)
    : state_(std::move(state)), dim_s_(dim_s), dim_r_(dim_r) {
  if (dim_s <= 0 || dim_r <= 0 || dim_s * dim_r != state_.dim()) {
    throw DimensionError("bipartite dimensions " + std::to_string(dim_s) + "x" +
                         std::to_string(dim_r) + " do not match state dimension " +
                         std::to_string(state_.dim()));
  }
}

Matrix SpectralDecomposition::reconstruct() const {
  if (pairs.empty()) return Matrix();
  const Index n = pairs.front().vector.dim();
  Matrix m = Matrix::Zero(n, n);
  for (const auto& [w, psi] : pairs) m += w * psi.vector() * psi.vector().adjoint();
  return m;
}

// ---------------------------------------------------------------------------
// Operations

double mean_value(const Observable& q, const DensityMatrix& rho) {
  require_same_dim(q.dim(), rho.dim(), "mean_value");
  const Complex v = (q.matrix() * rho.matrix()).trace();
  const double scale = std::max(1.0, q.matrix().norm());
  if (std::abs(v.imag()) > tol::herm * scale) {
    throw InvalidStateError("mean value has imaginary residue " + std::to_string(v.imag()));
  }
  return v.real();
}

double mean_value_unchecked(const Matrix& q, const Matrix& rho) {
  // Tr[Q rho] = sum_ij Q_ij rho_ji without forming the product.
  return q.cwiseProduct(rho.transpose()).sum().real();
}

DensityMatrix mix(const Ensemble& e) {
  Matrix m = Matrix::Zero(e.dim(), e.dim());
  for (const auto& [w, rho] : e.branches()) m += w * rho.matrix();
  return DensityMatrix(std::move(m));
}

double purity(const DensityMatrix& rho) {
  // Tr[rho^2] = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().squaredNorm();
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const Eigen::VectorXd lambda = eigenvalues_of(rho.matrix());
  double s = 0.0;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) > 0.0) s -= lambda(i) * std::log(lambda(i));
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

BipartiteState tensor_product(const DensityMatrix& rho_s, const DensityMatrix& sigma_r) {
  return BipartiteState(DensityMatrix(kron(rho_s.matrix(), sigma_r.matrix())), rho_s.dim(),
                        sigma_r.dim());
}

Matrix partial_trace_r(const Matrix& m, Index dim_s, Index dim_r) {
  if (m.rows() != dim_s * dim_r || m.cols() != dim_s * dim_r) {
    throw DimensionError("partial trace: matrix does not match factor dimensions");
  }
  Matrix out = Matrix::Zero(dim_s, dim_s);
  for (Index s = 0; s < dim_s; ++s) {
    for (Index t = 0; t < dim_s; ++t) {
      Complex acc = 0.0;
      for (Index r = 0; r < dim_r; ++r) acc += m(s * dim_r + r, t * dim_r + r);
      out(s, t) = acc;
    }
  }
  return out;
}

DensityMatrix partial_trace_r(const BipartiteState& pi) {
  return DensityMatrix(partial_trace_r(pi.matrix(), pi.dim_s(), pi.dim_r()));
}

BipartiteState embed_classical_ancilla(const Ensemble& e) {
  const auto k = static_cast<Index>(e.size());
  if (k < 2) throw PreconditionError("classical ancilla embedding needs at least two branches");
  const Index d = e.dim();
  Matrix m = Matrix::Zero(d * k, d * k);
  for (Index b = 0; b < k; ++b) {
    const auto& [w, rho] = e.branches()[static_cast<std::size_t>(b)];
    Matrix marker = Matrix::Zero(k, k);
    marker(b, b) = 1.0;
    m += w * kron(rho.matrix(), marker);
  }
  return BipartiteState(DensityMatrix(std::move(m)), d, k);
}

BipartiteState embed_classical_ancilla(const DensityMatrix& rho1, const DensityMatrix& rho2,
                                       double p) {
  require_same_dim(rho1.dim(), rho2.dim(), "embed_classical_ancilla");
  if (!(p >= 0.0 && p <= 1.0)) throw PreconditionError("weight p must lie in [0, 1]");
  Matrix alpha = Matrix::Zero(2, 2);
  Matrix beta = Matrix::Zero(2, 2);
  alpha(0, 0) = 1.0;
  beta(1, 1) = 1.0;
  Matrix m = p * kron(rho1.matrix(), alpha) + (1.0 - p) * kron(rho2.matrix(), beta);
  return BipartiteState(DensityMatrix(std::move(m)), rho1.dim(), 2);
}

double joint_probability(const Observable& projector, const BipartiteState& pi,
                         Index ancilla_index) {
  if (!projector.is_projector()) throw PreconditionError("joint_probability needs a projector");
  require_same_dim(projector.dim(), pi.dim_s(), "joint_probability");
  if (ancilla_index < 0 || ancilla_index >= pi.dim_r()) {
    throw PreconditionError("ancilla index " + std::to_string(ancilla_index) + " out of range");
  }
  const Index dr = pi.dim_r();
  const Index k = ancilla_index;
  // Tr[(P (x) |k><k|) Pi] = sum_{s,t} P(s,t) Pi(t*dr + k, s*dr + k)
  Complex acc = 0.0;
  for (Index s = 0; s < pi.dim_s(); ++s) {
    for (Index t = 0; t < pi.dim_s(); ++t) {
      acc += projector.matrix()(s, t) * pi.matrix()(t * dr + k, s * dr + k);
    }
  }
  return acc.real();
}

SpectralDecomposition spectral_decomposition(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix());
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  SpectralDecomposition out;
  // Eigen sorts ascending; walk backwards for decreasing weights.
  for (Index i = values.size() - 1; i >= 0; --i) {
    if (values(i) > tol::rank) {
      out.pairs.push_back({values(i), PureState::normalized(vectors.col(i))});
    }
  }
  return out;
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("frobenius_distance: shape mismatch");
  }
  return (a - b).norm();
}

double trace_distance(const Matrix& rho, const Matrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("trace_distance: shape mismatch");
  }
  Matrix diff = rho - sigma;
  diff = (diff + diff.adjoint()) / 2.0;
  return 0.5 * eigenvalues_of(diff).cwiseAbs().sum();
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.matrix(), sigma.matrix());
}

}  // namespace qlincert
