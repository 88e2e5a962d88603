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

#include "qlincert/random.hpp"

#include <cmath>

namespace qlincert {

Vector gaussian_vector(Index dim, Rng& rng) {
  Vector v(dim);
  for (Index i = 0; i < dim; ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v;
}

PureState random_pure_state(Index dim, Rng& rng) {
  return PureState::normalized(gaussian_vector(dim, rng));
}

Matrix haar_unitary(Index dim, Rng& rng) {
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) g.col(j) = gaussian_vector(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

Matrix random_hermitian(Index dim, Rng& rng, double scale) {
  Matrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) g.col(j) = gaussian_vector(dim, rng);
  return scale * (g + g.adjoint()) / 2.0;
}

Eigen::VectorXd random_simplex(Index size, Rng& rng) {
  Eigen::VectorXd w(size);
  for (Index i = 0; i < size; ++i) w(i) = -std::log(1.0 - rng.uniform(0.0, 1.0));
  return w / w.sum();
}

DensityMatrix random_mixed_state(Index dim, Rng& rng) {
  const Matrix v = haar_unitary(dim, rng);
  const Eigen::VectorXd w = random_simplex(dim, rng);
  Matrix m = v * w.cast<Complex>().asDiagonal() * v.adjoint();
  m = (m + m.adjoint()) / 2.0;
  m /= m.trace().real();
  return DensityMatrix(std::move(m));
}

DensityMatrix random_density(Index dim, Rng& rng) {
  if (rng.coin()) return DensityMatrix::from_pure(random_pure_state(dim, rng));
  return random_mixed_state(dim, rng);
}

Observable random_projector(Index dim, Index rank, Rng& rng) {
  if (rank < 0 || rank > dim) throw PreconditionError("projector rank out of range");
  const Matrix v = haar_unitary(dim, rng).leftCols(rank);
  Matrix p = v * v.adjoint();
  p = (p + p.adjoint()) / 2.0;
  return Observable::projector(std::move(p));
}

}  // namespace qlincert
