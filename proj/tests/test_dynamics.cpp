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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "qlincert/dynamics.hpp"
#include "qlincert/random.hpp"

using namespace qlincert;
using oracle::pauli_x;
using oracle::pauli_y;
using oracle::pauli_z;

namespace {

Generator meanfield_zx() {
  return Generator::mean_field(Observable(Matrix::Zero(2, 2)),
                               {{1.0, Observable(pauli_z()), Observable(pauli_x())}});
}

DensityMatrix plus_state() { return DensityMatrix::from_pure(PureState::normalized(Vector::Ones(2))); }

void check_traceless_hermitian(const Matrix& x) {
  CHECK(hermitian_asymmetry(x) <= tol::herm);
  CHECK(std::abs(x.trace()) <= tol::herm);
}

}  // namespace

TEST_CASE("generator_apply on the linear variant") {
  Rng rng(31);
  const Matrix h = random_hermitian(3, rng);
  const Generator g = Generator::linear(Observable(h));
  // A function of H commutes with H.
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Matrix stationary = es.eigenvectors() * Eigen::Vector3d(0.2, 0.3, 0.5).cast<Complex>().asDiagonal() *
                            es.eigenvectors().adjoint();
  CHECK(generator_apply(g, DensityMatrix((stationary + stationary.adjoint()) / 2.0)).norm() < 1e-12);

  const Matrix rate = generator_apply(Generator::linear(Observable(pauli_z())), plus_state());
  // Bloch oracle: h = z, r = x, h x r = y, so the rate is sigma_y.
  const Matrix expected = oracle::qubit_commutator_rate({0, 0, 1}, {1, 0, 0});
  CHECK(frobenius_distance(rate, expected) < 1e-15);
  CHECK(frobenius_distance(rate, pauli_y()) < 1e-15);
  CHECK(rate.norm() == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(generator_apply(g, DensityMatrix::maximally_mixed(2)), DimensionError);
}

TEST_CASE("generator_apply on the mean-field variant matches the Pauli oracle") {
  const Generator g = meanfield_zx();
  CHECK(generator_apply(g, DensityMatrix::maximally_mixed(2)).norm() == 0.0);

  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = random_density(2, rng);
    const oracle::Bloch r = oracle::bloch_vector(rho.matrix());
    const Matrix rate = generator_apply(g, rho);
    check_traceless_hermitian(rate);
    CHECK(frobenius_distance(rate, oracle::meanfield_zx_rate(1.0, r)) < 1e-14);
  }
}

TEST_CASE("generator output is traceless Hermitian") {
  Rng rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = 2 + trial % 7;
    const Generator lin = Generator::linear(Observable(random_hermitian(d, rng)));
    const Generator mf = Generator::mean_field(
        Observable(random_hermitian(d, rng)),
        {{rng.normal(), Observable(random_hermitian(d, rng)), Observable(random_hermitian(d, rng))},
         {rng.normal(), Observable(random_hermitian(d, rng)), Observable(random_hermitian(d, rng))}});
    const DensityMatrix rho = random_density(d, rng);
    check_traceless_hermitian(generator_apply(lin, rho));
    check_traceless_hermitian(generator_apply(mf, rho));
    // Effective Hamiltonian is Hermitian for every state.
    CHECK(hermitian_asymmetry(mf.effective_hamiltonian(rho.matrix())) < 1e-12);
  }
}

TEST_CASE("observable_rate") {
  Rng rng(34);
  const Generator lin = Generator::linear(Observable(random_hermitian(3, rng)));
  const DensityMatrix rho = random_density(3, rng);
  CHECK(std::abs(observable_rate(Observable::identity(3), lin, rho)) < 1e-13);
  CHECK(std::abs(observable_rate(Observable::identity(2), meanfield_zx(), DensityMatrix::basis_state(2, 0))) <
        1e-15);

  // Q = sigma_z commutes with H = sigma_z and with rho = |0><0|.
  const Generator gz = Generator::linear(Observable(pauli_z()));
  CHECK(std::abs(observable_rate(Observable(pauli_z()), gz, DensityMatrix::basis_state(2, 0))) < 1e-15);

  // Tr[sigma_y (-sigma_y)] = -2; the rate from the Bloch oracle is -sigma_y.
  const Matrix oracle_rate = oracle::meanfield_zx_rate(1.0, {0, 0, 1});
  CHECK(frobenius_distance(oracle_rate, -pauli_y()) < 1e-15);
  CHECK(observable_rate(Observable(pauli_y()), meanfield_zx(), DensityMatrix::basis_state(2, 0)) ==
        doctest::Approx(-2.0));
}

TEST_CASE("custom generator hook") {
  const Matrix h = pauli_x();
  const Generator custom = Generator::custom(2, [h](const Matrix& rho) -> Matrix {
    return Complex(0, -1) * (h * rho - rho * h);
  });
  const Generator lin = Generator::linear(Observable(pauli_x()));
  const DensityMatrix rho = DensityMatrix::basis_state(2, 0);
  CHECK(frobenius_distance(generator_apply(custom, rho), generator_apply(lin, rho)) < 1e-15);
  CHECK_THROWS_AS(custom.effective_hamiltonian(rho.matrix()), PreconditionError);

  const Generator bad = Generator::custom(2, [](const Matrix&) -> Matrix { return Matrix::Identity(2, 2); });
  CHECK_THROWS_AS(generator_apply(bad, rho), InvalidStateError);
}

TEST_CASE("evolve: degenerate and closed-form cases") {
  const Generator gz = Generator::linear(Observable(pauli_z()));
  const DensityMatrix plus = plus_state();

  const Trajectory still = evolve(gz, plus, {0.0, 10, true});
  REQUIRE(still.states.size() == 1);
  CHECK(still.times[0] == 0.0);
  CHECK(frobenius_distance(still.final_state().matrix(), plus.matrix()) == 0.0);

  // Eigenvalue gap 2 gives period pi.
  const Trajectory period = evolve(gz, plus, {std::numbers::pi, 1000, true});
  CHECK(period.states.size() == 1001);
  CHECK(period.times.back() == std::numbers::pi);
  CHECK(frobenius_distance(period.final_state().matrix(), plus.matrix()) < 1e-8);

  Rng rng(35);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 4;
    const Generator g = Generator::linear(Observable(random_hermitian(d, rng)));
    const DensityMatrix rho0 = random_density(d, rng);
    const DensityMatrix out = evolve_final(g, rho0, {1.0, 1000, true});
    CHECK(std::abs(purity(out) - purity(rho0)) < 1e-8);
  }
}

TEST_CASE("evolve matches the matrix-exponential oracle") {
  Rng rng(36);
  for (int trial = 0; trial < 20; ++trial) {
    const Index d = 2 + trial % 7;
    const Matrix h = random_hermitian(d, rng);
    const DensityMatrix rho0 = random_density(d, rng);
    const double t = rng.uniform(0.1, 5.0);
    // Pure inputs pick up negative eigenvalues of order (dt |H|)^5 per step,
    // so the grid is refined with t.
    const auto steps = static_cast<std::size_t>(std::ceil(2000.0 * t));
    const DensityMatrix out = flow_map(Generator::linear(Observable(h)), {t, steps, true})(rho0);
    CHECK(frobenius_distance(out.matrix(), oracle::unitary_conjugation(h, rho0.matrix(), t)) < 1e-8);
  }
}

TEST_CASE("evolve converges at fourth order") {
  Rng rng(37);
  for (int trial = 0; trial < 5; ++trial) {
    const Index d = 2 + trial;
    const Matrix h = random_hermitian(d, rng);
    // Full rank, so coarse steps stay inside the PSD cone.
    const DensityMatrix rho0(0.5 * random_density(d, rng).matrix() + 0.5 * Matrix::Identity(d, d) / double(d));
    const double t = 2.0;
    const Matrix exact = oracle::unitary_conjugation(h, rho0.matrix(), t);
    const Generator g = Generator::linear(Observable(h));
    // Coarse grids keep the error far above round-off.
    const double coarse = frobenius_distance(evolve_final(g, rho0, {t, 50, false}).matrix(), exact);
    const double fine = frobenius_distance(evolve_final(g, rho0, {t, 100, false}).matrix(), exact);
    const double ratio = coarse / fine;
    CHECK(ratio >= 8.0);
    CHECK(ratio <= 32.0);
  }
}

TEST_CASE("trace is conserved without renormalization") {
  Rng rng(38);
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 7;
    const Generator g = trial % 2 == 0
                            ? Generator::linear(Observable(random_hermitian(d, rng)))
                            : Generator::mean_field(Observable(random_hermitian(d, rng)),
                                                    {{0.5, Observable(random_hermitian(d, rng)),
                                                      Observable(random_hermitian(d, rng))}});
    const Trajectory traj = evolve(g, random_density(d, rng), {1.0, 1000, false});
    for (const auto& s : traj.states) CHECK(std::abs(s.matrix().trace() - 1.0) < tol::trace);
  }
}

TEST_CASE("flow maps") {
  Rng rng(39);
  const Generator g = Generator::linear(Observable(random_hermitian(3, rng)));
  const DensityMatrix rho = random_density(3, rng);
  const FlowMap identity = flow_map(g, {0.0, 1, true});
  CHECK(frobenius_distance(identity(rho).matrix(), rho.matrix()) == 0.0);

  // The state-dependent Hamiltonian still moves each pure state unitarily.
  const FlowMap mf = flow_map(meanfield_zx(), {1.0, 1000, true});
  for (int trial = 0; trial < 10; ++trial) {
    const DensityMatrix pure = DensityMatrix::from_pure(random_pure_state(2, rng));
    CHECK(std::abs(purity(mf(pure)) - 1.0) < 1e-8);
  }
  // Closed-form mean-field trajectory of |0>: y = -tanh 2t, z = sech 2t.
  const DensityMatrix out = flow_map(meanfield_zx(), {0.5, 1000, true})(DensityMatrix::basis_state(2, 0));
  const oracle::Bloch r = oracle::bloch_vector(out.matrix());
  CHECK(std::abs(r[0]) < 1e-12);
  CHECK(r[1] == doctest::Approx(-std::tanh(1.0)).epsilon(1e-10));
  CHECK(r[2] == doctest::Approx(1.0 / std::cosh(1.0)).epsilon(1e-10));
}

TEST_CASE("integration failures and plan validation") {
  CHECK_THROWS_AS(IntegrationPlan({-1.0, 10, true}).validate(), PreconditionError);
  CHECK_THROWS_AS(IntegrationPlan({1.0, 0, true}).validate(), PreconditionError);

  // A strong mean-field coupling integrated with one huge step leaves the
  // state cone.
  Rng rng(40);
  const Generator wild = Generator::mean_field(
      Observable(Matrix::Zero(2, 2)), {{50.0, Observable(pauli_z()), Observable(pauli_x())}});
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  const double w[] = {0.95, 0.05};
  try {
    evolve(wild, DensityMatrix::diagonal(w), {10.0, 1, true});
    FAIL("expected an integration failure");
  } catch (const IntegrationError& e) {
    CHECK(e.step() == 1);
  }
  CHECK_NOTHROW(evolve(wild, mixed, {10.0, 1, true}));
  CHECK_THROWS_AS(evolve(wild, DensityMatrix::maximally_mixed(3), {1.0, 1, true}), DimensionError);
}
