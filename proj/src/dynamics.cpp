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

#include "qlincert/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace qlincert {
namespace {

const Complex kMinusI(0.0, -1.0);

Matrix commutator_rate(const Matrix& h, const Matrix& rho) {
  return kMinusI * (h * rho - rho * h);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Runs the integrator, handing every accepted grid point to `sink`.
template <class Sink>
void integrate(const Generator& g, const DensityMatrix& rho0, const IntegrationPlan& plan,
               Sink&& sink) {
  plan.validate();
  if (rho0.dim() != g.dim()) {
    throw DimensionError("evolve: state dimension " + std::to_string(rho0.dim()) +
                         " does not match generator dimension " + std::to_string(g.dim()));
  }
  sink(std::size_t{0}, rho0.matrix());
  if (plan.t_final == 0.0) return;

  const double h = plan.step_size();
  Matrix x = rho0.matrix();
  for (std::size_t step = 1; step <= plan.steps; ++step) {
    const Matrix k1 = g.rate(x);
    const Matrix k2 = g.rate(x + (h / 2.0) * k1);
    const Matrix k3 = g.rate(x + (h / 2.0) * k2);
    const Matrix k4 = g.rate(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x = (x + x.adjoint()).eval() / 2.0;
    if (plan.renormalize) x /= x.trace().real();
    if (!x.allFinite()) throw IntegrationError(step, "state is not finite");
    if (!is_psd_within(x, tol::psd)) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "eigenvalue %.3e below -%.0e (step size too large?)",
                    min_eigenvalue(x), tol::psd);
      throw IntegrationError(step, msg);
    }
    sink(step, x);
  }
}

}  // namespace

Generator Generator::linear(Observable h) { return Generator(Linear{std::move(h)}); }

Generator Generator::mean_field(Observable h0, std::vector<Coupling> couplings) {
  for (const auto& c : couplings) {
    if (c.a.dim() != h0.dim() || c.b.dim() != h0.dim()) {
      throw DimensionError("mean-field coupling operators must match H0 dimension");
    }
    if (!std::isfinite(c.g)) throw PreconditionError("coupling strength must be finite");
  }
  return Generator(MeanField{std::move(h0), std::move(couplings)});
}

Generator Generator::custom(Index dim, RateFunction rate, std::string label) {
  if (dim <= 0) throw PreconditionError("custom generator dimension must be positive");
  if (!rate) throw PreconditionError("custom generator needs a rate function");
  return Generator(Custom{dim, std::move(rate), std::move(label)});
}

Index Generator::dim() const {
  return std::visit(Overloaded{[](const Linear& l) { return l.h.dim(); },
                               [](const MeanField& m) { return m.h0.dim(); },
                               [](const Custom& c) { return c.dim; }},
                    variant_);
}

Matrix Generator::effective_hamiltonian(const Matrix& rho) const {
  return std::visit(
      Overloaded{[](const Linear& l) -> Matrix { return l.h.matrix(); },
                 [&rho](const MeanField& m) -> Matrix {
                   // H0 + sum_k g_k <A_k> B_k; the mean values are re-read from
                   // whatever state the integrator hands in.
                   Matrix h = m.h0.matrix();
                   for (const auto& c : m.couplings) {
                     h += (c.g * mean_value_unchecked(c.a.matrix(), rho)) * c.b.matrix();
                   }
                   return h;
                 },
                 [](const Custom&) -> Matrix {
                   throw PreconditionError("custom generators have no Hamiltonian");
                 }},
      variant_);
}

Matrix Generator::rate(const Matrix& rho) const {
  if (const auto* c = std::get_if<Custom>(&variant_)) {
    Matrix out = c->rate(rho);
    if (out.rows() != c->dim || out.cols() != c->dim) {
      throw DimensionError("custom rate returned a matrix of the wrong shape");
    }
    return out;
  }
  return commutator_rate(effective_hamiltonian(rho), rho);
}

Matrix generator_apply(const Generator& g, const DensityMatrix& rho) {
  if (rho.dim() != g.dim()) throw DimensionError("generator_apply: dimension mismatch");
  Matrix out = g.rate(rho.matrix());
  if (std::holds_alternative<Generator::Custom>(g.variant())) {
    const double scale = std::max(1.0, out.cwiseAbs().maxCoeff());
    if (hermitian_asymmetry(out) > tol::herm * scale ||
        std::abs(out.trace()) > tol::herm * scale) {
      throw InvalidStateError("custom rate is not Hermitian and traceless");
    }
  }
  return out;
}

double observable_rate(const Observable& q, const Generator& g, const DensityMatrix& rho) {
  if (q.dim() != g.dim()) throw DimensionError("observable_rate: dimension mismatch");
  return (q.matrix() * generator_apply(g, rho)).trace().real();
}

void IntegrationPlan::validate() const {
  if (!std::isfinite(t_final) || t_final < 0.0) {
    throw PreconditionError("t_final must be finite and non-negative");
  }
  if (steps < 1) throw PreconditionError("steps must be at least 1");
}

double IntegrationPlan::time_at(std::size_t k) const {
  if (k == steps) return t_final;
  return t_final * static_cast<double>(k) / static_cast<double>(steps);
}

Trajectory evolve(const Generator& g, const DensityMatrix& rho0, const IntegrationPlan& plan) {
  Trajectory traj;
  const std::size_t points = plan.t_final == 0.0 ? 1 : plan.steps + 1;
  traj.times.reserve(points);
  traj.states.reserve(points);
  integrate(g, rho0, plan, [&](std::size_t k, const Matrix& x) {
    traj.times.push_back(plan.t_final == 0.0 ? 0.0 : plan.time_at(k));
    traj.states.push_back(k == 0 ? rho0 : DensityMatrix::assume_valid(x));
  });
  return traj;
}

DensityMatrix evolve_final(const Generator& g, const DensityMatrix& rho0,
                           const IntegrationPlan& plan) {
  Matrix last;
  integrate(g, rho0, plan, [&](std::size_t, const Matrix& x) { last = x; });
  return DensityMatrix::assume_valid(std::move(last));
}

FlowMap::FlowMap(Generator g, IntegrationPlan plan) : g_(std::move(g)), plan_(plan) {
  plan_.validate();
}

FlowMap flow_map(Generator g, IntegrationPlan plan) { return FlowMap(std::move(g), plan); }

}  // namespace qlincert
