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

// Generators of motion rho -> d rho/dt, a fixed-step fourth-order integrator
// and flow maps over a time interval. Units: hbar = 1, dimensionless time.

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "qlincert/state.hpp"

namespace qlincert {

/// g * <A>_rho * B term of a mean-field Hamiltonian.
struct Coupling {
  double g;
  Observable a;
  Observable b;
};

/// User-supplied rate function. Receives a Hermitian unit-trace matrix (which
/// may be an intermediate integrator stage) and returns d rho/dt.
using RateFunction = std::function<Matrix(const Matrix&)>;

class Generator {
 public:
  struct Linear {
    Observable h;
  };
  struct MeanField {
    Observable h0;
    std::vector<Coupling> couplings;
  };
  struct Custom {
    Index dim;
    RateFunction rate;
    std::string label;
  };
  using Variant = std::variant<Linear, MeanField, Custom>;

  /// d rho/dt = -i[H, rho].
  static Generator linear(Observable h);

  /// d rho/dt = -i[H(rho), rho] with H(rho) = H0 + sum_k g_k <A_k> B_k.
  static Generator mean_field(Observable h0, std::vector<Coupling> couplings);

  /// Black-box hook. The returned rate must be Hermitian and traceless.
  static Generator custom(Index dim, RateFunction rate, std::string label = "custom");

  Index dim() const;
  const Variant& variant() const noexcept { return variant_; }
  bool is_linear() const noexcept { return std::holds_alternative<Linear>(variant_); }

  /// H(rho) for Linear and MeanField; throws PreconditionError for Custom.
  Matrix effective_hamiltonian(const Matrix& rho) const;

  /// d rho/dt on a raw matrix; no validation of the argument.
  Matrix rate(const Matrix& rho) const;

 private:
  explicit Generator(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
};

/// d rho/dt for a validated state. Hermitian and traceless by construction.
Matrix generator_apply(const Generator& g, const DensityMatrix& rho);

/// d<Q>/dt = Tr[Q d rho/dt].
double observable_rate(const Observable& q, const Generator& g, const DensityMatrix& rho);

struct IntegrationPlan {
  double t_final = 0.0;
  std::size_t steps = 1;
  bool renormalize = true;

  /// Throws PreconditionError for negative or non-finite t_final or steps == 0.
  void validate() const;
  double step_size() const { return t_final / static_cast<double>(steps); }
  /// Time of grid point k (exact at k == steps).
  double time_at(std::size_t k) const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;

  const DensityMatrix& final_state() const { return states.back(); }
};

/// Classical RK4 with fixed step. After each step the Hermitian part is
/// kept, the trace is rescaled to 1 when plan.renormalize is set, and the
/// state is checked for positivity (IntegrationError on violation).
///
/// t_final == 0 yields the single-point trajectory {rho0}; otherwise
/// steps + 1 points.
Trajectory evolve(const Generator& g, const DensityMatrix& rho0, const IntegrationPlan& plan);

/// Same integration, keeping only the final state.
DensityMatrix evolve_final(const Generator& g, const DensityMatrix& rho0,
                           const IntegrationPlan& plan);

/// rho -> final state of evolve(g, rho, plan).
class FlowMap {
 public:
  FlowMap(Generator g, IntegrationPlan plan);

  DensityMatrix operator()(const DensityMatrix& rho) const { return evolve_final(g_, rho, plan_); }

  const Generator& generator() const noexcept { return g_; }
  const IntegrationPlan& plan() const noexcept { return plan_; }

 private:
  Generator g_;
  IntegrationPlan plan_;
};

FlowMap flow_map(Generator g, IntegrationPlan plan);

}  // namespace qlincert
