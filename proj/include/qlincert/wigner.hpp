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

// Checks on maps of pure states |psi> -> |psi'>: the purity chain of the
// induced density-matrix map, the half-mixture identity, preservation of
// |<psi|phi>|^2, entropy non-decrease, and classification of the map as
// implemented by a linear (unitary) or antilinear (antiunitary) operator.

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>
#include <vector>

#include "qlincert/dynamics.hpp"

namespace qlincert {

/// Tolerance for comparisons involving maps that may come from integrated
/// flows. Deliberately looser than tol::herm.
inline constexpr double kClassTol = 1e-7;

class PureStateMap {
 public:
  struct Unitary {
    Matrix u;
  };
  /// psi -> U conj(psi).
  struct Antiunitary {
    Matrix u;
  };
  struct Sampled {
    std::vector<std::pair<PureState, PureState>> samples;
  };
  struct BlackBox {
    Index dim;
    std::function<PureState(const PureState&)> fn;
  };
  using Variant = std::variant<Unitary, Antiunitary, Sampled, BlackBox>;

  /// Unitary / Antiunitary require U^dagger U = I within tol::herm.
  static PureStateMap unitary(Matrix u);
  static PureStateMap antiunitary(Matrix u);
  static PureStateMap sampled(std::vector<std::pair<PureState, PureState>> samples);
  static PureStateMap black_box(Index dim, std::function<PureState(const PureState&)> fn);

  /// Pure states evolved under a flow; the image is the leading eigenvector
  /// of Phi(|psi><psi|).
  static PureStateMap from_flow(const FlowMap& flow);

  Index dim() const;
  const Variant& variant() const noexcept { return variant_; }

  /// Image of psi. Sampled maps look psi up among their inputs up to a
  /// global phase; the returned image carries that phase. Throws
  /// PreconditionError when a Sampled map has no matching input.
  PureState operator()(const PureState& psi) const;

 private:
  explicit PureStateMap(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
};

/// rho' = sum_j p_j |psi_j'><psi_j'| over the spectral decomposition of rho.
DensityMatrix map_density(const PureStateMap& map, const DensityMatrix& rho);

struct PurityChain {
  bool ineq_holds = false;  // purity(rho') >= purity(rho) - tol::herm
  double equality_gap = 0.0;
  double purity_before = 0.0;
  double purity_after = 0.0;
};

PurityChain purity_chain_check(const PureStateMap& map, const DensityMatrix& rho);

struct InnerProducts {
  double lhs = 0.0;  // |<psi'|phi'>|^2
  double rhs = 0.0;  // |<psi|phi>|^2
};

InnerProducts half_mixture_invariance(const PureStateMap& map, const PureState& psi,
                                      const PureState& phi);

/// 1/2 |psi><psi| + 1/2 |phi><phi|.
DensityMatrix half_mixture(const PureState& psi, const PureState& phi);

struct EntropyCheck {
  bool purity_ok = false;   // purity(rho') <= purity(rho) + tol::herm
  bool entropy_ok = false;  // S(rho') >= S(rho) - tol::herm
  double delta_purity = 0.0;
  double delta_entropy = 0.0;
};

EntropyCheck entropy_check(const PureStateMap& map, const DensityMatrix& rho);

enum class MapClass { linear, antilinear, neither };

const char* to_string(MapClass c);

struct WignerReport {
  bool purity_preserved = false;
  bool inner_products_preserved = false;
  bool entropy_nondecreasing = false;
  MapClass classification = MapClass::neither;
  double max_violation = 0.0;
  std::size_t pair_count = 0;
  double linear_residual = 0.0;      // probe mismatch against U v
  double antilinear_residual = 0.0;  // probe mismatch against U conj(v)
};

/// Vectors a Sampled map must contain for classification in this dimension:
/// e_0..e_{d-1}, (e_0 + e_j)/sqrt 2 for j >= 1, then (e_0 + i e_1)/sqrt 2.
std::vector<PureState> classification_inputs(Index dim);

/// Checks |<psi'|phi'>|^2 = |<psi|phi>|^2 and the half-mixture purity and
/// entropy identities on `trials` random pairs (all sample pairs for Sampled
/// maps), then reconstructs the operator from images of the basis and
/// pairwise superpositions and decides linear vs antilinear with the probe
/// (e_0 + i e_1)/sqrt 2.
WignerReport classify_unitary_antiunitary(const PureStateMap& map, Index dim, std::size_t trials,
                                          std::uint64_t seed);

}  // namespace qlincert
