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

// Remote-measurement experiment on S (x) R. A projective measurement on R
// in some basis splits the reduced state of S into a conditional ensemble.
// Two bases give two decompositions of the same reduced state. Evolving the
// branches separately under nonlinear dynamics makes the two averages
// distinguishable, which is a signal from R to S.

#include <utility>
#include <vector>

#include "qlincert/dynamics.hpp"
#include "qlincert/random.hpp"

namespace qlincert {

/// Orthonormal basis of the R factor.
class MeasurementBasis {
 public:
  /// Requires dim_R pairwise orthonormal vectors (tol::herm).
  explicit MeasurementBasis(std::vector<PureState> vectors);

  static MeasurementBasis computational(Index dim);
  /// Discrete Fourier basis; for dim 2 this is the Hadamard basis |+>, |->.
  static MeasurementBasis fourier(Index dim);
  static MeasurementBasis random(Index dim, Rng& rng);

  const std::vector<PureState>& vectors() const noexcept { return vectors_; }
  Index dim() const noexcept { return vectors_.front().dim(); }

 private:
  std::vector<PureState> vectors_;
};

struct ConditionalEnsemble {
  Ensemble branches;
  MeasurementBasis source_basis;
  std::vector<std::size_t> outcomes;  // basis index of each kept branch
};

/// p_k = Tr[(I (x) |m_k><m_k|) Pi],
/// rho_k = Tr_R[(I (x) |m_k><m_k|) Pi (I (x) |m_k><m_k|)] / p_k.
/// Outcomes with p_k < tol::rank are dropped.
ConditionalEnsemble conditional_ensemble(const BipartiteState& pi, const MeasurementBasis& basis);

/// sum_k p_k Phi(rho_k).
DensityMatrix branch_resolved_average(const Generator& g, const ConditionalEnsemble& e,
                                      const IntegrationPlan& plan);

struct PrescriptionComparison {
  DensityMatrix branch_resolved;
  DensityMatrix reduced;
  double distance;
};

/// branch-resolved sum_k p_k Phi(rho_k) against reduced Phi(sum_k p_k rho_k).
PrescriptionComparison prescription_compare(const Generator& g, const ConditionalEnsemble& e,
                                            const IntegrationPlan& plan);

enum class Prescription { branch_resolved, reduced };

const char* to_string(Prescription p);

struct SignalingReport {
  std::vector<std::pair<double, double>> distance_vs_time;
  double max_distance = 0.0;  // over every grid point, not only the samples
  Prescription prescription = Prescription::branch_resolved;
};

inline constexpr std::size_t kSignalingTimeSamples = 32;

/// Trace distance between the S states predicted after measuring R in basis
/// A and in basis B, along the integration grid. Throws PreconditionError
/// when the two conditional ensembles do not mix to one reduced state.
SignalingReport signaling_measure(const Generator& g, const BipartiteState& pi,
                                  const MeasurementBasis& basis_a,
                                  const MeasurementBasis& basis_b, const IntegrationPlan& plan,
                                  Prescription prescription = Prescription::branch_resolved);

/// Grid indices reported in distance_vs_time: up to 32 evenly spaced points
/// including both ends.
std::vector<std::size_t> signaling_sample_indices(const IntegrationPlan& plan);

/// sum_k |kk> / sqrt d on C^d (x) C^d, as a density matrix.
BipartiteState maximally_entangled(Index dim);

}  // namespace qlincert
