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

#include "qlincert/signaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qlincert/parallel.hpp"

namespace qlincert {

MeasurementBasis::MeasurementBasis(std::vector<PureState> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw InvalidStateError("measurement basis is empty");
  const Index d = vectors_.front().dim();
  if (static_cast<Index>(vectors_.size()) != d) {
    throw InvalidStateError("measurement basis has " + std::to_string(vectors_.size()) +
                            " vectors for dimension " + std::to_string(d));
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].dim() != d) throw DimensionError("measurement basis vectors differ in length");
    for (std::size_t j = i + 1; j < vectors_.size(); ++j) {
      const double ov = std::abs(vectors_[i].vector().dot(vectors_[j].vector()));
      if (ov > tol::herm) {
        throw InvalidStateError("measurement basis vectors " + std::to_string(i) + " and " +
                                std::to_string(j) + " are not orthogonal (overlap " +
                                std::to_string(ov) + ")");
      }
    }
  }
}

MeasurementBasis MeasurementBasis::computational(Index dim) {
  std::vector<PureState> v;
  for (Index k = 0; k < dim; ++k) v.push_back(PureState::basis(dim, k));
  return MeasurementBasis(std::move(v));
}

MeasurementBasis MeasurementBasis::fourier(Index dim) {
  std::vector<PureState> v;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  for (Index k = 0; k < dim; ++k) {
    Vector col(dim);
    for (Index j = 0; j < dim; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j * k) / static_cast<double>(dim);
      col(j) = norm * Complex(std::cos(angle), std::sin(angle));
    }
    if (dim == 2) {
      // Exact real amplitudes: |+> and |->.
      col(0) = norm;
      col(1) = k == 0 ? norm : -norm;
    }
    v.push_back(PureState::normalized(std::move(col)));
  }
  return MeasurementBasis(std::move(v));
}

MeasurementBasis MeasurementBasis::random(Index dim, Rng& rng) {
  const Matrix u = haar_unitary(dim, rng);
  std::vector<PureState> v;
  for (Index k = 0; k < dim; ++k) v.push_back(PureState::normalized(u.col(k)));
  return MeasurementBasis(std::move(v));
}

ConditionalEnsemble conditional_ensemble(const BipartiteState& pi, const MeasurementBasis& basis) {
  if (basis.dim() != pi.dim_r()) {
    throw DimensionError("conditional_ensemble: basis dimension does not match R");
  }
  const Index ds = pi.dim_s();
  const Index dr = pi.dim_r();
  std::vector<Branch> branches;
  std::vector<std::size_t> outcomes;
  for (std::size_t k = 0; k < basis.vectors().size(); ++k) {
    const Vector& m = basis.vectors()[k].vector();
    // <m|_R Pi |m>_R
    Matrix cond = Matrix::Zero(ds, ds);
    for (Index s = 0; s < ds; ++s) {
      for (Index t = 0; t < ds; ++t) {
        Complex acc = 0.0;
        for (Index r = 0; r < dr; ++r) {
          for (Index q = 0; q < dr; ++q) {
            acc += std::conj(m(r)) * pi.matrix()(s * dr + r, t * dr + q) * m(q);
          }
        }
        cond(s, t) = acc;
      }
    }
    const double pk = cond.trace().real();
    if (pk < tol::rank) continue;
    cond /= pk;
    cond = (cond + cond.adjoint()) / 2.0;
    branches.push_back({pk, DensityMatrix(std::move(cond))});
    outcomes.push_back(k);
  }
  if (branches.empty()) throw InvalidStateError("conditional_ensemble: every outcome has weight 0");
  // Renormalize the weights over the kept outcomes.
  double total = 0.0;
  for (const auto& b : branches) total += b.weight;
  for (auto& b : branches) b.weight /= total;
  ConditionalEnsemble out{Ensemble(std::move(branches)), basis, std::move(outcomes)};
  const double mismatch = frobenius_distance(mix(out.branches).matrix(), partial_trace_r(pi).matrix());
  if (mismatch > tol::recon) {
    throw InvalidStateError("conditional ensemble does not reproduce the reduced state");
  }
  return out;
}

DensityMatrix branch_resolved_average(const Generator& g, const ConditionalEnsemble& e,
                                      const IntegrationPlan& plan) {
  const auto& branches = e.branches.branches();
  std::vector<Matrix> evolved(branches.size());
  parallel_for(branches.size(), [&](std::size_t k) {
    evolved[k] = evolve_final(g, branches[k].state, plan).matrix();
  });
  Matrix out = Matrix::Zero(g.dim(), g.dim());
  for (std::size_t k = 0; k < branches.size(); ++k) out += branches[k].weight * evolved[k];
  return DensityMatrix::assume_valid(std::move(out));
}

PrescriptionComparison prescription_compare(const Generator& g, const ConditionalEnsemble& e,
                                            const IntegrationPlan& plan) {
  DensityMatrix branch = branch_resolved_average(g, e, plan);
  DensityMatrix reduced = evolve_final(g, mix(e.branches), plan);
  const double d = trace_distance(branch, reduced);
  return {std::move(branch), std::move(reduced), d};
}

const char* to_string(Prescription p) {
  return p == Prescription::reduced ? "reduced" : "branch_resolved";
}

std::vector<std::size_t> signaling_sample_indices(const IntegrationPlan& plan) {
  plan.validate();
  if (plan.t_final == 0.0) return {0};
  const std::size_t last = plan.steps;
  if (last + 1 <= kSignalingTimeSamples) {
    std::vector<std::size_t> all(last + 1);
    for (std::size_t i = 0; i <= last; ++i) all[i] = i;
    return all;
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < kSignalingTimeSamples; ++i) {
    idx.push_back((i * last + (kSignalingTimeSamples - 1) / 2) / (kSignalingTimeSamples - 1));
  }
  return idx;
}

namespace {

// Branch-weighted trajectory: sum_k p_k rho_k(t) at every grid point.
std::vector<Matrix> averaged_trajectory(const Generator& g, const ConditionalEnsemble& e,
                                        const IntegrationPlan& plan) {
  const auto& branches = e.branches.branches();
  std::vector<Trajectory> trajs(branches.size());
  parallel_for(branches.size(),
               [&](std::size_t k) { trajs[k] = evolve(g, branches[k].state, plan); });
  const std::size_t points = trajs.front().states.size();
  std::vector<Matrix> out(points, Matrix::Zero(g.dim(), g.dim()));
  for (std::size_t k = 0; k < branches.size(); ++k) {
    for (std::size_t t = 0; t < points; ++t) {
      out[t] += branches[k].weight * trajs[k].states[t].matrix();
    }
  }
  return out;
}

}  // namespace

SignalingReport signaling_measure(const Generator& g, const BipartiteState& pi,
                                  const MeasurementBasis& basis_a,
                                  const MeasurementBasis& basis_b, const IntegrationPlan& plan,
                                  Prescription prescription) {
  if (pi.dim_s() != g.dim()) throw DimensionError("signaling: generator does not act on S");
  const ConditionalEnsemble ea = conditional_ensemble(pi, basis_a);
  const ConditionalEnsemble eb = conditional_ensemble(pi, basis_b);
  const double mismatch =
      frobenius_distance(mix(ea.branches).matrix(), mix(eb.branches).matrix());
  if (mismatch > tol::recon) {
    throw PreconditionError("signaling: the two bases condition on different reduced states");
  }

  SignalingReport report;
  report.prescription = prescription;
  const std::vector<std::size_t> samples = signaling_sample_indices(plan);

  std::vector<double> distances;
  if (prescription == Prescription::reduced) {
    // Both predictions are Phi(rho) for the same rho.
    const std::size_t points = plan.t_final == 0.0 ? 1 : plan.steps + 1;
    distances.assign(points, 0.0);
  } else {
    const auto ta = averaged_trajectory(g, ea, plan);
    const auto tb = averaged_trajectory(g, eb, plan);
    distances.resize(ta.size());
    for (std::size_t t = 0; t < ta.size(); ++t) distances[t] = trace_distance(ta[t], tb[t]);
  }
  for (double d : distances) report.max_distance = std::max(report.max_distance, d);
  for (std::size_t k : samples) {
    report.distance_vs_time.emplace_back(plan.t_final == 0.0 ? 0.0 : plan.time_at(k), distances[k]);
  }
  return report;
}

BipartiteState maximally_entangled(Index dim) {
  if (dim <= 0) throw PreconditionError("dimension must be positive");
  Vector v = Vector::Zero(dim * dim);
  for (Index k = 0; k < dim; ++k) v(k * dim + k) = 1.0;
  return BipartiteState(DensityMatrix::from_pure(PureState::normalized(std::move(v))), dim, dim);
}

}  // namespace qlincert
