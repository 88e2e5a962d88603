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

#include "qlincert/linearity.hpp"

#include <algorithm>
#include <cmath>

#include "qlincert/parallel.hpp"
#include "qlincert/random.hpp"

namespace qlincert {
namespace {

void check_pair(const Generator& g, const DensityMatrix& rho1, const DensityMatrix& rho2,
                double p) {
  if (rho1.dim() != g.dim() || rho2.dim() != g.dim()) {
    throw DimensionError("mixture gap: state and generator dimensions differ");
  }
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("mixing weight must lie in (0, 1)");
}

DensityMatrix mixture(const DensityMatrix& rho1, const DensityMatrix& rho2, double p) {
  return mix(Ensemble::pair(rho1, rho2, p));
}

}  // namespace

Matrix generator_gap_matrix(const Generator& g, const DensityMatrix& rho1,
                            const DensityMatrix& rho2, double p) {
  check_pair(g, rho1, rho2, p);
  const Matrix of_mix = generator_apply(g, mixture(rho1, rho2, p));
  const Matrix mix_of = p * generator_apply(g, rho1) + (1.0 - p) * generator_apply(g, rho2);
  return of_mix - mix_of;
}

double generator_mixture_gap(const Generator& g, const DensityMatrix& rho1,
                             const DensityMatrix& rho2, double p) {
  return generator_gap_matrix(g, rho1, rho2, p).norm();
}

double flow_mixture_gap(const Generator& g, const DensityMatrix& rho1, const DensityMatrix& rho2,
                        double p, const IntegrationPlan& plan) {
  check_pair(g, rho1, rho2, p);
  const Matrix of_mix = evolve_final(g, mixture(rho1, rho2, p), plan).matrix();
  const Matrix mix_of = p * evolve_final(g, rho1, plan).matrix() +
                        (1.0 - p) * evolve_final(g, rho2, plan).matrix();
  return trace_distance(of_mix, mix_of);
}

EmbeddingGap embedding_rate_gap(const Generator& g, const DensityMatrix& rho1,
                                const DensityMatrix& rho2, double p,
                                std::span<const Observable> projectors) {
  if (projectors.empty()) throw PreconditionError("embedding_rate_gap needs projectors");
  for (const auto& proj : projectors) {
    if (!proj.is_projector()) throw PreconditionError("embedding_rate_gap: non-projector in list");
    if (proj.dim() != g.dim()) throw DimensionError("embedding_rate_gap: projector dimension");
  }
  // Tr[P G(rho)] - Tr[P mix of rates] = Tr[P X] for the gap matrix X.
  const Matrix x = generator_gap_matrix(g, rho1, rho2, p);
  EmbeddingGap best;
  best.value = -1.0;
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const double v = std::abs(mean_value_unchecked(projectors[i].matrix(), x));
    if (v > best.value) {
      best.value = v;
      best.argmax = i;
      best.projector = projectors[i].matrix();
    }
  }
  return best;
}

EmbeddingGap embedding_rate_gap(const Generator& g, const DensityMatrix& rho1,
                                const DensityMatrix& rho2, double p) {
  const auto projectors = default_probe_projectors(generator_gap_matrix(g, rho1, rho2, p));
  return embedding_rate_gap(g, rho1, rho2, p, projectors);
}

std::vector<Observable> default_probe_projectors(const Matrix& gap_matrix) {
  const Index d = gap_matrix.rows();
  const Matrix herm = (gap_matrix + gap_matrix.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  std::vector<Observable> out;
  out.reserve(static_cast<std::size_t>(2 * d));
  for (Index j = 0; j < d; ++j) out.push_back(Observable::projector_onto(solver.eigenvectors().col(j)));
  for (Index k = 0; k < d; ++k) out.push_back(Observable::projector_onto(Vector::Unit(d, k)));
  return out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::linear:
      return "linear";
    case Verdict::nonlinear:
      return "nonlinear";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

Verdict linearity_verdict(double max_gap, double tolerance, bool coverage_low,
                          std::size_t evaluated) {
  if (evaluated == 0) return Verdict::inconclusive;
  if (max_gap > 10.0 * tolerance) return Verdict::nonlinear;
  if (max_gap < tolerance && !coverage_low) return Verdict::linear;
  return Verdict::inconclusive;
}

LinearityReport certify_samples(const Generator& g, std::span<const SampleInput> inputs,
                                const IntegrationPlan& plan, double tolerance) {
  if (inputs.empty()) throw PreconditionError("certification needs at least one sample");
  if (!(tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
  plan.validate();

  LinearityReport report;
  report.tolerance = tolerance;
  report.samples.resize(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t i) {
    const auto& in = inputs[i];
    SampleResult& r = report.samples[i];
    r.index = i;
    r.p = in.p;
    r.degenerate = trace_distance(in.rho1, in.rho2) <= tol::recon;
    try {
      r.generator_gap = generator_mixture_gap(g, in.rho1, in.rho2, in.p);
      r.embedding_gap = embedding_rate_gap(g, in.rho1, in.rho2, in.p).value;
      r.flow_gap = flow_mixture_gap(g, in.rho1, in.rho2, in.p, plan);
    } catch (const IntegrationError& e) {
      r.failure = e.what();
    }
  });

  bool any_informative = false;
  for (const auto& r : report.samples) {
    if (r.failure) {
      ++report.failed;
      continue;
    }
    ++report.evaluated;
    any_informative = any_informative || !r.degenerate;
    report.generator_gap = std::max(report.generator_gap, r.generator_gap);
    report.flow_gap = std::max(report.flow_gap, r.flow_gap);
    report.embedding_gap = std::max(report.embedding_gap, r.embedding_gap);
  }
  report.coverage_low = !any_informative;
  const double worst = std::max({report.generator_gap, report.flow_gap, report.embedding_gap});
  report.verdict = linearity_verdict(worst, tolerance, report.coverage_low, report.evaluated);
  return report;
}

std::vector<SampleInput> linearity_samples(Index dim, std::size_t samples, std::uint64_t seed) {
  if (dim < 2) throw PreconditionError("certification needs dimension >= 2");
  if (samples < 1) throw PreconditionError("samples must be >= 1");
  std::vector<SampleInput> out;
  out.reserve(samples);
  out.push_back({DensityMatrix::basis_state(dim, 0), DensityMatrix::basis_state(dim, 1), 0.5});
  Rng rng(seed);
  while (out.size() < samples) {
    Rng local = rng.split();
    DensityMatrix rho1 = random_density(dim, local);
    DensityMatrix rho2 = random_density(dim, local);
    const double p = local.uniform(0.1, 0.9);
    out.push_back({std::move(rho1), std::move(rho2), p});
  }
  return out;
}

LinearityReport certify_linearity(const Generator& g, Index dim, std::size_t samples,
                                  const IntegrationPlan& plan, std::uint64_t seed,
                                  double tolerance) {
  if (dim != g.dim()) throw DimensionError("certify_linearity: dimension does not match generator");
  const auto inputs = linearity_samples(dim, samples, seed);
  LinearityReport report = certify_samples(g, inputs, plan, tolerance);
  report.seed = seed;
  return report;
}

}  // namespace qlincert
