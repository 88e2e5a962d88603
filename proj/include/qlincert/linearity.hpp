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

// Quantifies mixture linearity of a generator: does the rate (or flow) of
// p rho1 + (1 - p) rho2 equal the p-weighted rates (flows) of the branches?
// Three gaps are measured: at the generator (Frobenius norm), at the flow
// (trace distance) and through the classical-ancilla embedding (largest
// difference of projector probability rates).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlincert/dynamics.hpp"

namespace qlincert {

/// || G(p rho1 + (1-p) rho2) - [p G(rho1) + (1-p) G(rho2)] ||_F, p in (0, 1).
double generator_mixture_gap(const Generator& g, const DensityMatrix& rho1,
                             const DensityMatrix& rho2, double p);

/// The matrix inside the norm of generator_mixture_gap.
Matrix generator_gap_matrix(const Generator& g, const DensityMatrix& rho1,
                            const DensityMatrix& rho2, double p);

/// trace_distance(Phi(p rho1 + (1-p) rho2), p Phi(rho1) + (1-p) Phi(rho2)).
double flow_mixture_gap(const Generator& g, const DensityMatrix& rho1, const DensityMatrix& rho2,
                        double p, const IntegrationPlan& plan);

struct EmbeddingGap {
  double value = 0.0;
  std::size_t argmax = 0;  // index of the maximizing projector
  Matrix projector;        // the maximizing projector itself
};

/// max_P |Tr[P G(rho)] - Tr[P (p G(rho1) + (1-p) G(rho2))]| over the list.
/// Throws PreconditionError for an empty list or a non-projector entry.
EmbeddingGap embedding_rate_gap(const Generator& g, const DensityMatrix& rho1,
                                const DensityMatrix& rho2, double p,
                                std::span<const Observable> projectors);

/// Uses default_probe_projectors(gap matrix).
EmbeddingGap embedding_rate_gap(const Generator& g, const DensityMatrix& rho1,
                                const DensityMatrix& rho2, double p);

/// Rank-1 eigenprojectors of the Hermitian gap matrix followed by the
/// computational-basis projectors. Over rank-1 projectors |Tr[P X]| is
/// maximized at an eigenprojector of X.
std::vector<Observable> default_probe_projectors(const Matrix& gap_matrix);

enum class Verdict { linear, nonlinear, inconclusive };

const char* to_string(Verdict v);

struct SampleInput {
  DensityMatrix rho1;
  DensityMatrix rho2;
  double p;
};

struct SampleResult {
  std::size_t index = 0;
  double p = 0.0;
  double generator_gap = 0.0;
  double flow_gap = 0.0;
  double embedding_gap = 0.0;
  bool degenerate = false;  // rho1 == rho2 within tol::recon
  std::optional<std::string> failure;
};

struct LinearityReport {
  std::vector<SampleResult> samples;
  double generator_gap = 0.0;  // maxima over evaluated samples
  double flow_gap = 0.0;
  double embedding_gap = 0.0;
  std::size_t evaluated = 0;
  std::size_t failed = 0;
  bool coverage_low = false;  // no non-degenerate sample evaluated
  double tolerance = 0.0;
  std::optional<std::uint64_t> seed;
  Verdict verdict = Verdict::inconclusive;
};

inline constexpr double kDefaultLinearityTolerance = 1e-7;

/// linear iff every gap < tol on every evaluated sample and coverage is not
/// low; nonlinear iff some gap > 10 tol; inconclusive otherwise.
Verdict linearity_verdict(double max_gap, double tolerance, bool coverage_low,
                          std::size_t evaluated);

/// Evaluates explicit samples. Integration failures are recorded per sample
/// and the sample is skipped. Samples run concurrently; results are ordered
/// by index.
LinearityReport certify_samples(const Generator& g, std::span<const SampleInput> inputs,
                                const IntegrationPlan& plan,
                                double tolerance = kDefaultLinearityTolerance);

/// The seeded sample set used by certify_linearity. Sample 0 is the
/// computational-basis pair (|0><0|, |1><1|, 1/2); the rest are random
/// states (pure with probability 1/2) with p uniform on [0.1, 0.9].
std::vector<SampleInput> linearity_samples(Index dim, std::size_t samples, std::uint64_t seed);

LinearityReport certify_linearity(const Generator& g, Index dim, std::size_t samples,
                                  const IntegrationPlan& plan, std::uint64_t seed,
                                  double tolerance = kDefaultLinearityTolerance);

}  // namespace qlincert
