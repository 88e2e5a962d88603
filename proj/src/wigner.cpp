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

#include "qlincert/wigner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qlincert/random.hpp"

namespace qlincert {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Inputs are matched up to a global phase when |<in|psi>| clears this.
constexpr double kMatchOverlap = 1.0 - 1e-9;

void require_unitary(const Matrix& u) {
  if (u.rows() == 0 || u.rows() != u.cols()) throw InvalidStateError("map matrix must be square");
  const double err = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (err > tol::herm) {
    throw InvalidStateError("map matrix is not unitary (max |U^dagger U - I| " +
                            std::to_string(err) + ")");
  }
}

double overlap_sq(const Vector& a, const Vector& b) { return std::norm(a.dot(b)); }

// Makes the first amplitude with modulus above tol::rank real and positive.
Vector gauge_fixed(const Vector& v) {
  for (Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > tol::rank) return v * (std::conj(v(i)) / mag);
  }
  return v;
}

}  // namespace

PureStateMap PureStateMap::unitary(Matrix u) {
  require_unitary(u);
  return PureStateMap(Unitary{std::move(u)});
}

PureStateMap PureStateMap::antiunitary(Matrix u) {
  require_unitary(u);
  return PureStateMap(Antiunitary{std::move(u)});
}

PureStateMap PureStateMap::sampled(std::vector<std::pair<PureState, PureState>> samples) {
  if (samples.empty()) throw InvalidStateError("sampled map has no samples");
  const Index d = samples.front().first.dim();
  for (const auto& [in, out] : samples) {
    if (in.dim() != d || out.dim() != d) {
      throw DimensionError("sampled map entries must share one dimension");
    }
  }
  return PureStateMap(Sampled{std::move(samples)});
}

PureStateMap PureStateMap::black_box(Index dim, std::function<PureState(const PureState&)> fn) {
  if (dim <= 0 || !fn) throw PreconditionError("black-box map needs a dimension and a function");
  return PureStateMap(BlackBox{dim, std::move(fn)});
}

PureStateMap PureStateMap::from_flow(const FlowMap& flow) {
  return black_box(flow.generator().dim(), [flow](const PureState& psi) {
    const DensityMatrix out = flow(DensityMatrix::from_pure(psi));
    return spectral_decomposition(out).pairs.front().vector;
  });
}

Index PureStateMap::dim() const {
  return std::visit(Overloaded{[](const Unitary& m) { return m.u.rows(); },
                               [](const Antiunitary& m) { return m.u.rows(); },
                               [](const Sampled& m) { return m.samples.front().first.dim(); },
                               [](const BlackBox& m) { return m.dim; }},
                    variant_);
}

PureState PureStateMap::operator()(const PureState& psi) const {
  if (psi.dim() != dim()) throw DimensionError("pure-state map: dimension mismatch");
  return std::visit(
      Overloaded{
          [&](const Unitary& m) { return PureState::normalized(m.u * psi.vector()); },
          [&](const Antiunitary& m) {
            return PureState::normalized(m.u * psi.vector().conjugate());
          },
          [&](const Sampled& m) {
            for (const auto& [in, out] : m.samples) {
              const Complex ov = in.vector().dot(psi.vector());
              if (std::abs(ov) >= kMatchOverlap) {
                return PureState::normalized(out.vector() * (ov / std::abs(ov)));
              }
            }
            throw PreconditionError("sampled map is undefined on the requested vector");
          },
          [&](const BlackBox& m) {
            PureState out = m.fn(psi);
            if (out.dim() != m.dim) throw DimensionError("black-box map changed the dimension");
            return out;
          }},
      variant_);
}

DensityMatrix map_density(const PureStateMap& map, const DensityMatrix& rho) {
  if (rho.dim() != map.dim()) throw DimensionError("map_density: dimension mismatch");
  Matrix out = Matrix::Zero(rho.dim(), rho.dim());
  double total = 0.0;
  for (const auto& [w, psi] : spectral_decomposition(rho).pairs) {
    const Vector image = map(psi).vector();
    out += w * image * image.adjoint();
    total += w;
  }
  // Dropped sub-tol::rank eigenvalues leave the weights short of 1 by at most
  // dim * tol::rank.
  out /= total;
  out = (out + out.adjoint()) / 2.0;
  return DensityMatrix(std::move(out));
}

PurityChain purity_chain_check(const PureStateMap& map, const DensityMatrix& rho) {
  PurityChain r;
  r.purity_before = purity(rho);
  r.purity_after = purity(map_density(map, rho));
  r.ineq_holds = r.purity_after >= r.purity_before - tol::herm;
  r.equality_gap = std::abs(r.purity_after - r.purity_before);
  return r;
}

DensityMatrix half_mixture(const PureState& psi, const PureState& phi) {
  if (psi.dim() != phi.dim()) throw DimensionError("half_mixture: dimension mismatch");
  Matrix m = 0.5 * psi.vector() * psi.vector().adjoint() + 0.5 * phi.vector() * phi.vector().adjoint();
  m = (m + m.adjoint()) / 2.0;
  return DensityMatrix(std::move(m));
}

InnerProducts half_mixture_invariance(const PureStateMap& map, const PureState& psi,
                                      const PureState& phi) {
  if (psi.dim() != map.dim() || phi.dim() != map.dim()) {
    throw DimensionError("half_mixture_invariance: dimension mismatch");
  }
  return {overlap_sq(map(psi).vector(), map(phi).vector()), overlap_sq(psi.vector(), phi.vector())};
}

EntropyCheck entropy_check(const PureStateMap& map, const DensityMatrix& rho) {
  const DensityMatrix image = map_density(map, rho);
  EntropyCheck r;
  r.delta_purity = purity(image) - purity(rho);
  r.delta_entropy = von_neumann_entropy(image) - von_neumann_entropy(rho);
  r.purity_ok = r.delta_purity <= tol::herm;
  r.entropy_ok = r.delta_entropy >= -tol::herm;
  return r;
}

const char* to_string(MapClass c) {
  switch (c) {
    case MapClass::linear:
      return "linear";
    case MapClass::antilinear:
      return "antilinear";
    case MapClass::neither:
      return "neither";
  }
  return "neither";
}

std::vector<PureState> classification_inputs(Index dim) {
  if (dim < 2) throw PreconditionError("classification needs dimension >= 2");
  std::vector<PureState> out;
  for (Index k = 0; k < dim; ++k) out.push_back(PureState::basis(dim, k));
  const double s = 1.0 / std::sqrt(2.0);
  for (Index j = 1; j < dim; ++j) {
    Vector v = Vector::Zero(dim);
    v(0) = s;
    v(j) = s;
    out.emplace_back(std::move(v));
  }
  Vector probe = Vector::Zero(dim);
  probe(0) = s;
  probe(1) = Complex(0.0, s);
  out.emplace_back(std::move(probe));
  return out;
}

WignerReport classify_unitary_antiunitary(const PureStateMap& map, Index dim, std::size_t trials,
                                          std::uint64_t seed) {
  if (dim != map.dim()) throw DimensionError("classify: dimension does not match map");
  if (dim < 2) throw PreconditionError("classify: dimension must be >= 2");
  if (trials < static_cast<std::size_t>(dim) + 2) {
    throw PreconditionError("classify: need at least dim + 2 trials");
  }

  // Pair set: every pair of the classification inputs, plus random pairs
  // (or every pair of recorded inputs for a sampled map).
  std::vector<PureState> pool = classification_inputs(dim);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (const auto* s = std::get_if<PureStateMap::Sampled>(&map.variant())) {
    pool.clear();
    for (const auto& [in, out] : s->samples) pool.push_back(in);
    if (pool.size() < static_cast<std::size_t>(dim) + 2) {
      throw PreconditionError("classify: sampled map has fewer than dim + 2 samples");
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      for (std::size_t j = i + 1; j < pool.size(); ++j) pairs.emplace_back(i, j);
    }
  } else {
    const std::size_t fixed = pool.size();
    for (std::size_t i = 0; i < fixed; ++i) {
      for (std::size_t j = i + 1; j < fixed; ++j) pairs.emplace_back(i, j);
    }
    Rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
      pool.push_back(random_pure_state(dim, rng));
      pool.push_back(random_pure_state(dim, rng));
      pairs.emplace_back(pool.size() - 2, pool.size() - 1);
    }
  }

  std::vector<Vector> images;
  images.reserve(pool.size());
  for (const auto& psi : pool) images.push_back(map(psi).vector());

  WignerReport report;
  report.pair_count = pairs.size();
  double inner_violation = 0.0;
  double purity_violation = 0.0;
  double entropy_drop = 0.0;
  for (const auto& [i, j] : pairs) {
    const double before = overlap_sq(pool[i].vector(), pool[j].vector());
    const double after = overlap_sq(images[i], images[j]);
    inner_violation = std::max(inner_violation, std::abs(after - before));

    const DensityMatrix src = half_mixture(pool[i], pool[j]);
    const DensityMatrix img = half_mixture(PureState::normalized(images[i]),
                                           PureState::normalized(images[j]));
    purity_violation = std::max(purity_violation, std::abs(purity(img) - purity(src)));
    entropy_drop = std::max(entropy_drop, von_neumann_entropy(src) - von_neumann_entropy(img));
  }
  report.inner_products_preserved = inner_violation <= kClassTol;
  report.purity_preserved = purity_violation <= kClassTol;
  report.entropy_nondecreasing = entropy_drop <= kClassTol;
  report.max_violation = std::max({inner_violation, purity_violation, entropy_drop, 0.0});

  if (!report.inner_products_preserved) {
    report.classification = MapClass::neither;
    return report;
  }

  // Operator reconstruction from the images of e_k and (e_0 + e_j)/sqrt 2.
  const std::vector<PureState> inputs = classification_inputs(dim);
  Matrix w(dim, dim);
  const Vector c0 = gauge_fixed(map(inputs[0]).vector());
  w.col(0) = c0;
  bool resolved = true;
  for (Index j = 1; j < dim; ++j) {
    const Vector cj = gauge_fixed(map(inputs[static_cast<std::size_t>(j)]).vector());
    const Vector sj = map(inputs[static_cast<std::size_t>(dim + j - 1)]).vector();
    const Complex num = cj.dot(sj);
    const Complex den = c0.dot(sj);
    if (std::abs(num) <= tol::rank || std::abs(den) <= tol::rank) {
      resolved = false;
      break;
    }
    const Complex ratio = num / den;
    w.col(j) = cj * (ratio / std::abs(ratio));
  }

  const Vector probe_image = map(inputs.back()).vector();
  const Complex i_unit(0.0, 1.0);
  const double s = 1.0 / std::sqrt(2.0);
  if (resolved) {
    const Vector lin = s * (w.col(0) + i_unit * w.col(1));
    const Vector anti = s * (w.col(0) - i_unit * w.col(1));
    report.linear_residual = std::max(0.0, 1.0 - overlap_sq(lin, probe_image));
    report.antilinear_residual = std::max(0.0, 1.0 - overlap_sq(anti, probe_image));
  } else {
    report.linear_residual = 1.0;
    report.antilinear_residual = 1.0;
  }

  if (report.linear_residual <= kClassTol) {
    report.classification = MapClass::linear;
    report.max_violation = std::max(report.max_violation, report.linear_residual);
  } else if (report.antilinear_residual <= kClassTol) {
    report.classification = MapClass::antilinear;
    report.max_violation = std::max(report.max_violation, report.antilinear_residual);
  } else {
    // Pairwise checks passed yet the probe fits neither operator; count it
    // as an inner-product failure so the report stays self-consistent.
    report.classification = MapClass::neither;
    report.inner_products_preserved = false;
    report.max_violation = std::max(
        report.max_violation, std::min(report.linear_residual, report.antilinear_residual));
  }
  return report;
}

}  // namespace qlincert
