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

// Seeded sampling of states, unitaries, Hamiltonians and projectors. Every
// draw is a deterministic function of the seed and the call sequence.

#include <cstdint>
#include <random>

#include "qlincert/state.hpp"

namespace qlincert {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_(engine_); }
  bool coin() { return unit_(engine_) < 0.5; }
  Index index(Index n) { return static_cast<Index>(engine_() % static_cast<std::uint64_t>(n)); }

  /// Independent child generator; used to give each sample its own stream.
  Rng split() { return Rng(engine_()); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

/// Complex Gaussian vector with unit variance per real component.
Vector gaussian_vector(Index dim, Rng& rng);

PureState random_pure_state(Index dim, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with the phase fix).
Matrix haar_unitary(Index dim, Rng& rng);

/// GUE-style Hermitian matrix (G + G^dagger) / 2 times scale.
Matrix random_hermitian(Index dim, Rng& rng, double scale = 1.0);

/// Uniform draw from the probability simplex of the given size.
Eigen::VectorXd random_simplex(Index size, Rng& rng);

/// V diag(w) V^dagger with V Haar and w uniform on the simplex.
DensityMatrix random_mixed_state(Index dim, Rng& rng);

/// Pure with probability 1/2, otherwise random_mixed_state.
DensityMatrix random_density(Index dim, Rng& rng);

/// Projector onto a Haar-random subspace of the given rank.
Observable random_projector(Index dim, Index rank, Rng& rng);

}  // namespace qlincert
