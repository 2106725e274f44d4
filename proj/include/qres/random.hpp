// Copyright 2026 The qres Authors
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

// Seeded random generators for states, unitaries and isometries.
//
// Every randomized routine takes an explicit engine. `stream(seed, index)`
// derives an independent engine per trial, so results do not depend on the
// order in which trials are scheduled.

#pragma once

#include "qres/states.hpp"

#include <cstdint>
#include <random>

namespace qres {

using Rng = std::mt19937_64;

/// Independent engine for trial `index` under `seed`.
Rng stream(std::uint64_t seed, std::uint64_t index);

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed isometry with `rows >= cols` (orthonormal columns).
Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);

Matrix haar_unitary(Eigen::Index dim, Rng& rng);

/// Random Hermitian matrix (GUE-like, unit scale).
Matrix random_hermitian(Eigen::Index dim, Rng& rng);

/// Haar-random pure state on `dims`.
PureState random_pure(const Dims& dims, Rng& rng);

/// Random density operator of the given rank (Ginibre ensemble).
State random_mixed(const Dims& dims, std::size_t rank, Rng& rng);

/// Random incoherent state (diagonal, Dirichlet-like weights).
State random_diagonal(const Dims& dims, Rng& rng);

/// Random density operator on the symmetric subspace of n qubits.
SymmetricState random_symmetric(std::size_t n, std::size_t rank, Rng& rng);

/// Random state supported on the m-excitation sector of n qubits.
State random_sector_state(std::size_t n, std::size_t m, std::size_t rank, Rng& rng);

}  // namespace qres
