// Copyright 2026 The qlll Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <span>

#include "qlll/instance.hpp"
#include "qlll/random.hpp"

namespace qlll {

/// Random clauses in the classical k-SAT sense: every clause acts on k
/// distinct qubits and forbids exactly one assignment (rank 1, diagonal).
/// Supports are placed greedily so that every neighborhood has at most
/// `max_neighborhood` members. Deterministic in `seed`.
///
/// Throws InfeasibleLayout when no placement is found after repeated
/// restarts, InvalidArgument for impossible shapes (k > n, k == 0).
Instance generate_classical_instance(std::size_t n, std::size_t k,
                                     std::size_t clause_count,
                                     std::size_t max_neighborhood,
                                     std::uint64_t seed);

/// Conjugates every projector by (x)_q U_q restricted to its support, with
/// one Haar-random 2x2 unitary per qubit drawn from `seed`.
Instance rotate_instance(const Instance &instance, std::uint64_t seed);

/// Same, with caller-provided rotations (one per qubit of the instance).
Instance rotate_instance(const Instance &instance,
                         std::span<const Matrix2> rotations);

/// Haar-distributed element of U(2).
Matrix2 haar_unitary_2x2(Rng &rng);

/// Haar-distributed dim x dim unitary (QR of a complex Ginibre matrix).
Matrix haar_unitary(std::size_t dim, Rng &rng);

/// Projector onto a Haar-random `rank`-dimensional subspace of the support.
ProjectorSpec random_projector(Support support, std::size_t rank, Rng &rng);

enum class RandomFamily {
    diagonal, ///< random forbidden sets
    rotated,  ///< diagonal family conjugated by per-qubit unitaries (commuting)
    generic,  ///< independent random subspaces (generally non-commuting)
};

struct RandomInstanceOptions {
    std::size_t n = 3;
    /// Every projector acts on exactly k qubits.
    std::size_t k = 2;
    std::size_t m = 2;
    /// Ranks are drawn uniformly from [1, max_rank].
    std::size_t max_rank = 1;
    RandomFamily family = RandomFamily::generic;
};

/// Small random instances for exhaustive checks.
Instance generate_random_instance(const RandomInstanceOptions &options,
                                  std::uint64_t seed);

} // namespace qlll
