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

#include "qlll/constants.hpp"
#include "qlll/linalg.hpp"
#include "qlll/projector.hpp"
#include "qlll/random.hpp"

namespace qlll {

/// Result of measuring {P, 1 - P}.
struct Outcome {
    /// True when the state was projected onto the range of P.
    bool violated = false;
    /// Born probability of the violated branch, clamped to [0, 1].
    double probability = 0.0;
};

/// Pure-state unraveling: the maximally mixed register is represented by a
/// uniformly random basis state, and replacement by measure-then-reset.
/// Owns its random stream.
class TrajectoryState {
  public:
    /// Throws DimensionTooLarge when n exceeds qubit_cap.
    static TrajectoryState fully_mixed(std::size_t n, std::uint64_t seed,
                                       std::size_t qubit_cap =
                                           kDefaultTrajectoryQubitCap);
    /// Takes a normalized state vector of length 2^n.
    static TrajectoryState from_amplitudes(Vector amplitudes, std::uint64_t seed);

    std::size_t num_qubits() const { return n_; }
    const Vector &amplitudes() const { return psi_; }
    double norm() const { return psi_.norm(); }
    Rng &rng() { return rng_; }

    Outcome measure(const ProjectorSpec &projector);
    /// Measures each support qubit in the computational basis, discards the
    /// result and resets it to a fresh uniformly random bit.
    void replace_qubits(std::span<const std::size_t> support);
    double expectation(const ProjectorSpec &projector) const;

  private:
    TrajectoryState(std::size_t n, Vector psi, std::uint64_t seed)
        : n_(n), psi_(std::move(psi)), rng_(seed) {}

    std::size_t n_;
    Vector psi_;
    Rng rng_;
};

} // namespace qlll
