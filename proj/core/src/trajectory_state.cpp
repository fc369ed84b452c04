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

#include "qlll/trajectory_state.hpp"

#include <algorithm>
#include <cmath>

#include "qlll/errors.hpp"

namespace qlll {
namespace {

std::span<Complex> view(Vector &v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

std::span<const Complex> view(const Vector &v) {
    return {v.data(), static_cast<std::size_t>(v.size())};
}

// Draws the outcome of a two-way measurement with Born probability p for
// `true`. Branches lighter than the pruning floor are never selected.
bool sample_branch(double p, Rng &rng) {
    const double u = rng.uniform();
    if (p < kProbabilityFloor) {
        return false;
    }
    if (p > 1.0 - kProbabilityFloor) {
        return true;
    }
    return u < p;
}

double diagonal_weight(const ProjectorSpec &p, const LocalIndexer &idx,
                       std::span<const Complex> psi) {
    const auto local = idx.local_offsets();
    double total = 0.0;
    for (std::size_t base : idx.rest_offsets()) {
        for (std::size_t l = 0; l < local.size(); ++l) {
            if (p.forbids(static_cast<std::uint32_t>(l))) {
                total += std::norm(psi[base + local[l]]);
            }
        }
    }
    return total;
}

} // namespace

TrajectoryState TrajectoryState::fully_mixed(std::size_t n, std::uint64_t seed,
                                             std::size_t qubit_cap) {
    if (n == 0) {
        throw InvalidArgument("a register needs at least one qubit");
    }
    if (n > qubit_cap) {
        throw DimensionTooLarge("trajectory backend limited to " +
                                std::to_string(qubit_cap) + " qubits, got " +
                                std::to_string(n));
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    TrajectoryState state(n, Vector::Zero(dim), seed);
    const auto index = static_cast<Eigen::Index>(
        state.rng_.below(static_cast<std::uint64_t>(dim)));
    state.psi_[index] = 1.0;
    return state;
}

TrajectoryState TrajectoryState::from_amplitudes(Vector amplitudes,
                                                 std::uint64_t seed) {
    const auto dim = static_cast<std::size_t>(amplitudes.size());
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw InvalidArgument("amplitude vector length must be a power of two");
    }
    if (std::abs(amplitudes.norm() - 1.0) > kNormTolerance) {
        throw NotNormalized("state vector is not normalized");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    return TrajectoryState(n, std::move(amplitudes), seed);
}

double TrajectoryState::expectation(const ProjectorSpec &projector) const {
    const LocalIndexer idx(projector.support(), n_);
    if (projector.is_diagonal()) {
        return diagonal_weight(projector, idx, view(psi_));
    }
    return local_expectation(projector.matrix(), idx, view(psi_));
}

Outcome TrajectoryState::measure(const ProjectorSpec &projector) {
    const LocalIndexer idx(projector.support(), n_);
    const auto local = idx.local_offsets();
    Outcome outcome;

    if (projector.is_diagonal()) {
        const double p =
            std::clamp(diagonal_weight(projector, idx, view(psi_)), 0.0, 1.0);
        outcome.probability = p;
        outcome.violated = sample_branch(p, rng_);
        for (std::size_t base : idx.rest_offsets()) {
            for (std::size_t l = 0; l < local.size(); ++l) {
                if (projector.forbids(static_cast<std::uint32_t>(l)) !=
                    outcome.violated) {
                    psi_[static_cast<Eigen::Index>(base + local[l])] = 0.0;
                }
            }
        }
    } else {
        Vector projected = psi_;
        apply_local(projector.matrix(), idx, view(projected));
        const double p = std::clamp(projected.squaredNorm(), 0.0, 1.0);
        outcome.probability = p;
        outcome.violated = sample_branch(p, rng_);
        if (outcome.violated) {
            psi_ = std::move(projected);
        } else {
            psi_ -= projected;
        }
    }
    psi_ /= psi_.norm();
    return outcome;
}

void TrajectoryState::replace_qubits(std::span<const std::size_t> support) {
    for (std::size_t q : support) {
        const std::size_t bit = std::size_t{1} << q;
        double p1 = 0.0;
        for (Eigen::Index x = 0; x < psi_.size(); ++x) {
            if (static_cast<std::size_t>(x) & bit) {
                p1 += std::norm(psi_[x]);
            }
        }
        const bool measured = sample_branch(p1, rng_);
        for (Eigen::Index x = 0; x < psi_.size(); ++x) {
            if (((static_cast<std::size_t>(x) & bit) != 0) != measured) {
                psi_[x] = 0.0;
            }
        }
        psi_ /= psi_.norm();
        if (rng_.bit() != measured) {
            for (Eigen::Index x = 0; x < psi_.size(); ++x) {
                const auto ux = static_cast<std::size_t>(x);
                if ((ux & bit) == 0) {
                    std::swap(psi_[x], psi_[static_cast<Eigen::Index>(ux | bit)]);
                }
            }
        }
    }
}

} // namespace qlll
