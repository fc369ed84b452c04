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

#include <optional>
#include <span>

#include "qlll/constants.hpp"
#include "qlll/linalg.hpp"
#include "qlll/projector.hpp"

namespace qlll {

struct Branch;
struct BranchPair;

/// Exact density operator on d qubits (d capped, 8 by default).
class DensityState {
  public:
    /// 2^-n Identity. Throws DimensionTooLarge when n exceeds the cap.
    static DensityState fully_mixed(std::size_t n, std::size_t qubit_cap =
                                                       kDefaultDensityQubitCap);
    static DensityState from_pure(const Vector &psi, std::size_t qubit_cap =
                                                         kDefaultDensityQubitCap);
    static DensityState from_matrix(Matrix rho, std::size_t qubit_cap =
                                                    kDefaultDensityQubitCap);

    std::size_t num_qubits() const { return n_; }
    const Matrix &matrix() const { return rho_; }

    /// tr(P rho).
    double expectation(const ProjectorSpec &projector) const;

    /// Normalized post-measurement state of one branch together with its
    /// probability. Throws ZeroProbabilityBranch when p < 1e-12.
    Branch project(const ProjectorSpec &projector, bool violated) const;

    BranchPair measure(const ProjectorSpec &projector) const;

    /// Traces out the support and replaces it with maximally mixed qubits.
    void replace_qubits(std::span<const std::size_t> support);

    /// Exchanges two qubits (a SWAP gate).
    void swap_qubits(std::size_t a, std::size_t b);

    /// Reduced state on `keep` (first listed qubit most significant).
    Matrix reduced(std::span<const std::size_t> keep) const;

    double entropy() const;
    double trace() const { return rho_.trace().real(); }
    double hermiticity_residual() const { return max_abs(rho_ - rho_.adjoint()); }
    double min_eigenvalue() const;

  private:
    DensityState(std::size_t n, Matrix rho) : n_(n), rho_(std::move(rho)) {}

    std::size_t n_;
    Matrix rho_;
};

struct Branch {
    double probability = 0.0;
    DensityState state;
};

/// Both outcomes of a {P, 1 - P} measurement. Branches lighter than 1e-12
/// are pruned and left empty.
struct BranchPair {
    /// Born probability of the violated outcome.
    double violation_probability = 0.0;
    std::optional<Branch> satisfied;
    std::optional<Branch> violated;
};

/// von Neumann entropy in bits.
double von_neumann_entropy(const DensityState &state);

} // namespace qlll
