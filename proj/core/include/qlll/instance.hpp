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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qlll/projector.hpp"

namespace qlll {

/// (k-local, rank-r, g-neighborhood) parameters of an instance.
struct InstanceParams {
    std::size_t k = 1; ///< max support size
    std::size_t r = 1; ///< max projector rank (1 if every projector is zero)
    std::size_t g = 1; ///< max neighborhood size, counting the projector itself
    std::size_t m = 0; ///< projector count

    friend bool operator==(const InstanceParams &,
                           const InstanceParams &) = default;
};

/// For every projector i, the ascending list of projectors sharing at least
/// one qubit with it. Always contains i itself.
struct NeighborhoodMap {
    std::vector<std::vector<std::size_t>> members;

    const std::vector<std::size_t> &operator[](std::size_t i) const {
        return members[i];
    }
    std::size_t size() const { return members.size(); }
    /// Largest neighborhood, at least 1.
    std::size_t max_size() const;

    friend bool operator==(const NeighborhoodMap &,
                           const NeighborhoodMap &) = default;
};

struct InstanceMeta {
    std::optional<std::uint64_t> seed;
    std::string generator;

    friend bool operator==(const InstanceMeta &, const InstanceMeta &) = default;
};

struct ProjectorResidual {
    std::size_t index = 0;
    double hermiticity = 0.0;
    double idempotence = 0.0;
    double trace = 0.0;
    std::size_t rank = 0;
    bool valid = true;
};

struct PairResidual {
    std::size_t first = 0;
    std::size_t second = 0;
    double residual = 0.0;
};

struct ValidationReport {
    std::vector<ProjectorResidual> projectors;
    /// One entry per overlapping pair (first < second).
    std::vector<PairResidual> pairs;
    InstanceParams params;
    bool projectors_valid = true;
    bool commuting = true;
    double max_commutator = 0.0;
};

struct QlllCondition {
    bool satisfied = false;
    /// k - log2(g e r); positive exactly when g < 2^k / (r e).
    double margin = 0.0;
};

/// k - log2(g e r), with log2(e) taken from a constant.
double qlll_margin(std::size_t k, std::size_t g, std::size_t r);

QlllCondition check_qlll_condition(const InstanceParams &params);

NeighborhoodMap compute_neighborhood(std::span<const ProjectorSpec> projectors);

InstanceParams compute_params(std::span<const ProjectorSpec> projectors,
                              const NeighborhoodMap &neighborhood);

/// Residual report for a raw projector list. Throws MalformedProjector when
/// a support index is >= n.
ValidationReport validate_instance(std::size_t n,
                                   std::span<const ProjectorSpec> projectors);

/// A k-QSAT instance on n qubits. Immutable once created, so it can be
/// shared read-only between worker threads.
class Instance {
  public:
    /// Validates the projectors and derives parameters and neighborhoods.
    /// Non-commuting instances are accepted and flagged.
    static Instance create(std::size_t n, std::vector<ProjectorSpec> projectors,
                           InstanceMeta meta = {});

    std::size_t num_qubits() const { return n_; }
    const std::vector<ProjectorSpec> &projectors() const { return projectors_; }
    const ProjectorSpec &projector(std::size_t i) const { return projectors_[i]; }
    std::size_t size() const { return projectors_.size(); }
    const InstanceParams &params() const { return params_; }
    const NeighborhoodMap &neighborhood() const { return neighborhood_; }
    bool commuting() const { return commuting_; }
    /// True when every projector is a 0/1 diagonal matrix.
    bool diagonal() const;
    const InstanceMeta &meta() const { return meta_; }

    friend bool operator==(const Instance &a, const Instance &b) {
        return a.n_ == b.n_ && a.projectors_ == b.projectors_ &&
               a.meta_ == b.meta_;
    }

  private:
    Instance() = default;

    std::size_t n_ = 0;
    std::vector<ProjectorSpec> projectors_;
    InstanceParams params_;
    NeighborhoodMap neighborhood_;
    bool commuting_ = true;
    InstanceMeta meta_;
};

ValidationReport validate_instance(const Instance &instance);

} // namespace qlll
