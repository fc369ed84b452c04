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
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "qlll/classical_state.hpp"
#include "qlll/density_state.hpp"
#include "qlll/instance.hpp"
#include "qlll/trajectory_state.hpp"

namespace qlll {

enum class Traversal { ascending, random };

enum class BackendKind {
    trajectory, ///< sampled pure states
    diagonal,   ///< bit-strings; diagonal instances only
    density,    ///< exact density matrices, one branch sampled per measurement
};

std::string_view to_string(Traversal t);
std::string_view to_string(BackendKind b);
/// Throws InvalidArgument on unknown names.
Traversal parse_traversal(std::string_view name);
BackendKind parse_backend(std::string_view name);

struct SolverConfig {
    double delta = 0.5;
    std::uint64_t seed = 0;
    Traversal traversal = Traversal::ascending;
    /// Replaces the abort threshold T.
    std::optional<std::size_t> threshold_override;
    BackendKind backend = BackendKind::trajectory;
    std::size_t trajectory_qubit_cap = kDefaultTrajectoryQubitCap;
    std::size_t density_qubit_cap = kDefaultDensityQubitCap;
};

/// Throws InvalidArgument unless delta lies in (0, 1) and any override is
/// at least 1.
void validate_config(const SolverConfig &config);

struct DerivedParams {
    /// 1 / (delta (k - log2(g e r))); empty when the condition fails and T
    /// was overridden.
    std::optional<double> eta;
    std::size_t threshold_T = 1;
    /// T k, the stock register a faithful implementation would allocate.
    std::size_t stock_size_N = 0;
    double margin = 0.0;
};

/// Throws ConditionViolated when k <= log2(g e r), InvalidArgument for delta
/// outside (0, 1).
double compute_eta(std::size_t k, std::size_t g, std::size_t r, double delta);

/// ceil(4 m eta log2(eta + 2)). Warns (through qlll::warn) when m < 2.
std::size_t compute_threshold(std::size_t m, double eta);

/// (log2 T + m) / (T (k - log2(g e r))), the bound on the failure probability.
double failure_bound(std::size_t T, std::size_t m, std::size_t k, std::size_t g,
                     std::size_t r);

/// Parameters for running `params` under `config`. An empty instance gets
/// T = 1 without checking the condition.
DerivedParams derive_params(const InstanceParams &params,
                            const SolverConfig &config);

enum class RunResult { success, failure };

std::string_view to_string(RunResult r);

struct RunRecord {
    /// One entry per measurement, 1 = violated.
    std::vector<std::uint8_t> outcome_string;
    std::size_t failures_t = 0;
    std::size_t fix_calls = 0;
    RunResult result = RunResult::success;
    std::size_t threshold_T = 0;
    /// tr(P_i rho) for every projector on the final state.
    std::vector<double> final_expectations;
    double max_energy = 0.0;
    /// max_energy <= 1e-8.
    bool satisfied = true;
    /// False for non-commuting instances, where no energy claim is made.
    bool guaranteed = true;
    std::uint64_t seed = 0;
    std::int64_t elapsed_ns = 0;
};

/// Hooks into the FIX recursion. `energy(j)` evaluates tr(P_j rho) on the
/// current state.
class FixObserver {
  public:
    using EnergyFn = std::function<double(std::size_t)>;

    virtual ~FixObserver() = default;
    virtual void on_call(std::size_t projector, const EnergyFn &energy) = 0;
    virtual void on_return(std::size_t projector, const EnergyFn &energy) = 0;
};

/// Order in which FIX visits each neighborhood: ascending, or one fixed
/// shuffle per run derived from the seed.
std::vector<std::vector<std::size_t>> neighborhood_order(const Instance &instance,
                                                         const SolverConfig &config);

/// Runs the commuting solver once. Failure (t reached T) is a result, not an
/// error; backend errors such as DimensionTooLarge propagate.
RunRecord run(const Instance &instance, const SolverConfig &config);
RunRecord run(const Instance &instance, const SolverConfig &config,
              FixObserver &observer);

struct SatisfactionReport {
    double max_energy = 0.0;
    bool satisfied = true;
    /// Set for non-commuting instances: the number is reported, not promised.
    bool no_guarantee = false;
    std::vector<double> energies;
};

SatisfactionReport verify_satisfaction(const Instance &instance,
                                       const TrajectoryState &state);
SatisfactionReport verify_satisfaction(const Instance &instance,
                                       const DensityState &state);
SatisfactionReport verify_satisfaction(const Instance &instance,
                                       const ClassicalState &state);

struct MonotonicityReport {
    RunRecord run;
    std::size_t returns_checked = 0;
    /// FIX(P) returned while tr(P rho) > 1e-8.
    std::size_t return_violations = 0;
    /// A projector satisfied when FIX(P) was called was violated when it
    /// returned.
    std::size_t shrink_violations = 0;
    /// The set of fixed-and-satisfied projectors lost a member between two
    /// top-level returns.
    std::size_t outer_violations = 0;
    double max_return_energy = 0.0;

    bool holds() const {
        return return_violations == 0 && shrink_violations == 0 &&
               outer_violations == 0;
    }
};

/// Instrumented run checking that FIX calls only ever grow the satisfied
/// set. Requires a commuting instance (InvalidArgument otherwise).
MonotonicityReport monotonicity_probe(const Instance &instance,
                                      const SolverConfig &config);

} // namespace qlll
