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

#include <map>
#include <string>
#include <vector>

#include "qlll/density_state.hpp"
#include "qlll/instance.hpp"
#include "qlll/solver.hpp"

namespace qlll {

/// One leaf of the measurement-history tree.
struct HistoryNode {
    /// Measurement outcomes along the branch, 1 = violated.
    std::vector<std::uint8_t> branch_string;
    double probability = 0.0;
    /// Normalized state of the whole register (system, then stock).
    DensityState state;
    std::size_t failures = 0;
    RunResult result = RunResult::success;
};

struct HistoryTree {
    std::vector<HistoryNode> leaves;
    /// Entropy of the initial register in bits (n + N when the stock is
    /// materialized).
    double initial_entropy = 0.0;
    std::size_t system_qubits = 0;
    /// Stock qubits held in the register (0 when replacement is lazy).
    std::size_t stock_qubits = 0;
    std::size_t threshold_T = 0;
    /// Probability mass of branches dropped below the 1e-12 floor.
    double pruned_mass = 0.0;
    InstanceParams params;
};

struct HistoryOptions {
    /// Hold N = T k stock qubits in the register and swap them in at each
    /// replacement. Otherwise replacement traces out and re-mixes in place.
    bool materialize_stock = true;
    std::size_t density_qubit_cap = kDefaultDensityQubitCap;
};

/// Runs the solver on the density backend, following both outcomes of
/// every measurement. Uses config.threshold_override (or the derived T),
/// traversal and seed; the backend field is ignored. Throws
/// DimensionTooLarge when n (+ N) exceeds the cap.
HistoryTree enumerate_history_tree(const Instance &instance,
                                   const SolverConfig &config,
                                   const HistoryOptions &options = {});

/// Probability of each outcome string, keyed by its "0101" rendering.
using OutcomeDistribution = std::map<std::string, double>;

std::string outcome_key(const std::vector<std::uint8_t> &outcomes);

OutcomeDistribution outcome_distribution(const HistoryTree &tree);

/// Exact outcome distribution of the diagonal backend: sums over every
/// initial bit-string and every resampled assignment.
OutcomeDistribution enumerate_classical_outcomes(const Instance &instance,
                                                 const SolverConfig &config);

/// Empirical outcome frequencies over `samples` runs seeded
/// derive_seed(config.seed, i).
OutcomeDistribution sample_outcome_distribution(const Instance &instance,
                                                const SolverConfig &config,
                                                std::size_t samples);

/// Half the L1 distance.
double total_variation(const OutcomeDistribution &a, const OutcomeDistribution &b);

} // namespace qlll
