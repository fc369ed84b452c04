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

#include "qlll/history.hpp"

#include <cmath>

#include "qlll/errors.hpp"

namespace qlll {
namespace {

struct PendingBranch {
    DensityState state;
    std::vector<std::size_t> stack;
    std::vector<std::uint8_t> outcomes;
    double probability;
    std::size_t failures;
};

void push_neighbors(std::vector<std::size_t> &stack,
                    const std::vector<std::size_t> &members) {
    for (auto it = members.rbegin(); it != members.rend(); ++it) {
        stack.push_back(*it);
    }
}

std::vector<std::size_t> initial_stack(std::size_t m) {
    std::vector<std::size_t> stack;
    for (std::size_t i = m; i-- > 0;) {
        stack.push_back(i);
    }
    return stack;
}

} // namespace

std::string outcome_key(const std::vector<std::uint8_t> &outcomes) {
    std::string key(outcomes.size(), '0');
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i]) {
            key[i] = '1';
        }
    }
    return key;
}

HistoryTree enumerate_history_tree(const Instance &instance,
                                   const SolverConfig &config,
                                   const HistoryOptions &options) {
    validate_config(config);
    const DerivedParams derived = derive_params(instance.params(), config);
    const auto lists = neighborhood_order(instance, config);
    const std::size_t n = instance.num_qubits();
    const std::size_t k = instance.params().k;
    const std::size_t T = derived.threshold_T;

    HistoryTree tree;
    tree.system_qubits = n;
    tree.stock_qubits = options.materialize_stock ? T * k : 0;
    tree.threshold_T = T;
    tree.params = instance.params();

    DensityState init = DensityState::fully_mixed(n + tree.stock_qubits,
                                                  options.density_qubit_cap);
    tree.initial_entropy = init.entropy();

    std::vector<PendingBranch> work;
    work.push_back({std::move(init), initial_stack(instance.size()), {}, 1.0, 0});
    while (!work.empty()) {
        PendingBranch node = std::move(work.back());
        work.pop_back();
        if (node.stack.empty()) {
            tree.leaves.push_back({std::move(node.outcomes), node.probability,
                                   std::move(node.state), node.failures,
                                   RunResult::success});
            continue;
        }
        const std::size_t index = node.stack.back();
        node.stack.pop_back();
        const ProjectorSpec &projector = instance.projector(index);
        BranchPair pair = node.state.measure(projector);

        if (pair.satisfied) {
            PendingBranch child{std::move(pair.satisfied->state), node.stack,
                                node.outcomes,
                                node.probability * pair.satisfied->probability,
                                node.failures};
            child.outcomes.push_back(0);
            work.push_back(std::move(child));
        } else {
            tree.pruned_mass += node.probability * (1.0 - pair.violation_probability);
        }

        if (!pair.violated) {
            tree.pruned_mass += node.probability * pair.violation_probability;
            continue;
        }
        PendingBranch child{std::move(pair.violated->state), std::move(node.stack),
                            std::move(node.outcomes),
                            node.probability * pair.violated->probability,
                            node.failures + 1};
        child.outcomes.push_back(1);
        if (child.failures == T) {
            tree.leaves.push_back({std::move(child.outcomes), child.probability,
                                   std::move(child.state), child.failures,
                                   RunResult::failure});
            continue;
        }
        const auto &support = projector.support();
        if (options.materialize_stock) {
            // Swap the measured qubits out for fresh stock block t-1.
            const std::size_t block = n + (child.failures - 1) * k;
            for (std::size_t j = 0; j < support.size(); ++j) {
                child.state.swap_qubits(support[j], block + j);
            }
        } else {
            child.state.replace_qubits(support);
        }
        push_neighbors(child.stack, lists[index]);
        work.push_back(std::move(child));
    }
    return tree;
}

OutcomeDistribution outcome_distribution(const HistoryTree &tree) {
    OutcomeDistribution dist;
    for (const auto &leaf : tree.leaves) {
        dist[outcome_key(leaf.branch_string)] += leaf.probability;
    }
    return dist;
}

OutcomeDistribution enumerate_classical_outcomes(const Instance &instance,
                                                 const SolverConfig &config) {
    validate_config(config);
    if (!instance.diagonal()) {
        throw InvalidArgument("classical enumeration needs a diagonal instance");
    }
    const std::size_t n = instance.num_qubits();
    if (n > 20) {
        throw DimensionTooLarge("classical enumeration limited to 20 qubits");
    }
    const DerivedParams derived = derive_params(instance.params(), config);
    const auto lists = neighborhood_order(instance, config);
    const std::size_t T = derived.threshold_T;

    struct Node {
        std::vector<std::uint8_t> bits;
        std::vector<std::size_t> stack;
        std::vector<std::uint8_t> outcomes;
        double probability;
        std::size_t failures;
    };
    std::vector<Node> work;
    const std::size_t starts = std::size_t{1} << n;
    for (std::size_t x = 0; x < starts; ++x) {
        std::vector<std::uint8_t> bits(n);
        for (std::size_t q = 0; q < n; ++q) {
            bits[q] = (x >> q) & 1U;
        }
        work.push_back({std::move(bits), initial_stack(instance.size()), {},
                        1.0 / static_cast<double>(starts), 0});
    }

    OutcomeDistribution dist;
    while (!work.empty()) {
        Node node = std::move(work.back());
        work.pop_back();
        if (node.stack.empty()) {
            dist[outcome_key(node.outcomes)] += node.probability;
            continue;
        }
        const std::size_t index = node.stack.back();
        node.stack.pop_back();
        const ProjectorSpec &projector = instance.projector(index);
        std::uint32_t pattern = 0;
        for (std::size_t q : projector.support()) {
            pattern = (pattern << 1) | node.bits[q];
        }
        const bool violated = projector.forbids(pattern);
        node.outcomes.push_back(violated ? 1 : 0);
        if (!violated) {
            work.push_back(std::move(node));
            continue;
        }
        ++node.failures;
        if (node.failures == T) {
            dist[outcome_key(node.outcomes)] += node.probability;
            continue;
        }
        push_neighbors(node.stack, lists[index]);
        const auto &support = projector.support();
        const std::size_t fresh = std::size_t{1} << support.size();
        for (std::size_t a = 0; a < fresh; ++a) {
            Node child = node;
            for (std::size_t j = 0; j < support.size(); ++j) {
                child.bits[support[j]] = static_cast<std::uint8_t>((a >> j) & 1U);
            }
            child.probability /= static_cast<double>(fresh);
            work.push_back(std::move(child));
        }
    }
    return dist;
}

OutcomeDistribution sample_outcome_distribution(const Instance &instance,
                                                const SolverConfig &config,
                                                std::size_t samples) {
    OutcomeDistribution dist;
    if (samples == 0) {
        return dist;
    }
    SolverConfig trial = config;
    const double weight = 1.0 / static_cast<double>(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        trial.seed = derive_seed(config.seed, i);
        dist[outcome_key(run(instance, trial).outcome_string)] += weight;
    }
    return dist;
}

double total_variation(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    double sum = 0.0;
    for (const auto &[key, p] : a) {
        const auto it = b.find(key);
        sum += std::abs(p - (it == b.end() ? 0.0 : it->second));
    }
    for (const auto &[key, q] : b) {
        if (a.find(key) == a.end()) {
            sum += q;
        }
    }
    return 0.5 * sum;
}

} // namespace qlll
