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

#include "qlll/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "qlll/errors.hpp"
#include "qlll/log.hpp"

namespace qlll {
namespace {

// Density backend with one sampled branch per measurement and lazy stock
// (replacement by partial trace).
class SampledDensity {
  public:
    SampledDensity(DensityState state, std::uint64_t seed)
        : state_(std::move(state)), rng_(seed) {}

    Outcome measure(const ProjectorSpec &projector) {
        BranchPair pair = state_.measure(projector);
        const double p = pair.violation_probability;
        bool violated = rng_.uniform() < p;
        if (violated && !pair.violated) {
            violated = false;
        } else if (!violated && !pair.satisfied) {
            violated = true;
        }
        state_ = std::move(violated ? pair.violated : pair.satisfied)->state;
        return {violated, p};
    }

    void replace_qubits(std::span<const std::size_t> support) {
        state_.replace_qubits(support);
    }

    double expectation(const ProjectorSpec &projector) const {
        return state_.expectation(projector);
    }

  private:
    DensityState state_;
    Rng rng_;
};

struct Frame {
    std::size_t projector;
    bool returning;
};

template <class State>
RunRecord run_fix_loop(const Instance &instance, const SolverConfig &config,
                       const DerivedParams &derived, State &state,
                       FixObserver *observer) {
    const auto start = std::chrono::steady_clock::now();
    const auto lists = neighborhood_order(instance, config);
    const std::size_t T = derived.threshold_T;
    const FixObserver::EnergyFn energy = [&](std::size_t j) {
        return state.expectation(instance.projector(j));
    };

    RunRecord record;
    record.seed = config.seed;
    record.threshold_T = T;

    // Explicit stack: popping in traversal order reproduces the depth-first
    // order of the recursive procedure.
    std::vector<Frame> stack;
    for (std::size_t i = instance.size(); i-- > 0;) {
        stack.push_back({i, false});
    }
    while (!stack.empty()) {
        const Frame frame = stack.back();
        stack.pop_back();
        if (frame.returning) {
            if (observer) {
                observer->on_return(frame.projector, energy);
            }
            continue;
        }
        if (observer) {
            observer->on_call(frame.projector, energy);
        }
        const ProjectorSpec &projector = instance.projector(frame.projector);
        const Outcome outcome = state.measure(projector);
        record.outcome_string.push_back(outcome.violated ? 1 : 0);
        ++record.fix_calls;
        if (!outcome.violated) {
            if (observer) {
                observer->on_return(frame.projector, energy);
            }
            continue;
        }
        ++record.failures_t;
        if (record.failures_t == T) {
            // Abort before replacing the measured qubits.
            record.result = RunResult::failure;
            break;
        }
        state.replace_qubits(projector.support());
        stack.push_back({frame.projector, true});
        const auto &members = lists[frame.projector];
        for (auto it = members.rbegin(); it != members.rend(); ++it) {
            stack.push_back({*it, false});
        }
    }

    record.final_expectations.reserve(instance.size());
    for (std::size_t j = 0; j < instance.size(); ++j) {
        const double e = energy(j);
        record.final_expectations.push_back(e);
        record.max_energy = std::max(record.max_energy, e);
    }
    record.satisfied = record.max_energy <= kSatisfactionTolerance;
    record.guaranteed = instance.commuting();
    record.elapsed_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return record;
}

RunRecord run_impl(const Instance &instance, const SolverConfig &config,
                   FixObserver *observer) {
    validate_config(config);
    const DerivedParams derived = derive_params(instance.params(), config);
    const std::size_t n = instance.num_qubits();
    switch (config.backend) {
    case BackendKind::trajectory: {
        auto state =
            TrajectoryState::fully_mixed(n, config.seed, config.trajectory_qubit_cap);
        return run_fix_loop(instance, config, derived, state, observer);
    }
    case BackendKind::diagonal: {
        if (!instance.diagonal()) {
            throw InvalidArgument("the diagonal backend needs a diagonal instance");
        }
        auto state = ClassicalState::fully_mixed(n, config.seed);
        return run_fix_loop(instance, config, derived, state, observer);
    }
    case BackendKind::density: {
        SampledDensity state(DensityState::fully_mixed(n, config.density_qubit_cap),
                             config.seed);
        return run_fix_loop(instance, config, derived, state, observer);
    }
    }
    throw InvalidArgument("unknown backend");
}

template <class State>
SatisfactionReport satisfaction_of(const Instance &instance, const State &state) {
    SatisfactionReport report;
    report.energies.reserve(instance.size());
    for (const auto &p : instance.projectors()) {
        const double e = state.expectation(p);
        report.energies.push_back(e);
        report.max_energy = std::max(report.max_energy, e);
    }
    report.satisfied = report.max_energy <= kSatisfactionTolerance;
    report.no_guarantee = !instance.commuting();
    return report;
}

class MonotonicityObserver final : public FixObserver {
  public:
    MonotonicityObserver(std::size_t m, MonotonicityReport &report)
        : m_(m), report_(report), fixed_(m, 0), outer_(m, 0) {}

    void on_call(std::size_t, const EnergyFn &energy) override {
        calls_.push_back(satisfied_set(energy));
    }

    void on_return(std::size_t projector, const EnergyFn &energy) override {
        const auto now = satisfied_set(energy);
        const auto before = std::move(calls_.back());
        calls_.pop_back();
        ++report_.returns_checked;

        const double e = energy(projector);
        report_.max_return_energy = std::max(report_.max_return_energy, e);
        if (e > kSatisfactionTolerance) {
            ++report_.return_violations;
        }
        for (std::size_t j = 0; j < m_; ++j) {
            if (before[j] && !now[j]) {
                ++report_.shrink_violations;
                break;
            }
        }

        fixed_[projector] = 1;
        if (calls_.empty()) {
            // Top-level return: fixed-and-satisfied set must only grow.
            std::vector<char> current(m_, 0);
            for (std::size_t j = 0; j < m_; ++j) {
                current[j] = fixed_[j] && now[j];
            }
            bool grew = current[projector] != 0;
            for (std::size_t j = 0; j < m_; ++j) {
                grew = grew && (!outer_[j] || current[j]);
            }
            if (!grew) {
                ++report_.outer_violations;
            }
            outer_ = std::move(current);
        }
    }

  private:
    std::vector<char> satisfied_set(const EnergyFn &energy) const {
        std::vector<char> s(m_, 0);
        for (std::size_t j = 0; j < m_; ++j) {
            s[j] = energy(j) <= kSatisfactionTolerance;
        }
        return s;
    }

    std::size_t m_;
    MonotonicityReport &report_;
    std::vector<std::vector<char>> calls_;
    std::vector<char> fixed_;
    std::vector<char> outer_;
};

} // namespace

std::vector<std::vector<std::size_t>> neighborhood_order(const Instance &instance,
                                                         const SolverConfig &config) {
    auto lists = instance.neighborhood().members;
    if (config.traversal == Traversal::random) {
        Rng rng(mix64(config.seed ^ 0x7a3c5e1f2b4d6987ULL));
        for (auto &list : lists) {
            rng.shuffle(list.begin(), list.end());
        }
    }
    return lists;
}

std::string_view to_string(Traversal t) {
    return t == Traversal::ascending ? "ascending" : "random";
}

std::string_view to_string(BackendKind b) {
    switch (b) {
    case BackendKind::trajectory:
        return "trajectory";
    case BackendKind::diagonal:
        return "diagonal";
    case BackendKind::density:
        return "density";
    }
    return "unknown";
}

Traversal parse_traversal(std::string_view name) {
    if (name == "ascending") {
        return Traversal::ascending;
    }
    if (name == "random") {
        return Traversal::random;
    }
    throw InvalidArgument("unknown traversal '" + std::string(name) + "'");
}

BackendKind parse_backend(std::string_view name) {
    if (name == "trajectory") {
        return BackendKind::trajectory;
    }
    if (name == "diagonal") {
        return BackendKind::diagonal;
    }
    if (name == "density" || name == "density_enumerate") {
        return BackendKind::density;
    }
    throw InvalidArgument("unknown backend '" + std::string(name) + "'");
}

std::string_view to_string(RunResult r) {
    return r == RunResult::success ? "Success" : "Failure";
}

void validate_config(const SolverConfig &config) {
    if (!(config.delta > 0.0 && config.delta < 1.0)) {
        throw InvalidArgument("delta must lie in (0, 1)");
    }
    if (config.threshold_override && *config.threshold_override == 0) {
        throw InvalidArgument("threshold override must be at least 1");
    }
}

double compute_eta(std::size_t k, std::size_t g, std::size_t r, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw InvalidArgument("delta must lie in (0, 1)");
    }
    const double margin = qlll_margin(k, g, r);
    if (!(margin > 0.0)) {
        throw ConditionViolated("k - log2(g e r) = " + std::to_string(margin) +
                                " is not positive for k = " + std::to_string(k) +
                                ", g = " + std::to_string(g) +
                                ", r = " + std::to_string(r));
    }
    return 1.0 / (delta * margin);
}

std::size_t compute_threshold(std::size_t m, double eta) {
    if (m == 0) {
        throw InvalidArgument("the threshold needs at least one projector");
    }
    if (!(eta > 0.0)) {
        throw InvalidArgument("eta must be positive");
    }
    if (m < 2) {
        warn("m < 2: the success guarantee only covers instances with at least "
             "two projectors");
    }
    const double t = 4.0 * static_cast<double>(m) * eta * std::log2(eta + 2.0);
    return static_cast<std::size_t>(std::ceil(t));
}

double failure_bound(std::size_t T, std::size_t m, std::size_t k, std::size_t g,
                     std::size_t r) {
    const double margin = qlll_margin(k, g, r);
    const double t = static_cast<double>(T);
    return (std::log2(t) + static_cast<double>(m)) / (t * margin);
}

DerivedParams derive_params(const InstanceParams &params,
                            const SolverConfig &config) {
    DerivedParams d;
    d.margin = qlll_margin(params.k, params.g, params.r);
    if (config.threshold_override || params.m == 0) {
        if (d.margin > 0.0) {
            d.eta = compute_eta(params.k, params.g, params.r, config.delta);
        }
        d.threshold_T = config.threshold_override.value_or(1);
    } else {
        d.eta = compute_eta(params.k, params.g, params.r, config.delta);
        d.threshold_T = compute_threshold(params.m, *d.eta);
    }
    d.stock_size_N = d.threshold_T * params.k;
    return d;
}

RunRecord run(const Instance &instance, const SolverConfig &config) {
    return run_impl(instance, config, nullptr);
}

RunRecord run(const Instance &instance, const SolverConfig &config,
              FixObserver &observer) {
    return run_impl(instance, config, &observer);
}

SatisfactionReport verify_satisfaction(const Instance &instance,
                                       const TrajectoryState &state) {
    return satisfaction_of(instance, state);
}

SatisfactionReport verify_satisfaction(const Instance &instance,
                                       const DensityState &state) {
    return satisfaction_of(instance, state);
}

SatisfactionReport verify_satisfaction(const Instance &instance,
                                       const ClassicalState &state) {
    return satisfaction_of(instance, state);
}

MonotonicityReport monotonicity_probe(const Instance &instance,
                                      const SolverConfig &config) {
    if (!instance.commuting()) {
        throw InvalidArgument("monotonicity probe requires a commuting instance");
    }
    MonotonicityReport report;
    MonotonicityObserver observer(instance.size(), report);
    report.run = run(instance, config, observer);
    return report;
}

} // namespace qlll
