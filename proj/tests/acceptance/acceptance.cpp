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

// Acceptance suite: one PASS/FAIL line per headline criterion. Exit status
// is 0 only if every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qlll/experiment.hpp"
#include "qlll/generators.hpp"
#include "qlll/history.hpp"
#include "qlll/verifiers.hpp"
#include "test_support.hpp"

namespace {

using namespace qlll;
using qlll::testing::HighPrecision;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double band(double delta, std::size_t trials) {
    return delta + 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(trials));
}

// 1. Success probability on a k=3, r=1, g<=2, m=12 diagonal instance at
// delta = 0.25 over 1000 trials, and satisfaction of every Success run.
Verdict success_guarantee() {
    constexpr double delta = 0.25;
    constexpr std::size_t trials = 1000;
    const double limit = band(delta, trials);
    std::string detail;
    bool pass = true;

    struct Setup {
        const char *label;
        std::size_t n;
        BackendKind backend;
    };
    for (const Setup setup : {Setup{"diagonal n=20", 20, BackendKind::diagonal},
                              Setup{"trajectory n=18", 18, BackendKind::trajectory}}) {
        const auto inst = generate_classical_instance(setup.n, 3, 12, 2, 7);
        const auto &p = inst.params();
        ExperimentConfig config;
        config.trials = trials;
        config.base_seed = 1;
        config.solver.delta = delta;
        config.solver.backend = setup.backend;
        config.solver.trajectory_qubit_cap = setup.n;
        const auto results = run_trials(inst, config);
        const auto s = summarize(inst, config, results);
        const double rate = static_cast<double>(s.failures) / static_cast<double>(trials);
        const bool ok = p.k == 3 && p.r == 1 && p.g <= 2 && p.m == 12 && s.errors == 0 &&
                        rate <= limit && s.unsatisfied_successes == 0 &&
                        s.max_energy <= kSatisfactionTolerance &&
                        s.fix_call_violations == 0;
        pass = pass && ok;
        detail += fmt("%s%s: failure rate %.3f <= %.3f, max energy %.1e, "
                      "fix calls mean %.2f max %zu (<= m+g t on all runs: %s)",
                      detail.empty() ? "" : "; ", setup.label, rate, limit,
                      s.max_energy, s.mean_fix_calls, s.max_fix_calls,
                      s.fix_call_violations == 0 ? "yes" : "no");
    }
    return {pass, detail};
}

// 2. T and B for (k, g, r, delta, m) = (3, 2, 1, 0.5, 2) against a 50-digit
// recomputation.
Verdict analytic_bound() {
    const double eta = compute_eta(3, 2, 1, 0.5);
    const std::size_t T = compute_threshold(2, eta);
    const double B = failure_bound(T, 2, 3, 2, 1);
    const HighPrecision eta_hp = qlll::testing::hp_eta(3, 2, 1, HighPrecision("0.5"));
    const auto T_hp = qlll::testing::hp_threshold(2, eta_hp);
    const HighPrecision B_hp = qlll::testing::hp_bound(T_hp, 2, 3, 2, 1);
    const bool pass = T == 72 && T_hp == 72 && B <= 0.5 &&
                      qlll::testing::same_digits(B, B_hp, 6) &&
                      qlll::testing::same_digits(eta, eta_hp, 6) &&
                      std::abs(B - 0.2036) < 5e-5;
    return {pass, fmt("T=%zu (reference %lld), B=%.6f (reference %.6f) <= 0.5", T,
                      static_cast<long long>(T_hp), B, qlll::testing::to_double(B_hp))};
}

struct TreeCase {
    Instance instance;
    SolverConfig config;
};

std::vector<TreeCase> small_tree_cases() {
    std::vector<TreeCase> cases;
    for (std::uint64_t i = 0; i < 120; ++i) {
        RandomInstanceOptions options;
        options.n = 2 + i % 2;
        options.k = 1 + (i / 2) % 2;
        options.m = 1 + (i / 4) % 3;
        options.max_rank = 1 + (i / 12) % 2;
        options.family = static_cast<RandomFamily>(i % 3);
        const std::uint64_t seed = derive_seed(2026, i);
        SolverConfig config;
        config.seed = seed;
        config.threshold_override = 1 + (i / 24) % 2;
        cases.push_back({generate_random_instance(options, seed), config});
    }
    return cases;
}

// 3 and 4 share the enumeration.
struct TreeVerdicts {
    Verdict entropy;
    Verdict counts;
};

TreeVerdicts tree_claims() {
    std::size_t trees = 0, noncommuting = 0, entropy_failed = 0, count_failed = 0;
    std::size_t leaves = 0;
    double min_entropy_margin = INFINITY, min_count_margin = INFINITY;
    for (const auto &c : small_tree_cases()) {
        const auto tree = enumerate_history_tree(c.instance, c.config);
        ++trees;
        noncommuting += c.instance.commuting() ? 0 : 1;
        leaves += tree.leaves.size();
        const auto e = check_entropy_claim(tree);
        entropy_failed += e.holds ? 0 : 1;
        min_entropy_margin = std::min(min_entropy_margin, e.rhs - e.lhs);
        const auto k = check_history_count_bound(tree, c.instance.params());
        count_failed += k.holds ? 0 : 1;
        min_count_margin = std::min(min_count_margin, k.min_entropy_margin);
    }
    TreeVerdicts v;
    v.entropy = {trees >= 100 && noncommuting > 0 && entropy_failed == 0,
                 fmt("%zu trees (%zu non-commuting), %zu failed, min rhs-lhs %.2e "
                     "(slack 1e-9)",
                     trees, noncommuting, entropy_failed, min_entropy_margin)};
    v.counts = {trees >= 100 && count_failed == 0,
                fmt("%zu leaves over %zu trees, %zu trees failed, min entropy "
                    "margin %.2e (slack 1e-9)",
                    leaves, trees, count_failed, min_count_margin)};
    return v;
}

// 5. Exact binomial inequality on the validity grid.
Verdict binomial() {
    const auto r = check_binomial_inequality({0, 30}, {2, 6}, {1, 20});
    return {r.holds && r.violations.empty() && r.checked == 31u * 5u * 20u,
            fmt("%zu points, %zu violations, %zu equalities", r.checked,
                r.violations.size(), r.equalities)};
}

// 6. Threshold inequality over the admissible grid.
Verdict threshold() {
    std::size_t sets = 0, failed = 0;
    double min_margin = INFINITY;
    for (std::size_t k = 3; k <= 6; ++k) {
        for (std::size_t g = 2; g <= 11; ++g) {
            for (std::size_t r = 1; r <= 2; ++r) {
                if (!(qlll_margin(k, g, r) > 0.0)) continue;
                for (double delta : {0.1, 0.25, 0.5, 0.9}) {
                    const auto rep = check_threshold_inequality(k, g, r, delta, {2, 50});
                    ++sets;
                    failed += rep.holds ? 0 : 1;
                    min_margin = std::min(min_margin, rep.min_margin);
                }
            }
        }
    }
    return {sets > 0 && failed == 0 && min_margin > 0.0,
            fmt("%zu admissible (k,g,r,delta) sets x m in [2,50], %zu failed, "
                "min margin %.4g",
                sets, failed, min_margin)};
}

// 7. Backend equivalence on 3-qubit instances.
Verdict backend_equivalence() {
    double worst_tv = 0.0;
    std::size_t sampled = 0;
    for (std::uint64_t i = 0; i < 6; ++i) {
        RandomInstanceOptions options;
        options.n = 3;
        options.k = 2;
        options.m = 2 + i % 2;
        options.family = static_cast<RandomFamily>(i % 3);
        const auto inst = generate_random_instance(options, 100 + i);
        SolverConfig c;
        c.seed = 500 + i;
        c.threshold_override = 2;
        HistoryOptions lazy;
        lazy.materialize_stock = false;
        const auto exact = outcome_distribution(enumerate_history_tree(inst, c, lazy));
        c.backend = BackendKind::trajectory;
        worst_tv = std::max(worst_tv,
                            total_variation(exact, sample_outcome_distribution(inst, c, 10000)));
        ++sampled;
    }

    double worst_exact = 0.0, worst_diag_tv = 0.0;
    std::size_t diagonal = 0;
    for (std::uint64_t i = 0; i < 6; ++i) {
        const auto inst = generate_classical_instance(3, 2, 2 + i % 2, 3, 40 + i);
        SolverConfig c;
        c.seed = 900 + i;
        c.threshold_override = 2 + i % 2;
        HistoryOptions lazy;
        lazy.materialize_stock = false;
        const auto dense = outcome_distribution(enumerate_history_tree(inst, c, lazy));
        const auto classical = enumerate_classical_outcomes(inst, c);
        worst_exact = std::max(worst_exact, total_variation(dense, classical) * 2.0);
        for (const auto &[key, p] : dense) {
            const auto it = classical.find(key);
            worst_exact = std::max(worst_exact,
                                   std::abs(p - (it == classical.end() ? 0.0 : it->second)));
        }
        c.backend = BackendKind::diagonal;
        c.threshold_override = 2;
        const auto dense2 = outcome_distribution(enumerate_history_tree(inst, c, lazy));
        worst_diag_tv = std::max(
            worst_diag_tv, total_variation(dense2, sample_outcome_distribution(inst, c, 10000)));
        ++diagonal;
    }
    const bool pass = worst_tv <= 0.02 && worst_exact <= 1e-9 && worst_diag_tv <= 0.02;
    return {pass, fmt("trajectory vs density: worst TV %.4f <= 0.02 over %zu instances "
                      "at 1e4 samples; diagonal vs dense enumeration: max |dp| %.1e "
                      "<= 1e-9 over %zu instances (sampled diagonal TV %.4f)",
                      worst_tv, sampled, worst_exact, diagonal, worst_diag_tv)};
}

// 8. Monotonicity probe on rotated commuting instances.
Verdict monotonicity() {
    std::vector<Instance> instances;
    for (std::uint64_t i = 0; i < 4; ++i) {
        instances.push_back(
            rotate_instance(generate_classical_instance(10, 3, 6, 2, 60 + i), 70 + i));
    }
    std::size_t runs = 0, bad = 0, returns = 0, failures = 0;
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SolverConfig c;
        c.seed = derive_seed(8, seed);
        c.traversal = seed % 2 ? Traversal::random : Traversal::ascending;
        const auto &inst = instances[seed % instances.size()];
        const auto report = monotonicity_probe(inst, c);
        ++runs;
        returns += report.returns_checked;
        worst = std::max(worst, report.max_return_energy);
        const bool final_ok = report.run.result == RunResult::failure ||
                              report.run.max_energy <= kSatisfactionTolerance;
        failures += report.run.result == RunResult::failure ? 1 : 0;
        bad += report.holds() && final_ok ? 0 : 1;
    }
    return {bad == 0 && runs == 100,
            fmt("%zu runs, %zu FIX returns checked, %zu runs broke monotonicity, "
                "max energy at return %.1e (<= 1e-8), %zu aborted runs",
                runs, returns, bad, worst, failures)};
}

} // namespace

int main() {
    using clock = std::chrono::steady_clock;
    int failed = 0;
    auto report = [&](int id, const char *name, const Verdict &v, double seconds) {
        std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id,
                    name, v.detail.c_str(), seconds);
        std::fflush(stdout);
        failed += v.pass ? 0 : 1;
    };
    auto timed = [&](auto fn) {
        const auto start = clock::now();
        auto v = fn();
        return std::make_pair(
            v, std::chrono::duration<double>(clock::now() - start).count());
    };
    auto guard = [](const std::function<Verdict()> &fn) {
        return [fn] {
            try {
                return fn();
            } catch (const std::exception &e) {
                return Verdict{false, std::string("exception: ") + e.what()};
            }
        };
    };

    {
        auto [v, s] = timed(guard(success_guarantee));
        report(1, "success probability", v, s);
    }
    {
        auto [v, s] = timed(guard(analytic_bound));
        report(2, "analytic failure bound", v, s);
    }
    {
        const auto start = clock::now();
        TreeVerdicts tv;
        try {
            tv = tree_claims();
        } catch (const std::exception &e) {
            tv.entropy = tv.counts = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(clock::now() - start).count();
        report(3, "entropy inequality on history trees", tv.entropy, s);
        report(4, "branch length and entropy counting", tv.counts, 0.0);
    }
    {
        auto [v, s] = timed(guard(binomial));
        report(5, "binomial inequality", v, s);
    }
    {
        auto [v, s] = timed(guard(threshold));
        report(6, "threshold inequality", v, s);
    }
    {
        auto [v, s] = timed(guard(backend_equivalence));
        report(7, "backend equivalence", v, s);
    }
    {
        auto [v, s] = timed(guard(monotonicity));
        report(8, "monotonicity", v, s);
    }
    std::printf("%s: %d of 8 criteria failed\n", failed == 0 ? "PASS" : "FAIL", failed);
    return failed == 0 ? 0 : 1;
}
