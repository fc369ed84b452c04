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

#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "qlll/errors.hpp"
#include "qlll/experiment.hpp"
#include "qlll/generators.hpp"
#include "qlll/history.hpp"
#include "qlll/instance_io.hpp"
#include "qlll/random.hpp"
#include "qlll/verifiers.hpp"

namespace qlll::cli {
namespace {

using nlohmann::ordered_json;

void write_file(const std::string &path, const std::string &text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Machine-readable output goes to `path` when set, else to stdout. Human
// readable lines then go to stdout or stderr so they never mix with it.
struct Sink {
    std::ostream &out;
    std::ostream &err;
    std::string path;

    void emit(const std::string &text) const {
        if (path.empty()) {
            out << text;
        } else {
            write_file(path, text);
        }
    }
    std::ostream &info() const { return path.empty() ? err : out; }
};

void print_params(std::ostream &os, const Instance &instance, double delta) {
    const InstanceParams p = instance.params();
    os << "n=" << instance.num_qubits() << " k=" << p.k << " r=" << p.r
       << " g=" << p.g << " m=" << p.m
       << " commuting=" << (instance.commuting() ? "true" : "false") << '\n';
    const double margin = qlll_margin(p.k, p.g, p.r);
    os << "margin=" << format_double(margin) << '\n';
    if (margin > 0.0 && p.m > 0) {
        const double eta = compute_eta(p.k, p.g, p.r, delta);
        os << "eta=" << format_double(eta) << " (delta=" << format_double(delta)
           << ")\n";
        os << "T=" << compute_threshold(p.m, eta) << '\n';
    } else if (margin <= 0.0) {
        os << "eta=n/a (QLLL condition fails)\n";
    }
}

// ---------------------------------------------------------------- gen

struct GenArgs {
    bool classical = false;
    std::string rotate;
    std::size_t n = 20, k = 3, m = 12, g = 2;
    std::uint64_t seed = 0;
    double delta = 0.5;
    std::string out;
};

int cmd_gen(const GenArgs &a, std::ostream &out, std::ostream &err) {
    if (a.classical) {
        const double margin = qlll_margin(a.k, a.g, 1);
        if (!(margin > 0.0)) {
            throw ConditionViolated("k=" + std::to_string(a.k) +
                                    ", g=" + std::to_string(a.g) +
                                    ", r=1 violates g < 2^k/(e r) (margin " +
                                    format_double(margin) + ")");
        }
    }
    const Instance instance =
        a.classical ? generate_classical_instance(a.n, a.k, a.m, a.g, a.seed)
                    : rotate_instance(load_instance(a.rotate), a.seed);
    const Sink sink{out, err, a.out};
    sink.emit(serialize_instance(instance));
    print_params(sink.info(), instance, a.delta);
    return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
    std::string instance;
    std::size_t trials = 1;
    double delta = 0.5;
    std::uint64_t seed = 0;
    std::string backend = "trajectory";
    std::string traversal = "ascending";
    std::optional<std::size_t> threshold;
    std::string out, summary, hist_csv;
    std::size_t workers = 0;
    std::size_t qubit_cap = kDefaultTrajectoryQubitCap;
    bool timing = false;
};

int cmd_run(const RunArgs &a, std::ostream &out, std::ostream &err) {
    const Instance instance = load_instance(a.instance);
    ExperimentConfig config;
    config.trials = a.trials;
    config.base_seed = a.seed;
    config.workers = a.workers;
    config.timing = a.timing;
    config.solver.delta = a.delta;
    config.solver.backend = parse_backend(a.backend);
    config.solver.traversal = parse_traversal(a.traversal);
    config.solver.threshold_override = a.threshold;
    config.solver.trajectory_qubit_cap = a.qubit_cap;

    const auto results = run_trials(instance, config);
    const ExperimentSummary summary = summarize(instance, config, results);

    std::ostringstream lines;
    write_results_jsonl(lines, results, config.timing);
    const Sink sink{out, err, a.out};
    sink.emit(lines.str());

    const std::string summary_text = to_json(summary).dump(2) + "\n";
    if (!a.summary.empty()) {
        write_file(a.summary, summary_text);
    } else {
        sink.info() << summary_text;
    }
    if (!a.hist_csv.empty()) {
        std::ostringstream csv;
        write_histogram_csv(csv, summary);
        write_file(a.hist_csv, csv.str());
    }

    bool pass = summary.errors == 0 && summary.unsatisfied_successes == 0 &&
                summary.fix_call_violations == 0;
    if (summary.bound && !a.threshold) {
        pass = pass && summary.within_band;
    }
    sink.info() << "success_rate=" << format_double(summary.success_rate)
                << " errors=" << summary.errors << (pass ? " PASS" : " FAIL")
                << '\n';
    return pass ? kExitOk : kExitAssertion;
}

// ------------------------------------------------------------- verify

struct TreeArgs {
    std::size_t n = 3, k = 2, m = 2, T = 2, random = 100, max_rank = 1;
    std::string family = "mixed";
    std::uint64_t seed = 0;
    std::string instance;
    std::size_t qubit_cap = kDefaultDensityQubitCap;
    std::string report;
};

struct TreeCase {
    std::string label;
    Instance instance;
    std::uint64_t seed = 0;
};

std::vector<TreeCase> tree_cases(const TreeArgs &a) {
    std::vector<TreeCase> cases;
    if (!a.instance.empty()) {
        cases.push_back({a.instance, load_instance(a.instance), a.seed});
        return cases;
    }
    static const RandomFamily cycle[] = {RandomFamily::diagonal,
                                         RandomFamily::rotated,
                                         RandomFamily::generic};
    static const char *names[] = {"diagonal", "rotated", "generic"};
    for (std::size_t i = 0; i < a.random; ++i) {
        std::size_t pick = i % 3;
        if (a.family == "diagonal") {
            pick = 0;
        } else if (a.family == "rotated") {
            pick = 1;
        } else if (a.family == "generic") {
            pick = 2;
        } else if (a.family != "mixed") {
            throw InvalidArgument("unknown family '" + a.family + "'");
        }
        RandomInstanceOptions options;
        options.n = a.n;
        options.k = a.k;
        options.m = a.m;
        options.max_rank = a.max_rank;
        options.family = cycle[pick];
        const std::uint64_t seed = derive_seed(a.seed, i);
        cases.push_back({names[pick], generate_random_instance(options, seed), seed});
    }
    return cases;
}

int cmd_verify_tree(const TreeArgs &a, bool counts, std::ostream &out,
                    std::ostream &err) {
    HistoryOptions options;
    options.materialize_stock = true;
    options.density_qubit_cap = a.qubit_cap;

    ordered_json trees = ordered_json::array();
    std::size_t failed = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    const auto cases = tree_cases(a);
    for (const auto &c : cases) {
        SolverConfig config;
        config.seed = c.seed;
        config.threshold_override = a.T;
        const HistoryTree tree = enumerate_history_tree(c.instance, config, options);
        ordered_json entry;
        bool holds = false;
        if (counts) {
            const auto report = check_history_count_bound(tree, c.instance.params());
            holds = report.holds;
            min_margin = std::min(min_margin, report.min_entropy_margin);
            entry = to_json(report);
        } else {
            const auto report = check_entropy_claim(tree);
            holds = report.holds;
            min_margin = std::min(min_margin, report.rhs - report.lhs);
            entry = to_json(report);
        }
        entry["instance"] = {{"label", c.label},
                             {"seed", c.seed},
                             {"commuting", c.instance.commuting()}};
        trees.push_back(std::move(entry));
        failed += holds ? 0 : 1;
    }

    ordered_json report;
    report["claim"] = counts ? "counts" : "entropy";
    report["inputs"] = {{"n", a.n},         {"k", a.k},
                        {"m", a.m},         {"T", a.T},
                        {"trees", cases.size()}, {"family", a.family},
                        {"seed", a.seed}};
    report["failed"] = failed;
    report["min_margin"] = cases.empty() ? 0.0 : min_margin;
    report["tolerance"] = kEntropySlack;
    report["pass"] = failed == 0;
    report["trees"] = std::move(trees);

    const Sink sink{out, err, a.report};
    sink.emit(report.dump(2) + "\n");
    sink.info() << (counts ? "counts" : "entropy") << ": " << cases.size()
                << " trees, " << failed << " failed, min margin "
                << format_double(cases.empty() ? 0.0 : min_margin)
                << (failed == 0 ? " PASS" : " FAIL") << '\n';
    return failed == 0 ? kExitOk : kExitAssertion;
}

struct BinomArgs {
    std::string m = "0..30", g = "2..6", t = "1..20";
    std::string report;
};

int cmd_verify_binom(const BinomArgs &a, std::ostream &out, std::ostream &err) {
    const auto report = check_binomial_inequality(
        IntRange::parse(a.m), IntRange::parse(a.g), IntRange::parse(a.t));
    const Sink sink{out, err, a.report};
    sink.emit(to_json(report).dump(2) + "\n");
    sink.info() << "binom: " << report.checked << " points, "
                << report.validity_violations << " violations in range, "
                << report.violations.size() - report.validity_violations
                << " outside (g < 2 or t < 1), chain violations "
                << report.chain_violations << (report.holds ? " PASS" : " FAIL")
                << '\n';
    return report.holds ? kExitOk : kExitAssertion;
}

struct ThresholdArgs {
    std::string k = "3", g = "2", r = "1", m = "2..50";
    std::vector<double> delta{0.5};
    std::string report;
};

int cmd_verify_threshold(const ThresholdArgs &a, std::ostream &out,
                         std::ostream &err) {
    const IntRange ks = IntRange::parse(a.k);
    const IntRange gs = IntRange::parse(a.g);
    const IntRange rs = IntRange::parse(a.r);
    const IntRange ms = IntRange::parse(a.m);
    if (ks.lo < 1 || gs.lo < 1 || rs.lo < 1) {
        throw InvalidArgument("k, g and r must be positive");
    }
    const bool single = ks.lo == ks.hi && gs.lo == gs.hi && rs.lo == rs.hi;

    ordered_json reports = ordered_json::array();
    std::size_t skipped = 0, checked = 0, failed = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (auto k = ks.lo; k <= ks.hi; ++k) {
        for (auto g = gs.lo; g <= gs.hi; ++g) {
            for (auto r = rs.lo; r <= rs.hi; ++r) {
                const auto uk = static_cast<std::size_t>(k);
                const auto ug = static_cast<std::size_t>(g);
                const auto ur = static_cast<std::size_t>(r);
                if (!single && !(qlll_margin(uk, ug, ur) > 0.0)) {
                    ++skipped;
                    continue;
                }
                for (double delta : a.delta) {
                    const auto report =
                        check_threshold_inequality(uk, ug, ur, delta, ms);
                    ++checked;
                    failed += report.holds ? 0 : 1;
                    min_margin = std::min(min_margin, report.min_margin);
                    reports.push_back(to_json(report));
                }
            }
        }
    }
    ordered_json doc;
    doc["claim"] = "threshold";
    doc["inputs"] = {{"k", ks.str()}, {"g", gs.str()}, {"r", rs.str()},
                     {"delta", a.delta}, {"m", ms.str()}};
    doc["checked"] = checked;
    doc["skipped_inadmissible"] = skipped;
    doc["failed"] = failed;
    doc["min_margin"] = checked == 0 ? 0.0 : min_margin;
    doc["pass"] = failed == 0;
    doc["reports"] = std::move(reports);

    const Sink sink{out, err, a.report};
    sink.emit(doc.dump(2) + "\n");
    sink.info() << "threshold: " << checked << " parameter sets (" << skipped
                << " inadmissible skipped), min margin "
                << format_double(checked == 0 ? 0.0 : min_margin)
                << (failed == 0 ? " PASS" : " FAIL") << '\n';
    return failed == 0 ? kExitOk : kExitAssertion;
}

struct FailureArgs {
    std::string instance;
    std::size_t n = 20, k = 3, m = 12, g = 2;
    std::uint64_t gen_seed = 7;
    std::size_t trials = 1000;
    double delta = 0.25;
    std::uint64_t seed = 0;
    std::string backend;
    std::string traversal = "ascending";
    std::size_t workers = 0;
    std::string report;
};

int cmd_verify_failure(const FailureArgs &a, std::ostream &out, std::ostream &err) {
    const Instance instance =
        a.instance.empty()
            ? generate_classical_instance(a.n, a.k, a.m, a.g, a.gen_seed)
            : load_instance(a.instance);
    ExperimentConfig config;
    config.trials = a.trials;
    config.base_seed = a.seed;
    config.workers = a.workers;
    config.solver.delta = a.delta;
    config.solver.traversal = parse_traversal(a.traversal);
    if (!a.backend.empty()) {
        config.solver.backend = parse_backend(a.backend);
    } else {
        config.solver.backend =
            instance.diagonal() ? BackendKind::diagonal : BackendKind::trajectory;
    }
    const auto results = run_trials(instance, config);
    const ExperimentSummary summary = summarize(instance, config, results);
    std::vector<RunRecord> records;
    records.reserve(results.size());
    for (const auto &r : results) {
        if (!r.error) {
            records.push_back(r.record);
        }
    }
    const DerivedParams derived = derive_params(instance.params(), config.solver);
    const auto report =
        check_failure_bound(records, instance.params(), derived, a.delta);
    const bool pass = report.holds && summary.errors == 0 &&
                      summary.unsatisfied_successes == 0 &&
                      summary.fix_call_violations == 0;

    ordered_json doc = to_json(report);
    doc["backend"] = std::string(to_string(config.solver.backend));
    doc["errors"] = summary.errors;
    doc["unsatisfied_successes"] = summary.unsatisfied_successes;
    doc["fix_call_violations"] = summary.fix_call_violations;
    doc["mean_fix_calls"] = summary.mean_fix_calls;
    doc["max_fix_calls"] = summary.max_fix_calls;
    doc["pass"] = pass;

    const Sink sink{out, err, a.report};
    sink.emit(doc.dump(2) + "\n");
    sink.info() << "failure-bound: p_hat=" << format_double(report.p_hat)
                << " band=" << format_double(report.band)
                << " B=" << format_double(report.bound) << " T=" << report.threshold_T
                << (pass ? " PASS" : " FAIL") << '\n';
    return pass ? kExitOk : kExitAssertion;
}

void add_tree_options(CLI::App *cmd, TreeArgs &a) {
    cmd->add_option("--n", a.n, "Qubits per random instance");
    cmd->add_option("--k", a.k, "Support size of every projector");
    cmd->add_option("--m", a.m, "Projectors per random instance");
    cmd->add_option("--T", a.T, "Abort threshold used for the enumeration");
    cmd->add_option("--random", a.random, "Number of random instances");
    cmd->add_option("--max-rank", a.max_rank, "Largest projector rank");
    cmd->add_option("--family", a.family, "diagonal, rotated, generic or mixed");
    cmd->add_option("--seed", a.seed, "Base seed");
    cmd->add_option("--instance", a.instance, "Check one instance file instead");
    cmd->add_option("--qubit-cap", a.qubit_cap, "Largest register (system + stock)");
    cmd->add_option("--report", a.report, "Write the JSON report here");
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
    CLI::App app{"Commuting quantum local lemma solver and verifiers", "qlll"};
    app.require_subcommand(1);

    GenArgs gen_args;
    auto *gen = app.add_subcommand("gen", "Generate an instance file");
    auto *classical =
        gen->add_flag("--classical", gen_args.classical, "Random classical k-SAT layout");
    auto *rotate =
        gen->add_option("--rotate", gen_args.rotate, "Conjugate an instance by random local unitaries");
    classical->excludes(rotate);
    gen->add_option("-n", gen_args.n, "Qubits");
    gen->add_option("-k", gen_args.k, "Clause width");
    gen->add_option("-m", gen_args.m, "Clauses");
    gen->add_option("-g", gen_args.g, "Largest neighborhood size");
    gen->add_option("--seed", gen_args.seed, "Generator seed");
    gen->add_option("--delta", gen_args.delta, "Failure probability for the printed eta and T");
    gen->add_option("-o,--out", gen_args.out, "Output file (default: stdout)");

    RunArgs run_args;
    auto *run_cmd = app.add_subcommand("run", "Run seeded trials on an instance");
    run_cmd->add_option("--instance", run_args.instance, "Instance file")->required();
    run_cmd->add_option("--trials", run_args.trials, "Number of trials");
    run_cmd->add_option("--delta", run_args.delta, "Target failure probability");
    run_cmd->add_option("--seed", run_args.seed, "Base seed");
    run_cmd->add_option("--backend", run_args.backend, "trajectory, diagonal or density");
    run_cmd->add_option("--traversal", run_args.traversal, "ascending or random");
    run_cmd->add_option("--threshold", run_args.threshold, "Override the abort threshold T");
    run_cmd->add_option("--out", run_args.out, "Results JSON-lines file (default: stdout)");
    run_cmd->add_option("--summary", run_args.summary, "Summary JSON file");
    run_cmd->add_option("--hist-csv", run_args.hist_csv, "Failure-count histogram CSV");
    run_cmd->add_option("--workers", run_args.workers,
                        std::string("Worker threads (default: $") + kWorkersEnv + ")");
    run_cmd->add_option("--qubit-cap", run_args.qubit_cap, "Largest trajectory register");
    run_cmd->add_flag("--timing", run_args.timing, "Record elapsed_ns per trial");

    auto *verify = app.add_subcommand("verify", "Check one of the analytic claims");
    verify->require_subcommand(1);

    TreeArgs entropy_args;
    auto *entropy = verify->add_subcommand("entropy", "Entropy inequality on history trees");
    add_tree_options(entropy, entropy_args);
    TreeArgs counts_args;
    auto *counts = verify->add_subcommand("counts", "Branch length and entropy loss per leaf");
    add_tree_options(counts, counts_args);

    BinomArgs binom_args;
    auto *binom = verify->add_subcommand("binom", "C(m+gt,t) <= 2^m C(gt,t) over a grid");
    binom->add_option("--m", binom_args.m, "Range lo..hi");
    binom->add_option("--g", binom_args.g, "Range lo..hi");
    binom->add_option("--t", binom_args.t, "Range lo..hi");
    binom->add_option("--report", binom_args.report, "Write the JSON report here");

    ThresholdArgs threshold_args;
    auto *threshold = verify->add_subcommand("threshold", "(log2 T + m)/T <= 1/eta sweep");
    threshold->add_option("--k", threshold_args.k, "Value or range lo..hi");
    threshold->add_option("--g", threshold_args.g, "Value or range lo..hi");
    threshold->add_option("--r", threshold_args.r, "Value or range lo..hi");
    threshold->add_option("--delta", threshold_args.delta, "Comma separated list")
        ->delimiter(',');
    threshold->add_option("--m", threshold_args.m, "Range lo..hi, lo >= 2");
    threshold->add_option("--report", threshold_args.report, "Write the JSON report here");

    FailureArgs failure_args;
    auto *failure = verify->add_subcommand("failure-bound", "Empirical failure rate against delta");
    failure->add_option("--instance", failure_args.instance, "Instance file (default: generate)");
    failure->add_option("-n", failure_args.n, "Qubits of the generated instance");
    failure->add_option("-k", failure_args.k, "Clause width of the generated instance");
    failure->add_option("-m", failure_args.m, "Clauses of the generated instance");
    failure->add_option("-g", failure_args.g, "Neighborhood bound of the generated instance");
    failure->add_option("--gen-seed", failure_args.gen_seed, "Generator seed");
    failure->add_option("--trials", failure_args.trials, "Number of trials");
    failure->add_option("--delta", failure_args.delta, "Target failure probability");
    failure->add_option("--seed", failure_args.seed, "Base seed for the trials");
    failure->add_option("--backend", failure_args.backend, "Default: diagonal when possible");
    failure->add_option("--traversal", failure_args.traversal, "ascending or random");
    failure->add_option("--workers", failure_args.workers, "Worker threads");
    failure->add_option("--report", failure_args.report, "Write the JSON report here");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (gen->parsed() && !gen_args.classical && gen_args.rotate.empty()) {
            throw CLI::RequiredError("gen needs --classical or --rotate <file>");
        }
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(gen_args, out, err);
        }
        if (run_cmd->parsed()) {
            return cmd_run(run_args, out, err);
        }
        if (entropy->parsed()) {
            return cmd_verify_tree(entropy_args, false, out, err);
        }
        if (counts->parsed()) {
            return cmd_verify_tree(counts_args, true, out, err);
        }
        if (binom->parsed()) {
            return cmd_verify_binom(binom_args, out, err);
        }
        if (threshold->parsed()) {
            return cmd_verify_threshold(threshold_args, out, err);
        }
        if (failure->parsed()) {
            return cmd_verify_failure(failure_args, out, err);
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace qlll::cli
