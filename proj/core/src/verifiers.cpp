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

#include "qlll/verifiers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "qlll/constants.hpp"
#include "qlll/entropy.hpp"
#include "qlll/errors.hpp"

namespace qlll {
namespace {

using boost::multiprecision::cpp_int;
using nlohmann::ordered_json;

// Relative slack when comparing a log2 of an exact integer with a bound
// evaluated in floating point.
constexpr double kChainSlack = 1e-12;

cpp_int binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) {
        return 0;
    }
    k = std::min(k, n - k);
    cpp_int c = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i;
    }
    return c;
}

double log2_of(const cpp_int &value) {
    if (value <= 0) {
        return -std::numeric_limits<double>::infinity();
    }
    const std::size_t msb = boost::multiprecision::msb(value);
    if (msb < 60) {
        return std::log2(static_cast<double>(value.convert_to<std::uint64_t>()));
    }
    const std::size_t shift = msb - 60;
    const cpp_int top = value >> shift;
    return std::log2(static_cast<double>(top.convert_to<std::uint64_t>())) +
           static_cast<double>(shift);
}

std::int64_t parse_int(std::string_view text, std::string_view whole) {
    std::int64_t value = 0;
    const auto *end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw InvalidArgument("malformed range '" + std::string(whole) + "'");
    }
    return value;
}

ordered_json range_json(const IntRange &r) { return {r.lo, r.hi}; }

} // namespace

IntRange IntRange::parse(std::string_view text) {
    IntRange range;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        range.lo = parse_int(text.substr(0, dots), text);
        range.hi = parse_int(text.substr(dots + 2), text);
    } else {
        range.lo = range.hi = parse_int(text, text);
    }
    if (range.lo > range.hi) {
        throw InvalidArgument("empty range '" + std::string(text) + "'");
    }
    return range;
}

std::string IntRange::str() const {
    return lo == hi ? std::to_string(lo)
                    : std::to_string(lo) + ".." + std::to_string(hi);
}

EntropyClaimReport check_entropy_claim(const HistoryTree &tree) {
    EntropyClaimReport report;
    report.lhs = static_cast<double>(tree.system_qubits + tree.stock_qubits);
    report.initial_entropy = tree.initial_entropy;
    report.leaves = tree.leaves.size();

    std::vector<double> probabilities;
    probabilities.reserve(tree.leaves.size());
    for (const auto &leaf : tree.leaves) {
        probabilities.push_back(leaf.probability);
        report.probability_sum += leaf.probability;
    }
    if (report.probability_sum > 0.0) {
        for (auto &p : probabilities) {
            p /= report.probability_sum;
        }
    }
    report.shannon = shannon_entropy(probabilities);
    for (std::size_t i = 0; i < tree.leaves.size(); ++i) {
        report.mean_entropy += probabilities[i] * tree.leaves[i].state.entropy();
    }
    report.rhs = report.shannon + report.mean_entropy;
    report.complete = std::abs(report.probability_sum - 1.0) <=
                      kNormTolerance + tree.pruned_mass;
    report.holds = report.complete && report.lhs <= report.rhs + kEntropySlack;
    return report;
}

CountBoundReport check_history_count_bound(const HistoryTree &tree,
                                           const InstanceParams &params) {
    CountBoundReport report;
    report.min_length_margin = std::numeric_limits<double>::infinity();
    report.min_entropy_margin = std::numeric_limits<double>::infinity();
    const double per_failure = static_cast<double>(params.k) -
                               std::log2(static_cast<double>(params.r));
    const double total =
        static_cast<double>(tree.system_qubits + tree.stock_qubits);
    for (const auto &leaf : tree.leaves) {
        ++report.leaves_checked;
        const double t = static_cast<double>(leaf.failures);
        const double length_bound = static_cast<double>(params.m) +
                                    static_cast<double>(params.g) * t;
        const double length_margin =
            length_bound - static_cast<double>(leaf.branch_string.size());
        report.min_length_margin = std::min(report.min_length_margin, length_margin);
        if (length_margin < 0.0) {
            ++report.length_violations;
        }
        const double entropy_margin =
            total - t * per_failure - leaf.state.entropy();
        report.min_entropy_margin =
            std::min(report.min_entropy_margin, entropy_margin);
        if (entropy_margin < -kEntropySlack) {
            ++report.entropy_violations;
        }
    }
    if (report.leaves_checked == 0) {
        report.min_length_margin = 0.0;
        report.min_entropy_margin = 0.0;
    }
    report.holds = report.length_violations == 0 && report.entropy_violations == 0;
    return report;
}

BinomialReport check_binomial_inequality(IntRange m_range, IntRange g_range,
                                         IntRange t_range) {
    if (m_range.lo < 0 || g_range.lo < 0 || t_range.lo < 0) {
        throw InvalidArgument("binomial grid ranges must be non-negative");
    }
    BinomialReport report;
    report.m_range = m_range;
    report.g_range = g_range;
    report.t_range = t_range;
    for (std::int64_t g = g_range.lo; g <= g_range.hi; ++g) {
        const double log2_ge = std::log2(static_cast<double>(g)) + kLog2E;
        for (std::int64_t t = t_range.lo; t <= t_range.hi; ++t) {
            const cpp_int base = binomial(g * t, t);
            const bool valid_gt = g >= 2 && t >= 1;
            if (valid_gt) {
                ++report.chain_checked;
                const double chain = static_cast<double>(t) * log2_ge;
                if (log2_of(base) > chain * (1.0 + kChainSlack)) {
                    ++report.chain_violations;
                }
            }
            for (std::int64_t m = m_range.lo; m <= m_range.hi; ++m) {
                ++report.checked;
                const cpp_int lhs = binomial(m + g * t, t);
                const cpp_int rhs = base << static_cast<unsigned>(m);
                if (lhs == rhs) {
                    ++report.equalities;
                }
                if (valid_gt) {
                    const double full =
                        static_cast<double>(m) + static_cast<double>(t) * log2_ge;
                    if (log2_of(lhs) > full * (1.0 + kChainSlack)) {
                        ++report.chain_violations;
                    }
                }
                if (lhs > rhs) {
                    report.violations.push_back(
                        {m, g, t, valid_gt, lhs.str(), rhs.str()});
                    if (valid_gt) {
                        ++report.validity_violations;
                    }
                }
            }
        }
    }
    report.holds = report.validity_violations == 0 && report.chain_violations == 0;
    return report;
}

ThresholdReport check_threshold_inequality(std::size_t k, std::size_t g,
                                           std::size_t r, double delta,
                                           IntRange m_range) {
    if (m_range.lo < 2) {
        throw InvalidArgument("the threshold inequality is only claimed for m >= 2");
    }
    const double eta = compute_eta(k, g, r, delta);
    ThresholdReport report;
    report.k = k;
    report.g = g;
    report.r = r;
    report.delta = delta;
    report.min_margin = std::numeric_limits<double>::infinity();
    const double log_eta2 = std::log2(eta + 2.0);
    for (std::int64_t mi = m_range.lo; mi <= m_range.hi; ++mi) {
        const auto m = static_cast<std::size_t>(mi);
        const double md = static_cast<double>(m);
        ThresholdRow row;
        row.m = m;
        row.eta = eta;
        row.T = compute_threshold(m, eta);
        const double T = static_cast<double>(row.T);
        row.lhs = (std::log2(T) + md) / T;
        row.rhs = 1.0 / eta;
        row.margin = row.rhs - row.lhs;
        row.T_real = 4.0 * md * eta * log_eta2;
        row.lhs_real = (std::log2(row.T_real) + md) / row.T_real;
        row.log4m_term = std::log2(4.0 * md) / md;
        row.eta_term = (std::log2(eta) + std::log2(log_eta2)) / (md * log_eta2);
        row.linear_term = md / (md * log_eta2);
        row.combined = (std::log2(4.0 * md) + std::log2(eta) +
                        std::log2(log_eta2) + md) /
                       (md * log_eta2);
        row.holds = row.margin > 0.0 && row.lhs_real <= row.rhs &&
                    row.log4m_term <= 2.0 && row.eta_term <= 1.0 &&
                    row.linear_term <= 1.0 && row.combined <= 4.0;
        report.min_margin = std::min(report.min_margin, row.margin);
        report.holds = report.holds && row.holds;
        report.rows.push_back(row);
    }
    return report;
}

FailureBoundReport check_failure_bound(std::span<const RunRecord> records,
                                       const InstanceParams &params,
                                       const DerivedParams &derived,
                                       double delta) {
    if (records.size() < kMinFailureBoundTrials) {
        throw InsufficientTrials("need at least " +
                                 std::to_string(kMinFailureBoundTrials) +
                                 " trials, got " + std::to_string(records.size()));
    }
    if (!(qlll_margin(params.k, params.g, params.r) > 0.0)) {
        throw ConditionViolated("failure bound needs k - log2(g e r) > 0");
    }
    FailureBoundReport report;
    report.trials = records.size();
    report.delta = delta;
    report.threshold_T = derived.threshold_T;
    for (const auto &rec : records) {
        if (rec.result == RunResult::failure) {
            ++report.failures;
        }
        ++report.t_histogram[rec.failures_t];
    }
    const double trials = static_cast<double>(report.trials);
    report.p_hat = static_cast<double>(report.failures) / trials;
    report.bound = failure_bound(derived.threshold_T, params.m, params.k,
                                 params.g, params.r);
    report.band = delta + 3.0 * std::sqrt(delta * (1.0 - delta) / trials);
    report.bound_le_delta = report.bound <= delta;
    report.empirical_within_band = report.p_hat <= report.band;
    report.holds = report.bound_le_delta && report.empirical_within_band;
    return report;
}

ordered_json to_json(const EntropyClaimReport &r) {
    ordered_json j;
    j["claim"] = "entropy";
    j["inputs"] = {{"leaves", r.leaves}};
    j["probability_sum"] = r.probability_sum;
    j["complete"] = r.complete;
    j["lhs"] = r.lhs;
    j["initial_entropy"] = r.initial_entropy;
    j["shannon"] = r.shannon;
    j["mean_entropy"] = r.mean_entropy;
    j["rhs"] = r.rhs;
    j["margin"] = r.rhs - r.lhs;
    j["tolerance"] = kEntropySlack;
    j["pass"] = r.holds;
    return j;
}

ordered_json to_json(const CountBoundReport &r) {
    ordered_json j;
    j["claim"] = "counts";
    j["inputs"] = {{"leaves", r.leaves_checked}};
    j["length_violations"] = r.length_violations;
    j["entropy_violations"] = r.entropy_violations;
    j["min_length_margin"] = r.min_length_margin;
    j["min_entropy_margin"] = r.min_entropy_margin;
    j["tolerance"] = kEntropySlack;
    j["pass"] = r.holds;
    return j;
}

ordered_json to_json(const BinomialReport &r) {
    ordered_json j;
    j["claim"] = "binom";
    j["inputs"] = {{"m", range_json(r.m_range)},
                   {"g", range_json(r.g_range)},
                   {"t", range_json(r.t_range)}};
    j["checked"] = r.checked;
    j["equalities"] = r.equalities;
    j["validity_violations"] = r.validity_violations;
    j["chain_checked"] = r.chain_checked;
    j["chain_violations"] = r.chain_violations;
    ordered_json list = ordered_json::array();
    for (const auto &v : r.violations) {
        list.push_back({{"m", v.m},
                        {"g", v.g},
                        {"t", v.t},
                        {"within_validity", v.within_validity},
                        {"lhs", v.lhs},
                        {"rhs", v.rhs}});
    }
    j["violations"] = std::move(list);
    j["tolerance"] = "exact";
    j["pass"] = r.holds;
    return j;
}

ordered_json to_json(const ThresholdReport &r) {
    ordered_json j;
    j["claim"] = "threshold";
    j["inputs"] = {{"k", r.k}, {"g", r.g}, {"r", r.r}, {"delta", r.delta}};
    ordered_json rows = ordered_json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"m", row.m},
                        {"eta", row.eta},
                        {"T", row.T},
                        {"lhs", row.lhs},
                        {"rhs", row.rhs},
                        {"margin", row.margin},
                        {"T_real", row.T_real},
                        {"lhs_real", row.lhs_real},
                        {"log4m_term", row.log4m_term},
                        {"eta_term", row.eta_term},
                        {"linear_term", row.linear_term},
                        {"combined", row.combined},
                        {"pass", row.holds}});
    }
    j["rows"] = std::move(rows);
    j["min_margin"] = r.min_margin;
    j["tolerance"] = "strict";
    j["pass"] = r.holds;
    return j;
}

ordered_json to_json(const FailureBoundReport &r) {
    ordered_json j;
    j["claim"] = "failure-bound";
    j["inputs"] = {{"trials", r.trials}, {"delta", r.delta}, {"T", r.threshold_T}};
    j["failures"] = r.failures;
    j["p_hat"] = r.p_hat;
    j["bound"] = r.bound;
    j["band"] = r.band;
    j["bound_le_delta"] = r.bound_le_delta;
    j["empirical_within_band"] = r.empirical_within_band;
    ordered_json hist = ordered_json::object();
    for (const auto &[t, count] : r.t_histogram) {
        hist[std::to_string(t)] = count;
    }
    j["t_histogram"] = std::move(hist);
    j["tolerance"] = "3 sigma normal approximation";
    j["pass"] = r.holds;
    return j;
}

} // namespace qlll
