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
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlll/history.hpp"
#include "qlll/solver.hpp"

namespace qlll {

/// Inclusive integer range, written "lo..hi" or "v".
struct IntRange {
    std::int64_t lo = 0;
    std::int64_t hi = 0;

    /// Throws InvalidArgument on malformed text or lo > hi.
    static IntRange parse(std::string_view text);
    std::string str() const;
};

// ---------------------------------------------------------------------------
// Entropy inequality over a history tree:
//   S(rho_init) <= H({p_s}) + sum_s p_s S(rho_s).

struct EntropyClaimReport {
    double lhs = 0.0;           ///< n + N
    double initial_entropy = 0.0; ///< S(rho_init) as computed
    double shannon = 0.0;       ///< H({p_s})
    double mean_entropy = 0.0;  ///< sum_s p_s S(rho_s)
    double rhs = 0.0;
    double probability_sum = 0.0;
    /// |probability_sum - 1| within 1e-9 plus the pruned mass.
    bool complete = false;
    std::size_t leaves = 0;
    bool holds = false;
};

/// Leaf probabilities are renormalized by their sum before H is taken, so
/// pruned mass (below 1e-12 per branch) does not trip the normalization
/// check.
EntropyClaimReport check_entropy_claim(const HistoryTree &tree);

// ---------------------------------------------------------------------------
// Per-leaf counting bounds: |s| <= m + g t and S(rho_s) <= N + n - t (k - log2 r).

struct CountBoundReport {
    std::size_t leaves_checked = 0;
    std::size_t length_violations = 0;
    std::size_t entropy_violations = 0;
    /// min over leaves of (m + g t) - |s|.
    double min_length_margin = 0.0;
    /// min over leaves of bound - S(rho_s).
    double min_entropy_margin = 0.0;
    bool holds = true;
};

CountBoundReport check_history_count_bound(const HistoryTree &tree,
                                           const InstanceParams &params);

// ---------------------------------------------------------------------------
// Binomial bound C(m + g t, t) <= 2^m C(g t, t), valid for g >= 2, t >= 1.

struct BinomialViolation {
    std::int64_t m = 0;
    std::int64_t g = 0;
    std::int64_t t = 0;
    bool within_validity = true;
    std::string lhs; ///< exact decimal value of C(m + g t, t)
    std::string rhs; ///< exact decimal value of 2^m C(g t, t)
};

struct BinomialReport {
    IntRange m_range, g_range, t_range;
    std::size_t checked = 0;
    std::size_t equalities = 0;
    std::vector<BinomialViolation> violations;
    /// Violations inside the validity region.
    std::size_t validity_violations = 0;
    /// log2 C(g t, t) <= t log2(g e) and the full chain
    /// log2 C(m + g t, t) <= m + t log2(g e), on valid points.
    std::size_t chain_checked = 0;
    std::size_t chain_violations = 0;
    bool holds = true;
};

/// Exhaustive check with arbitrary-precision integers. Points outside the
/// validity region (g < 2 or t < 1) are reported but do not affect `holds`.
BinomialReport check_binomial_inequality(IntRange m_range, IntRange g_range,
                                         IntRange t_range);

// ---------------------------------------------------------------------------
// Threshold inequality (log2 T + m) / T <= 1 / eta for T = ceil(4 m eta log2(eta + 2)).

struct ThresholdRow {
    std::size_t m = 0;
    double eta = 0.0;
    std::size_t T = 0;
    double lhs = 0.0;    ///< (log2 T + m) / T with the ceiling
    double rhs = 0.0;    ///< 1 / eta
    double margin = 0.0; ///< rhs - lhs
    double T_real = 0.0; ///< 4 m eta log2(eta + 2)
    double lhs_real = 0.0;
    double log4m_term = 0.0;   ///< log2(4m) / m                              <= 2
    double eta_term = 0.0;     ///< (log2 eta + log2 log2(eta+2)) / (m log2(eta+2)) <= 1
    double linear_term = 0.0;  ///< m / (m log2(eta + 2))                     <= 1
    double combined = 0.0;     ///< sum of the numerators over m log2(eta+2)  <= 4
    bool holds = false;
};

struct ThresholdReport {
    std::size_t k = 0, g = 0, r = 0;
    double delta = 0.0;
    std::vector<ThresholdRow> rows;
    double min_margin = 0.0;
    bool holds = true;
};

/// Throws InvalidArgument when the m range reaches below 2 and
/// ConditionViolated when k <= log2(g e r).
ThresholdReport check_threshold_inequality(std::size_t k, std::size_t g,
                                           std::size_t r, double delta,
                                           IntRange m_range);

// ---------------------------------------------------------------------------
// Empirical failure rate against (log2 T + m) / (T (k - log2(g e r))) <= delta.

struct FailureBoundReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    double p_hat = 0.0;
    double bound = 0.0; ///< analytic B
    double delta = 0.0;
    /// delta + 3 sqrt(delta (1 - delta) / trials)
    double band = 0.0;
    std::size_t threshold_T = 0;
    bool bound_le_delta = false;
    bool empirical_within_band = false;
    /// Empirical distribution of the failure count t.
    std::map<std::size_t, std::size_t> t_histogram;
    bool holds = false;
};

inline constexpr std::size_t kMinFailureBoundTrials = 100;

/// Throws InsufficientTrials below 100 records, ConditionViolated when the
/// margin k - log2(g e r) is not positive.
FailureBoundReport check_failure_bound(std::span<const RunRecord> records,
                                       const InstanceParams &params,
                                       const DerivedParams &derived,
                                       double delta);

// ---------------------------------------------------------------------------
// JSON reports: claim id, inputs, computed values, pass/fail, tolerance.

nlohmann::ordered_json to_json(const EntropyClaimReport &report);
nlohmann::ordered_json to_json(const CountBoundReport &report);
nlohmann::ordered_json to_json(const BinomialReport &report);
nlohmann::ordered_json to_json(const ThresholdReport &report);
nlohmann::ordered_json to_json(const FailureBoundReport &report);

} // namespace qlll
