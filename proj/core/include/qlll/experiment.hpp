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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "qlll/instance.hpp"
#include "qlll/solver.hpp"

namespace qlll {

/// Environment variable consulted for the default worker count.
inline constexpr const char *kWorkersEnv = "QLLL_WORKERS";

struct ExperimentConfig {
    std::size_t trials = 1;
    std::uint64_t base_seed = 0;
    /// Seeds, traversal, backend and threshold for every trial; the seed
    /// field is replaced by derive_seed(base_seed, trial).
    SolverConfig solver;
    /// 0 picks the value of QLLL_WORKERS, or the hardware concurrency.
    std::size_t workers = 0;
    /// Keep wall-clock times in the results; off by default so that
    /// reruns produce byte-identical files.
    bool timing = false;
};

struct TrialResult {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    /// Set when the backend threw; the record is then default-constructed.
    std::optional<std::string> error;
    RunRecord record;
};

struct ExperimentSummary {
    std::size_t trials = 0;
    std::size_t successes = 0;
    std::size_t failures = 0;
    std::size_t errors = 0;
    double success_rate = 0.0;
    std::map<std::size_t, std::size_t> t_histogram;
    double mean_fix_calls = 0.0;
    std::size_t max_fix_calls = 0;
    /// Runs whose fix_calls exceeded m + g t.
    std::size_t fix_call_violations = 0;
    /// Successful runs of commuting instances left with energy > 1e-8.
    std::size_t unsatisfied_successes = 0;
    double max_energy = 0.0;
    std::size_t threshold_T = 0;
    std::optional<double> eta;
    /// Analytic failure bound, absent when the QLLL condition fails.
    std::optional<double> bound;
    double delta = 0.0;
    /// delta + 3 sqrt(delta (1 - delta) / trials).
    double band = 0.0;
    bool within_band = false;
};

std::size_t default_worker_count();

/// Runs the trials on a bounded worker pool. Results are ordered by trial
/// index and do not depend on the number of workers.
std::vector<TrialResult> run_trials(const Instance &instance,
                                    const ExperimentConfig &config);

ExperimentSummary summarize(const Instance &instance, const ExperimentConfig &config,
                            const std::vector<TrialResult> &results);

/// "0:12,1:1,0:3" for twelve 0s, one 1, three 0s.
std::string encode_rle(const std::vector<std::uint8_t> &outcomes);
std::vector<std::uint8_t> decode_rle(std::string_view text);

nlohmann::ordered_json to_json(const TrialResult &result, bool timing);
nlohmann::ordered_json to_json(const ExperimentSummary &summary);

void write_results_jsonl(std::ostream &out, const std::vector<TrialResult> &results,
                         bool timing);
void write_histogram_csv(std::ostream &out, const ExperimentSummary &summary);

} // namespace qlll
