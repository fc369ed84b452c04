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

#include "qlll/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <thread>

#include "qlll/constants.hpp"
#include "qlll/errors.hpp"
#include "qlll/log.hpp"
#include "qlll/random.hpp"

namespace qlll {

using nlohmann::ordered_json;

std::size_t default_worker_count() {
    if (const char *env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
        std::size_t value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] =
            std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc() && ptr == text.data() + text.size() && value > 0) {
            return value;
        }
        warn(std::string("ignoring malformed ") + kWorkersEnv + "='" + env + "'");
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::vector<TrialResult> run_trials(const Instance &instance,
                                    const ExperimentConfig &config) {
    if (config.trials == 0) {
        throw InvalidArgument("trials must be at least 1");
    }
    validate_config(config.solver);
    // Surfaces condition and threshold errors once instead of per trial.
    derive_params(instance.params(), config.solver);

    std::vector<TrialResult> results(config.trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < config.trials; i = next++) {
            TrialResult &slot = results[i];
            slot.trial = i;
            slot.seed = derive_seed(config.base_seed, i);
            SolverConfig solver = config.solver;
            solver.seed = slot.seed;
            try {
                slot.record = run(instance, solver);
            } catch (const std::exception &e) {
                slot.error = e.what();
                slot.record = RunRecord{};
                slot.record.seed = slot.seed;
            }
        }
    };

    const std::size_t workers =
        std::min(config.trials,
                 config.workers == 0 ? default_worker_count() : config.workers);
    if (workers <= 1) {
        worker();
        return results;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return results;
}

ExperimentSummary summarize(const Instance &instance, const ExperimentConfig &config,
                            const std::vector<TrialResult> &results) {
    const InstanceParams params = instance.params();
    const DerivedParams derived = derive_params(params, config.solver);

    ExperimentSummary s;
    s.trials = results.size();
    s.threshold_T = derived.threshold_T;
    s.eta = derived.eta;
    s.delta = config.solver.delta;
    if (derived.margin > 0.0 && params.m > 0) {
        s.bound = failure_bound(derived.threshold_T, params.m, params.k, params.g,
                                params.r);
    }
    double fix_sum = 0.0;
    std::size_t completed = 0;
    for (const auto &r : results) {
        if (r.error) {
            ++s.errors;
            continue;
        }
        ++completed;
        const RunRecord &rec = r.record;
        if (rec.result == RunResult::success) {
            ++s.successes;
            if (rec.guaranteed && !rec.satisfied) {
                ++s.unsatisfied_successes;
            }
        } else {
            ++s.failures;
        }
        ++s.t_histogram[rec.failures_t];
        fix_sum += static_cast<double>(rec.fix_calls);
        s.max_fix_calls = std::max(s.max_fix_calls, rec.fix_calls);
        if (rec.fix_calls > params.m + params.g * rec.failures_t) {
            ++s.fix_call_violations;
        }
        s.max_energy = std::max(s.max_energy, rec.max_energy);
    }
    if (completed > 0) {
        s.success_rate =
            static_cast<double>(s.successes) / static_cast<double>(completed);
        s.mean_fix_calls = fix_sum / static_cast<double>(completed);
        const double n = static_cast<double>(completed);
        s.band = s.delta + 3.0 * std::sqrt(s.delta * (1.0 - s.delta) / n);
        s.within_band = static_cast<double>(s.failures) / n <= s.band;
    }
    return s;
}

std::string encode_rle(const std::vector<std::uint8_t> &outcomes) {
    std::string out;
    std::size_t i = 0;
    while (i < outcomes.size()) {
        std::size_t j = i;
        while (j < outcomes.size() && outcomes[j] == outcomes[i]) {
            ++j;
        }
        if (!out.empty()) {
            out += ',';
        }
        out += outcomes[i] ? '1' : '0';
        out += ':';
        out += std::to_string(j - i);
        i = j;
    }
    return out;
}

std::vector<std::uint8_t> decode_rle(std::string_view text) {
    std::vector<std::uint8_t> out;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view run = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{}
                                               : text.substr(comma + 1);
        if (run.size() < 3 || (run[0] != '0' && run[0] != '1') || run[1] != ':') {
            throw InvalidArgument("malformed run-length entry '" + std::string(run) +
                                  "'");
        }
        std::size_t count = 0;
        const auto digits = run.substr(2);
        const auto [ptr, ec] =
            std::from_chars(digits.data(), digits.data() + digits.size(), count);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || count == 0) {
            throw InvalidArgument("malformed run-length entry '" + std::string(run) +
                                  "'");
        }
        out.insert(out.end(), count, static_cast<std::uint8_t>(run[0] - '0'));
    }
    return out;
}

ordered_json to_json(const TrialResult &r, bool timing) {
    ordered_json j;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    if (r.error) {
        j["result"] = "Error";
        j["error"] = *r.error;
    } else {
        j["result"] = std::string(to_string(r.record.result));
    }
    j["t"] = r.record.failures_t;
    j["fix_calls"] = r.record.fix_calls;
    j["outcome_rle"] = encode_rle(r.record.outcome_string);
    j["max_energy"] = r.record.max_energy;
    if (timing && !r.error) {
        j["elapsed_ns"] = r.record.elapsed_ns;
    } else {
        j["elapsed_ns"] = nullptr;
    }
    return j;
}

ordered_json to_json(const ExperimentSummary &s) {
    ordered_json j;
    j["trials"] = s.trials;
    j["successes"] = s.successes;
    j["failures"] = s.failures;
    j["errors"] = s.errors;
    j["success_rate"] = s.success_rate;
    ordered_json hist = ordered_json::object();
    for (const auto &[t, count] : s.t_histogram) {
        hist[std::to_string(t)] = count;
    }
    j["t_histogram"] = std::move(hist);
    j["mean_fix_calls"] = s.mean_fix_calls;
    j["max_fix_calls"] = s.max_fix_calls;
    j["fix_call_violations"] = s.fix_call_violations;
    j["unsatisfied_successes"] = s.unsatisfied_successes;
    j["max_energy"] = s.max_energy;
    j["T"] = s.threshold_T;
    j["eta"] = s.eta ? ordered_json(*s.eta) : ordered_json(nullptr);
    j["bound"] = s.bound ? ordered_json(*s.bound) : ordered_json(nullptr);
    j["delta"] = s.delta;
    j["band"] = s.band;
    j["within_band"] = s.within_band;
    return j;
}

void write_results_jsonl(std::ostream &out, const std::vector<TrialResult> &results,
                         bool timing) {
    for (const auto &r : results) {
        out << to_json(r, timing).dump() << '\n';
    }
}

void write_histogram_csv(std::ostream &out, const ExperimentSummary &summary) {
    out << "t,count\n";
    for (const auto &[t, count] : summary.t_histogram) {
        out << t << ',' << count << '\n';
    }
}

} // namespace qlll
