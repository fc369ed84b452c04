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

#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "qlll/errors.hpp"
#include "qlll/experiment.hpp"
#include "qlll/generators.hpp"
#include "test_support.hpp"

namespace qlll {
namespace {

TEST(Rle, Examples) {
    std::vector<std::uint8_t> s(12, 0);
    s.push_back(1);
    s.insert(s.end(), 3, 0);
    EXPECT_EQ(encode_rle(s), "0:12,1:1,0:3");
    EXPECT_EQ(decode_rle("0:12,1:1,0:3"), s);
    EXPECT_EQ(encode_rle({}), "");
    EXPECT_TRUE(decode_rle("").empty());
    EXPECT_THROW(decode_rle("2:1"), InvalidArgument);
    EXPECT_THROW(decode_rle("0:0"), InvalidArgument);
    EXPECT_THROW(decode_rle("0:x"), InvalidArgument);
}

// Property: decode(encode(s)) == s for random bit strings.
TEST(RleProperty, RoundTrip) {
    Rng rng(1);
    for (int i = 0; i < 500; ++i) {
        std::vector<std::uint8_t> s(rng.below(60));
        for (auto &b : s) b = rng.bit();
        ASSERT_EQ(decode_rle(encode_rle(s)), s);
    }
}

TEST(Trials, SingleTrialOnEmptyInstance) {
    const auto inst = testing::make_instance(1, {});
    ExperimentConfig config;
    const auto results = run_trials(inst, config);
    ASSERT_EQ(results.size(), 1u);
    EXPECT_EQ(results[0].record.result, RunResult::success);
    const auto summary = summarize(inst, config, results);
    EXPECT_EQ(summary.success_rate, 1.0);
    EXPECT_FALSE(summary.bound.has_value());
}

TEST(Trials, IndependentOfWorkerCount) {
    const auto inst = rotate_instance(generate_classical_instance(8, 3, 4, 2, 3), 2);
    ExperimentConfig config;
    config.trials = 40;
    config.base_seed = 11;
    config.workers = 1;
    std::ostringstream one, four;
    write_results_jsonl(one, run_trials(inst, config), false);
    config.workers = 4;
    write_results_jsonl(four, run_trials(inst, config), false);
    EXPECT_EQ(one.str(), four.str());
    EXPECT_NE(one.str().find("\"elapsed_ns\":null"), std::string::npos);
}

TEST(Trials, SeedsAreDerivedPerTrial) {
    const auto inst = generate_classical_instance(6, 3, 2, 2, 1);
    ExperimentConfig config;
    config.trials = 5;
    config.base_seed = 42;
    const auto results = run_trials(inst, config);
    for (std::size_t i = 0; i < results.size(); ++i) {
        EXPECT_EQ(results[i].trial, i);
        EXPECT_EQ(results[i].seed, derive_seed(42, i));
        EXPECT_EQ(results[i].record.seed, results[i].seed);
    }
    config.trials = 0;
    EXPECT_THROW(run_trials(inst, config), InvalidArgument);
}

TEST(Trials, BackendErrorsAreRecordedPerTrial) {
    // The density backend cannot hold 10 qubits under its default cap.
    const auto inst = generate_classical_instance(10, 3, 2, 2, 1);
    ExperimentConfig config;
    config.trials = 3;
    config.solver.backend = BackendKind::density;
    const auto results = run_trials(inst, config);
    for (const auto &r : results) {
        ASSERT_TRUE(r.error.has_value());
    }
    const auto summary = summarize(inst, config, results);
    EXPECT_EQ(summary.errors, 3u);
    const auto j = to_json(results[0], false);
    EXPECT_EQ(j["result"], "Error");
}

TEST(Summary, FieldsAndHistogram) {
    const auto inst = generate_classical_instance(20, 3, 12, 2, 7);
    ExperimentConfig config;
    config.trials = 300;
    config.solver.delta = 0.25;
    config.solver.backend = BackendKind::diagonal;
    const auto results = run_trials(inst, config);
    const auto s = summarize(inst, config, results);
    EXPECT_EQ(s.trials, 300u);
    EXPECT_EQ(s.successes + s.failures, 300u);
    EXPECT_EQ(s.fix_call_violations, 0u);
    EXPECT_EQ(s.unsatisfied_successes, 0u);
    ASSERT_TRUE(s.bound.has_value());
    EXPECT_LE(*s.bound, 0.25);
    EXPECT_TRUE(s.within_band);
    std::size_t total = 0;
    for (const auto &[t, count] : s.t_histogram) total += count;
    EXPECT_EQ(total, 300u);
    EXPECT_LE(s.mean_fix_calls, static_cast<double>(s.max_fix_calls));

    std::ostringstream csv;
    write_histogram_csv(csv, s);
    EXPECT_EQ(csv.str().rfind("t,count\n", 0), 0u);
    const auto j = to_json(s);
    EXPECT_EQ(j["trials"], 300);
    EXPECT_TRUE(j.contains("t_histogram"));
}

TEST(Workers, EnvironmentDefault) {
    ::setenv(kWorkersEnv, "3", 1);
    EXPECT_EQ(default_worker_count(), 3u);
    ::setenv(kWorkersEnv, "zero", 1);
    EXPECT_GE(default_worker_count(), 1u);
    ::unsetenv(kWorkersEnv);
    EXPECT_GE(default_worker_count(), 1u);
}

} // namespace
} // namespace qlll
