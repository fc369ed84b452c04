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

#include <filesystem>
#include <fstream>

#include "qlll/errors.hpp"
#include "qlll/generators.hpp"
#include "qlll/instance_io.hpp"
#include "test_support.hpp"

namespace qlll {
namespace {

namespace fs = std::filesystem;

fs::path temp_path(const std::string &name) {
    return fs::temp_directory_path() / ("qlll_io_" + name);
}

TEST(InstanceIo, EmptyInstanceRoundTrips) {
    const auto inst = testing::make_instance(1, {});
    const auto text = serialize_instance(inst);
    EXPECT_EQ(parse_instance(text), inst);
    EXPECT_EQ(serialize_instance(parse_instance(text)), text);
}

TEST(InstanceIo, ClassicalInstanceResavesByteIdentically) {
    const auto inst = generate_classical_instance(20, 3, 12, 2, 7);
    const auto path = temp_path("classical.json");
    save_instance(inst, path);
    const auto loaded = load_instance(path);
    EXPECT_EQ(loaded, inst);
    EXPECT_EQ(serialize_instance(loaded), serialize_instance(inst));
    ASSERT_TRUE(loaded.meta().seed.has_value());
    EXPECT_EQ(*loaded.meta().seed, 7u);
    fs::remove(path);
}

TEST(InstanceIo, RotatedAndExplicitRoundTripExactly) {
    const auto rotated = rotate_instance(generate_classical_instance(8, 3, 4, 3, 1), 9);
    const auto again = parse_instance(serialize_instance(rotated));
    EXPECT_EQ(again, rotated);
    for (std::size_t i = 0; i < rotated.size(); ++i) {
        // Bitwise equality of the materialized matrices.
        EXPECT_EQ(again.projector(i).matrix(), rotated.projector(i).matrix());
    }

    Rng rng(4);
    const auto inst = testing::make_instance(
        3, {random_projector({0, 2}, 2, rng), random_projector({1}, 1, rng)});
    EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
}

TEST(InstanceIo, Layout) {
    const auto inst = testing::make_instance(
        3, {ProjectorSpec::diagonal({0, 1, 2}, {parse_bits("101")})});
    const auto j = instance_to_json(inst);
    EXPECT_EQ(j["n"], 3);
    EXPECT_EQ(j["projectors"][0]["kind"], "diagonal");
    EXPECT_EQ(j["projectors"][0]["forbidden"][0], "101");
    EXPECT_TRUE(j["meta"]["seed"].is_null());
}

TEST(InstanceIo, SupportIndexOutOfRangeIsParseError) {
    const std::string text = R"({
  "n": 2,
  "projectors": [
    {"support": [0, 2], "kind": "diagonal", "forbidden": ["11"]}
  ]
})";
    try {
        parse_instance(text);
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.field(), "projectors[0].support[1]");
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(InstanceIo, DiagnosticsForBadFields) {
    try {
        parse_instance(R"({"n": 2, "projectors": [{"support": [0], "kind": "weird"}]})");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.field(), "projectors[0].kind");
    }
    EXPECT_THROW(parse_instance("{\"n\": 2,\n \"projectors\": [\n"), ParseError);
    EXPECT_THROW(parse_instance(R"({"projectors": []})"), ParseError);
    // Explicit matrix that is not a projector.
    EXPECT_THROW(parse_instance(R"({"n": 1, "projectors": [{"support": [0],
        "kind": "explicit", "matrix": [[[1,0],[1,0]],[[0,0],[0,0]]]}]})"),
                 ParseError);
}

TEST(InstanceIo, MissingFileIsIoError) {
    EXPECT_THROW(load_instance(temp_path("does_not_exist.json")), IoError);
    EXPECT_THROW(save_instance(testing::make_instance(1, {}),
                               "/nonexistent-dir/x/instance.json"),
                 IoError);
}

// Property: random instances of every family survive a save/load cycle
// field for field and re-serialize to the same bytes.
TEST(InstanceIoProperty, RandomRoundTrip) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        RandomInstanceOptions options;
        options.n = 3 + seed % 3;
        options.k = 1 + seed % 3;
        options.m = seed % 5;
        options.max_rank = 1 + seed % 2;
        options.family = static_cast<RandomFamily>(seed % 3);
        const auto inst = generate_random_instance(options, seed);
        const auto text = serialize_instance(inst);
        const auto back = parse_instance(text);
        ASSERT_EQ(back, inst) << "seed " << seed;
        ASSERT_EQ(serialize_instance(back), text);
    }
}

} // namespace
} // namespace qlll
