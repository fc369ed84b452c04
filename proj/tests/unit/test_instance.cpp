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

#include <algorithm>

#include "qlll/errors.hpp"
#include "qlll/generators.hpp"
#include "qlll/instance.hpp"
#include "test_support.hpp"

namespace qlll {
namespace {

using testing::hp_margin;
using testing::make_instance;

ProjectorSpec clause(Support support, const char *bits = "111") {
    return ProjectorSpec::diagonal(std::move(support), {parse_bits(bits)});
}

TEST(Neighborhood, DisjointSupports) {
    const auto inst = make_instance(4, {ProjectorSpec::diagonal({0, 1}, {3}),
                                        ProjectorSpec::diagonal({2, 3}, {3})});
    EXPECT_EQ(inst.neighborhood()[0], (std::vector<std::size_t>{0}));
    EXPECT_EQ(inst.neighborhood()[1], (std::vector<std::size_t>{1}));
    EXPECT_EQ(inst.params().g, 1u);
}

TEST(Neighborhood, IdenticalSupports) {
    const auto inst = make_instance(2, {ProjectorSpec::diagonal({0, 1}, {3}),
                                        ProjectorSpec::diagonal({0, 1}, {0})});
    EXPECT_EQ(inst.neighborhood()[0], (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(inst.neighborhood()[1], (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(inst.params().g, 2u);
}

TEST(Neighborhood, Chain) {
    const auto inst = make_instance(
        7, {clause({0, 1, 2}), clause({2, 3, 4}), clause({4, 5, 6})});
    EXPECT_EQ(inst.neighborhood()[1], (std::vector<std::size_t>{0, 1, 2}));
    EXPECT_EQ(inst.neighborhood()[0], (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(inst.params().g, 3u);
    EXPECT_EQ(inst.params().k, 3u);
    EXPECT_EQ(inst.params().m, 3u);
    EXPECT_EQ(inst.params().r, 1u);
}

TEST(Params, RankZeroOnlyGivesROne) {
    const auto inst = make_instance(2, {ProjectorSpec::zero({0, 1})});
    EXPECT_EQ(inst.params().r, 1u);
    const auto two = make_instance(2, {ProjectorSpec::diagonal({0, 1}, {0, 3}),
                                       ProjectorSpec::zero({1})});
    EXPECT_EQ(two.params().r, 2u);
}

TEST(Params, EmptyInstance) {
    const auto inst = make_instance(1, {});
    EXPECT_EQ(inst.params().m, 0u);
    EXPECT_EQ(inst.params().k, 1u);
    EXPECT_EQ(inst.params().g, 1u);
    EXPECT_TRUE(inst.commuting());
    EXPECT_THROW(make_instance(0, {}), Error);
}

TEST(Condition, SpecExamples) {
    const auto a = check_qlll_condition({3, 1, 2, 1});
    EXPECT_TRUE(a.satisfied);
    EXPECT_TRUE(testing::same_digits(a.margin, hp_margin(3, 2, 1), 12));
    EXPECT_NEAR(a.margin, 0.5573, 5e-5);

    EXPECT_FALSE(check_qlll_condition({3, 2, 2, 1}).satisfied);
    EXPECT_TRUE(check_qlll_condition({5, 1, 11, 1}).satisfied);
    EXPECT_FALSE(check_qlll_condition({2, 1, 2, 1}).satisfied);
}

// Property: satisfied <=> margin > 0, and the margin matches the 50-digit
// reference, across a parameter grid.
TEST(ConditionProperty, MarginDefinesSatisfaction) {
    for (int k = 1; k <= 10; ++k) {
        for (int g = 1; g <= 400; g += 3) {
            for (int r = 1; r <= 4; ++r) {
                InstanceParams p{static_cast<std::size_t>(k), static_cast<std::size_t>(r),
                                 static_cast<std::size_t>(g), 5};
                const auto c = check_qlll_condition(p);
                ASSERT_EQ(c.satisfied, c.margin > 0.0);
                ASSERT_NEAR(c.margin, testing::to_double(hp_margin(k, g, r)), 1e-12);
                ASSERT_EQ(c.satisfied,
                          g < std::ldexp(1.0, k) / (r * std::exp(1.0)));
            }
        }
    }
}

TEST(Validate, DiagonalInstanceHasZeroResiduals) {
    const auto inst = make_instance(
        5, {clause({0, 1, 2}, "101"), clause({1, 2, 3}, "000"), clause({2, 3, 4})});
    const auto report = validate_instance(inst);
    EXPECT_TRUE(report.commuting);
    EXPECT_TRUE(report.projectors_valid);
    EXPECT_EQ(report.max_commutator, 0.0);
    EXPECT_EQ(report.pairs.size(), 3u);
    for (const auto &p : report.projectors) {
        EXPECT_EQ(p.idempotence, 0.0);
        EXPECT_EQ(p.hermiticity, 0.0);
    }
    EXPECT_TRUE(inst.diagonal());
}

TEST(Validate, ZeroAndPlusDoNotCommute) {
    const auto inst = make_instance(
        1, {ProjectorSpec::diagonal({0}, {0}),
            ProjectorSpec::explicit_matrix({0}, testing::plus_projector())});
    EXPECT_FALSE(inst.commuting());
    const auto report = validate_instance(inst);
    EXPECT_FALSE(report.commuting);
    // [|0><0|, |+><+|] has entries of magnitude 1/2.
    EXPECT_NEAR(report.max_commutator, 0.5, 1e-15);
}

TEST(Validate, SupportOutOfRange) {
    const std::vector<ProjectorSpec> projectors{clause({0, 1, 5})};
    EXPECT_THROW(validate_instance(3, projectors), MalformedProjector);
    EXPECT_THROW(make_instance(3, projectors), MalformedProjector);
}

TEST(Validate, RotatedInstanceCommutes) {
    const auto base = generate_classical_instance(12, 3, 8, 3, 5);
    const auto rotated = rotate_instance(base, 11);
    const auto report = validate_instance(rotated);
    EXPECT_TRUE(report.commuting);
    EXPECT_LE(report.max_commutator, kOperatorTolerance);
    EXPECT_FALSE(rotated.diagonal());
}

// Property: neighborhoods are reflexive, symmetric, sorted and exactly the
// overlapping projectors, on random layouts.
TEST(NeighborhoodProperty, ReflexiveSymmetricExact) {
    Rng rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 3 + rng.below(8);
        const std::size_t m = rng.below(9);
        std::vector<ProjectorSpec> projectors;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t k = 1 + rng.below(std::min<std::size_t>(3, n));
            std::vector<std::size_t> pool(n);
            for (std::size_t q = 0; q < n; ++q) pool[q] = q;
            rng.shuffle(pool.begin(), pool.end());
            pool.resize(k);
            projectors.push_back(ProjectorSpec::diagonal(pool, {0}));
        }
        const auto inst = make_instance(n, projectors);
        const auto &nb = inst.neighborhood();
        std::size_t g = 1;
        for (std::size_t i = 0; i < m; ++i) {
            ASSERT_TRUE(std::is_sorted(nb[i].begin(), nb[i].end()));
            g = std::max(g, nb[i].size());
            for (std::size_t j = 0; j < m; ++j) {
                const bool listed =
                    std::find(nb[i].begin(), nb[i].end(), j) != nb[i].end();
                const bool mirrored =
                    std::find(nb[j].begin(), nb[j].end(), i) != nb[j].end();
                ASSERT_EQ(listed, mirrored);
                ASSERT_EQ(listed, supports_overlap(projectors[i].support(),
                                                   projectors[j].support()));
            }
        }
        ASSERT_EQ(inst.params().g, g);
    }
}

} // namespace
} // namespace qlll
