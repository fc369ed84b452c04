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

#include <set>

#include "qlll/errors.hpp"
#include "qlll/generators.hpp"
#include "qlll/instance_io.hpp"
#include "test_support.hpp"

namespace qlll {
namespace {

TEST(Classical, SingleClause) {
    const auto inst = generate_classical_instance(3, 3, 1, 1, 42);
    ASSERT_EQ(inst.size(), 1u);
    EXPECT_EQ(inst.projector(0).support(), (Support{0, 1, 2}));
    ASSERT_TRUE(inst.projector(0).is_diagonal());
    EXPECT_EQ(inst.projector(0).diagonal_pattern()->size(), 1u);
}

TEST(Classical, DisjointTriples) {
    const auto inst = generate_classical_instance(9, 3, 3, 1, 5);
    std::set<std::size_t> used;
    for (const auto &p : inst.projectors()) {
        for (auto q : p.support()) {
            EXPECT_TRUE(used.insert(q).second);
        }
    }
    EXPECT_EQ(used.size(), 9u);
    EXPECT_EQ(inst.params().g, 1u);
}

TEST(Classical, DenseLayoutIsDeterministic) {
    const auto a = generate_classical_instance(20, 3, 12, 2, 7);
    const auto b = generate_classical_instance(20, 3, 12, 2, 7);
    EXPECT_EQ(serialize_instance(a), serialize_instance(b));
    EXPECT_EQ(a.params().k, 3u);
    EXPECT_EQ(a.params().r, 1u);
    EXPECT_LE(a.params().g, 2u);
    EXPECT_EQ(a.params().m, 12u);
    EXPECT_NE(serialize_instance(generate_classical_instance(20, 3, 12, 2, 8)),
              serialize_instance(a));
}

TEST(Classical, Infeasible) {
    // Four disjoint triples do not fit in 9 qubits.
    EXPECT_THROW(generate_classical_instance(9, 3, 4, 1, 0), InfeasibleLayout);
    EXPECT_THROW(generate_classical_instance(2, 3, 1, 1, 0), InvalidArgument);
}

// Property: classical output always has r = 1, one forbidden pattern per
// clause, exact support size k and respects the neighborhood bound.
TEST(ClassicalProperty, ShapeInvariants) {
    Rng rng(3);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t k = 1 + rng.below(4);
        const std::size_t n = k + rng.below(12);
        const std::size_t g = 1 + rng.below(4);
        const std::size_t m = 1 + rng.below(6);
        try {
            const auto inst = generate_classical_instance(n, k, m, g, rng.next());
            ASSERT_EQ(inst.params().r, 1u);
            ASSERT_LE(inst.params().g, g);
            ASSERT_EQ(inst.size(), m);
            for (const auto &p : inst.projectors()) {
                ASSERT_EQ(p.support().size(), k);
                ASSERT_EQ(p.diagonal_pattern()->size(), 1u);
            }
            ASSERT_TRUE(inst.commuting());
        } catch (const InfeasibleLayout &) {
            // Dense corners of the grid may be infeasible; that is allowed.
        }
    }
}

TEST(Rotate, HadamardOnSingleQubit) {
    const auto inst = testing::make_instance(1, {ProjectorSpec::diagonal({0}, {1})});
    const std::vector<Matrix2> rotations{hadamard()};
    const auto out = rotate_instance(inst, rotations);
    EXPECT_LT(max_abs(out.projector(0).matrix() - testing::minus_projector()), 1e-15);
    EXPECT_EQ(out.projector(0).rank(), 1u);
}

TEST(Rotate, IdentityKeepsInstance) {
    const auto inst = generate_classical_instance(6, 2, 3, 2, 1);
    const std::vector<Matrix2> rotations(6, Matrix2::Identity());
    EXPECT_EQ(rotate_instance(inst, rotations).projectors(), inst.projectors());
}

// Property: rotation preserves (k, r, g, m), supports and commutation.
TEST(RotateProperty, PreservesParamsAndCommutation) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto base = generate_classical_instance(10, 3, 6, 3, seed);
        const auto rotated = rotate_instance(base, seed + 100);
        ASSERT_EQ(rotated.params(), base.params());
        for (std::size_t i = 0; i < base.size(); ++i) {
            ASSERT_EQ(rotated.projector(i).support(), base.projector(i).support());
        }
        const auto report = validate_instance(rotated);
        ASSERT_TRUE(report.commuting);
        ASSERT_LE(report.max_commutator, kOperatorTolerance);
    }
}

TEST(Haar, UnitaryAndDeterministic) {
    Rng a(9), b(9);
    for (int i = 0; i < 100; ++i) {
        const Matrix2 u = haar_unitary_2x2(a);
        ASSERT_LT((u * u.adjoint() - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        ASSERT_EQ(u, haar_unitary_2x2(b));
    }
    Rng c(10);
    const Matrix u = haar_unitary(8, c);
    EXPECT_LT(max_abs(u * u.adjoint() - Matrix::Identity(8, 8)), 1e-12);
}

TEST(Haar, FirstColumnIsUniformOnTheSphere) {
    // E|u_00|^2 = 1/2 for Haar 2x2; check to 3 sigma over 20000 draws.
    Rng rng(12);
    const int draws = 20000;
    double sum = 0.0;
    for (int i = 0; i < draws; ++i) {
        sum += std::norm(haar_unitary_2x2(rng)(0, 0));
    }
    // |u_00|^2 is uniform on [0, 1]: variance 1/12.
    EXPECT_NEAR(sum / draws, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / draws));
}

TEST(RandomInstance, Families) {
    RandomInstanceOptions options;
    options.n = 3;
    options.k = 2;
    options.m = 3;
    options.family = RandomFamily::diagonal;
    EXPECT_TRUE(generate_random_instance(options, 1).diagonal());
    options.family = RandomFamily::rotated;
    EXPECT_TRUE(generate_random_instance(options, 1).commuting());
    options.family = RandomFamily::generic;
    bool any_noncommuting = false;
    for (std::uint64_t s = 0; s < 20; ++s) {
        const auto inst = generate_random_instance(options, s);
        for (const auto &p : inst.projectors()) {
            ASSERT_EQ(p.support().size(), 2u);
        }
        any_noncommuting = any_noncommuting || !inst.commuting();
    }
    EXPECT_TRUE(any_noncommuting);
}

} // namespace
} // namespace qlll
