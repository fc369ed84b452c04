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

#include "qlll/constants.hpp"
#include "qlll/errors.hpp"
#include "qlll/generators.hpp"
#include "qlll/instance.hpp"
#include "qlll/linalg.hpp"
#include "qlll/projector.hpp"
#include "test_support.hpp"

namespace qlll {
namespace {

TEST(Bits, BigEndianOverSupport) {
    EXPECT_EQ(parse_bits("101"), 5u);
    EXPECT_EQ(parse_bits("001"), 1u);
    EXPECT_EQ(format_bits(5, 3), "101");
    EXPECT_EQ(format_bits(1, 4), "0001");
    EXPECT_THROW(parse_bits("12"), Error);
}

TEST(LocalIndexer, FirstSupportQubitIsMostSignificant) {
    // Support (2, 0) on 3 qubits: local index 0b10 means qubit 2 set.
    const std::vector<std::size_t> support{2, 0};
    LocalIndexer idx(support, 3);
    ASSERT_EQ(idx.local_dim(), 4u);
    EXPECT_EQ(idx.local_offsets()[0b10], std::size_t{1} << 2);
    EXPECT_EQ(idx.local_offsets()[0b01], std::size_t{1} << 0);
    EXPECT_EQ(idx.rest_offsets().size(), 2u);
    EXPECT_EQ(idx.rest_offsets()[1], std::size_t{1} << 1);
}

TEST(Linalg, EmbedMatchesKronOnAdjacentQubits) {
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    const Matrix id = Matrix::Identity(2, 2);
    const std::vector<std::size_t> support{0};
    const std::vector<std::size_t> target{0, 1};
    EXPECT_LT(max_abs(embed(z, support, target) - kron(z, id)), 1e-15);
    const std::vector<std::size_t> second{1};
    EXPECT_LT(max_abs(embed(z, second, target) - kron(id, z)), 1e-15);
}

TEST(Linalg, ApplyLocalOnProductState) {
    // |00> on qubits (0, 1); X on qubit 1 gives global index 2.
    std::vector<Complex> amps(4, 0.0);
    amps[0] = 1.0;
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    const std::vector<std::size_t> support{1};
    apply_local(x, LocalIndexer(support, 2), amps);
    EXPECT_NEAR(std::abs(amps[2]), 1.0, 1e-15);
    EXPECT_NEAR(local_expectation(x, LocalIndexer(support, 2), amps), 0.0, 1e-15);
}

TEST(Linalg, Supports) {
    const std::vector<std::size_t> a{3, 1}, b{2, 3}, c{0};
    EXPECT_EQ(union_support(a, b), (Support{1, 2, 3}));
    EXPECT_TRUE(supports_overlap(a, b));
    EXPECT_FALSE(supports_overlap(a, c));
}

TEST(Projector, DiagonalClause) {
    const auto p = ProjectorSpec::diagonal({0, 1, 2}, {parse_bits("101")});
    EXPECT_EQ(p.kind(), ProjectorKind::diagonal);
    EXPECT_EQ(p.rank(), 1u);
    EXPECT_TRUE(p.is_diagonal());
    EXPECT_TRUE(p.forbids(0b101));
    EXPECT_FALSE(p.forbids(0b111));
    EXPECT_DOUBLE_EQ(p.matrix()(5, 5).real(), 1.0);
    EXPECT_DOUBLE_EQ(p.trace(), 1.0);
}

TEST(Projector, ZeroProjector) {
    const auto p = ProjectorSpec::zero({0, 1});
    EXPECT_EQ(p.rank(), 0u);
    EXPECT_DOUBLE_EQ(p.trace(), 0.0);
    EXPECT_TRUE(p.is_diagonal());
}

TEST(Projector, Malformed) {
    EXPECT_THROW(ProjectorSpec::diagonal({0, 0}, {0}), MalformedProjector);
    EXPECT_THROW(ProjectorSpec::diagonal({0}, {2}), MalformedProjector);
    Matrix not_projector(2, 2);
    not_projector << 1, 1, 0, 0;
    // Accepted as a spec, rejected once it joins an instance.
    const auto bad = ProjectorSpec::explicit_matrix({0}, not_projector);
    EXPECT_GT(bad.hermiticity_residual(), 0.1);
    EXPECT_THROW(Instance::create(1, {bad}), MalformedProjector);
    EXPECT_THROW(ProjectorSpec::explicit_matrix({0}, Matrix::Identity(4, 4)),
                 MalformedProjector);
    EXPECT_THROW(ProjectorSpec::explicit_matrix({0}, Matrix::Identity(2, 3)),
                 MalformedProjector);
}

TEST(Projector, HadamardTurnsOneIntoMinus) {
    const auto p = ProjectorSpec::diagonal({4}, {1});
    const auto q = p.conjugated({hadamard()});
    EXPECT_EQ(q.kind(), ProjectorKind::rotated);
    EXPECT_EQ(q.support(), p.support());
    EXPECT_EQ(q.rank(), 1u);
    EXPECT_LT(max_abs(q.matrix() - testing::minus_projector()), 1e-15);
    EXPECT_FALSE(q.is_diagonal());
}

TEST(Projector, IdentityRotationIsANoOp) {
    const auto p = ProjectorSpec::diagonal({0, 2}, {1, 2});
    const auto q = p.conjugated({Matrix2::Identity(), Matrix2::Identity()});
    EXPECT_EQ(q, p);
}

TEST(Projector, RotationsCompose) {
    const auto p = ProjectorSpec::diagonal({0}, {1});
    const auto twice = p.conjugated({hadamard()}).conjugated({hadamard()});
    EXPECT_LT(max_abs(twice.matrix() - p.matrix()), 1e-15);
}

// Property: every generated projector is Hermitian and idempotent within
// 1e-9 and its rank is the rounded trace.
TEST(ProjectorProperty, RandomProjectorsAreProjectors) {
    Rng rng(20261016);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t k = 1 + rng.below(3);
        const std::size_t rank = rng.below((std::size_t{1} << k) + 1);
        Support support;
        for (std::size_t q = 0; q < k; ++q) {
            support.push_back(q * 2 + rng.below(2));
        }
        const auto p = random_projector(support, rank, rng);
        ASSERT_LT(p.hermiticity_residual(), kOperatorTolerance);
        ASSERT_LT(p.idempotence_residual(), kOperatorTolerance);
        ASSERT_EQ(p.rank(), rank);
        ASSERT_NEAR(p.trace(), static_cast<double>(rank), kRankTolerance);

        std::vector<Matrix2> rotations;
        for (std::size_t q = 0; q < k; ++q) {
            rotations.push_back(haar_unitary_2x2(rng));
        }
        const auto q = p.conjugated(rotations);
        ASSERT_LT(q.idempotence_residual(), kOperatorTolerance);
        ASSERT_EQ(q.rank(), rank);
    }
}

} // namespace
} // namespace qlll
