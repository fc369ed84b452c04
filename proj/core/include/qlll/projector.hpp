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
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qlll/linalg.hpp"

namespace qlll {

/// Projector diagonal in the computational basis: the listed local basis
/// states are forbidden (the projector's range).
struct DiagonalBody {
    std::vector<std::uint32_t> forbidden;

    friend bool operator==(const DiagonalBody &, const DiagonalBody &) = default;
};

/// (U_0 (x) ... (x) U_{L-1}) D (U_0 (x) ... (x) U_{L-1})^dagger, with one
/// 2x2 unitary per support qubit in support order.
struct RotatedBody {
    DiagonalBody inner;
    std::vector<Matrix2> rotations;
};

struct ExplicitBody {
    Matrix matrix;
};

using ProjectorBody = std::variant<DiagonalBody, RotatedBody, ExplicitBody>;

enum class ProjectorKind { diagonal, rotated, explicit_matrix };

std::string_view to_string(ProjectorKind kind);

/// "101" -> 5 (first character is the most significant bit).
std::uint32_t parse_bits(std::string_view bits);
std::string format_bits(std::uint32_t value, std::size_t width);

/// A rank-r projector acting on a handful of qubits. Immutable; the dense
/// matrix on the support is materialized once at construction.
class ProjectorSpec {
  public:
    static ProjectorSpec diagonal(Support support,
                                  std::vector<std::uint32_t> forbidden);
    static ProjectorSpec rotated(Support support,
                                 std::vector<std::uint32_t> forbidden,
                                 std::vector<Matrix2> rotations);
    static ProjectorSpec explicit_matrix(Support support, Matrix matrix);
    /// The zero projector on `support`; never violated.
    static ProjectorSpec zero(Support support);

    const Support &support() const { return support_; }
    const ProjectorBody &body() const { return body_; }
    ProjectorKind kind() const;

    /// Dense 2^|support| square matrix on the support.
    const Matrix &matrix() const { return matrix_; }

    double trace() const { return trace_; }
    /// round(trace), floored at 0.
    std::size_t rank() const;

    /// max|P^dagger - P| and max|P^2 - P|.
    double hermiticity_residual() const;
    double idempotence_residual() const;

    /// Forbidden local basis states when the matrix is a 0/1 diagonal.
    const std::optional<std::vector<std::uint32_t>> &diagonal_pattern() const {
        return pattern_;
    }
    bool is_diagonal() const { return pattern_.has_value(); }
    /// Requires is_diagonal().
    bool forbids(std::uint32_t local) const { return mask_[local] != 0; }

    /// Conjugation by one 2x2 unitary per support qubit. Diagonal and
    /// rotated bodies stay rotated; explicit bodies stay explicit.
    ProjectorSpec conjugated(const std::vector<Matrix2> &rotations) const;

    friend bool operator==(const ProjectorSpec &a, const ProjectorSpec &b);

  private:
    ProjectorSpec(Support support, ProjectorBody body);

    Support support_;
    ProjectorBody body_;
    Matrix matrix_;
    double trace_ = 0.0;
    std::optional<std::vector<std::uint32_t>> pattern_;
    std::vector<char> mask_;
};

} // namespace qlll
