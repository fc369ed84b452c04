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

#include "qlll/projector.hpp"

#include <algorithm>
#include <cmath>

#include "qlll/errors.hpp"

namespace qlll {
namespace {

// Keeps local dimensions well inside what dense matrices can handle.
constexpr std::size_t kMaxSupport = 12;
// Entries this close to 0 or 1 count as exact when recognizing diagonals.
constexpr double kPatternTolerance = 1e-12;

void check_support(const Support &support) {
    if (support.size() > kMaxSupport) {
        throw MalformedProjector("support of size " +
                                 std::to_string(support.size()) +
                                 " exceeds the maximum of " +
                                 std::to_string(kMaxSupport));
    }
    Support sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw MalformedProjector("duplicate qubit in support");
    }
}

void normalize_forbidden(std::vector<std::uint32_t> &forbidden,
                         std::size_t width) {
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()),
                    forbidden.end());
    const std::uint64_t dim = std::uint64_t{1} << width;
    for (auto f : forbidden) {
        if (f >= dim) {
            throw MalformedProjector("forbidden pattern " + std::to_string(f) +
                                     " out of range for support size " +
                                     std::to_string(width));
        }
    }
}

Matrix diagonal_matrix(const DiagonalBody &body, std::size_t width) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << width);
    Matrix m = Matrix::Zero(dim, dim);
    for (auto f : body.forbidden) {
        m(f, f) = 1.0;
    }
    return m;
}

Matrix rotation_product(const std::vector<Matrix2> &rotations) {
    Matrix u = Matrix::Identity(1, 1);
    for (const auto &r : rotations) {
        u = kron(u, Matrix(r));
    }
    return u;
}

} // namespace

std::string_view to_string(ProjectorKind kind) {
    switch (kind) {
    case ProjectorKind::diagonal:
        return "diagonal";
    case ProjectorKind::rotated:
        return "rotated";
    case ProjectorKind::explicit_matrix:
        return "explicit";
    }
    return "unknown";
}

std::uint32_t parse_bits(std::string_view bits) {
    if (bits.size() > 32) {
        throw InvalidArgument("bit-string longer than 32 characters");
    }
    std::uint32_t value = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("bit-string may contain only '0' and '1'");
        }
        value = (value << 1) | static_cast<std::uint32_t>(c - '0');
    }
    return value;
}

std::string format_bits(std::uint32_t value, std::size_t width) {
    std::string out(width, '0');
    for (std::size_t j = 0; j < width; ++j) {
        if ((value >> (width - 1 - j)) & 1U) {
            out[j] = '1';
        }
    }
    return out;
}

ProjectorSpec::ProjectorSpec(Support support, ProjectorBody body)
    : support_(std::move(support)), body_(std::move(body)) {
    check_support(support_);
    const std::size_t width = support_.size();
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << width);

    if (auto *d = std::get_if<DiagonalBody>(&body_)) {
        normalize_forbidden(d->forbidden, width);
        matrix_ = diagonal_matrix(*d, width);
    } else if (auto *r = std::get_if<RotatedBody>(&body_)) {
        normalize_forbidden(r->inner.forbidden, width);
        if (r->rotations.size() != width) {
            throw MalformedProjector("rotated projector needs one rotation per "
                                     "support qubit");
        }
        const Matrix u = rotation_product(r->rotations);
        matrix_ = u * diagonal_matrix(r->inner, width) * u.adjoint();
    } else {
        auto &e = std::get<ExplicitBody>(body_);
        if (e.matrix.rows() != e.matrix.cols()) {
            throw MalformedProjector("explicit projector matrix is not square");
        }
        if (e.matrix.rows() != dim) {
            throw MalformedProjector(
                "explicit projector matrix has dimension " +
                std::to_string(e.matrix.rows()) + ", expected " +
                std::to_string(dim));
        }
        matrix_ = e.matrix;
    }
    trace_ = matrix_.trace().real();

    // Recognize 0/1 diagonal matrices regardless of representation.
    bool diagonal = true;
    std::vector<std::uint32_t> forbidden;
    for (Eigen::Index i = 0; i < dim && diagonal; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const Complex v = matrix_(i, j);
            if (i != j) {
                if (std::abs(v) > kPatternTolerance) {
                    diagonal = false;
                    break;
                }
            } else if (std::abs(v - 1.0) <= kPatternTolerance) {
                forbidden.push_back(static_cast<std::uint32_t>(i));
            } else if (std::abs(v) > kPatternTolerance) {
                diagonal = false;
                break;
            }
        }
    }
    if (diagonal) {
        mask_.assign(static_cast<std::size_t>(dim), 0);
        for (auto f : forbidden) {
            mask_[f] = 1;
        }
        pattern_ = std::move(forbidden);
    }
}

ProjectorSpec ProjectorSpec::diagonal(Support support,
                                      std::vector<std::uint32_t> forbidden) {
    return ProjectorSpec(std::move(support), DiagonalBody{std::move(forbidden)});
}

ProjectorSpec ProjectorSpec::rotated(Support support,
                                     std::vector<std::uint32_t> forbidden,
                                     std::vector<Matrix2> rotations) {
    return ProjectorSpec(std::move(support),
                         RotatedBody{DiagonalBody{std::move(forbidden)},
                                     std::move(rotations)});
}

ProjectorSpec ProjectorSpec::explicit_matrix(Support support, Matrix matrix) {
    return ProjectorSpec(std::move(support), ExplicitBody{std::move(matrix)});
}

ProjectorSpec ProjectorSpec::zero(Support support) {
    return diagonal(std::move(support), {});
}

ProjectorKind ProjectorSpec::kind() const {
    switch (body_.index()) {
    case 0:
        return ProjectorKind::diagonal;
    case 1:
        return ProjectorKind::rotated;
    default:
        return ProjectorKind::explicit_matrix;
    }
}

std::size_t ProjectorSpec::rank() const {
    return trace_ <= 0.0 ? 0 : static_cast<std::size_t>(std::llround(trace_));
}

double ProjectorSpec::hermiticity_residual() const {
    return max_abs(matrix_ - matrix_.adjoint());
}

double ProjectorSpec::idempotence_residual() const {
    return max_abs(matrix_ * matrix_ - matrix_);
}

ProjectorSpec
ProjectorSpec::conjugated(const std::vector<Matrix2> &rotations) const {
    if (rotations.size() != support_.size()) {
        throw InvalidArgument("conjugation needs one rotation per support qubit");
    }
    const bool identity = std::all_of(
        rotations.begin(), rotations.end(),
        [](const Matrix2 &u) { return u == Matrix2::Identity(); });
    if (identity) {
        return *this;
    }
    if (const auto *d = std::get_if<DiagonalBody>(&body_)) {
        return rotated(support_, d->forbidden, rotations);
    }
    if (const auto *r = std::get_if<RotatedBody>(&body_)) {
        std::vector<Matrix2> composed(rotations.size());
        for (std::size_t j = 0; j < rotations.size(); ++j) {
            composed[j] = rotations[j] * r->rotations[j];
        }
        return rotated(support_, r->inner.forbidden, std::move(composed));
    }
    const Matrix u = rotation_product(rotations);
    return explicit_matrix(support_, u * matrix_ * u.adjoint());
}

bool operator==(const ProjectorSpec &a, const ProjectorSpec &b) {
    if (a.support_ != b.support_ || a.body_.index() != b.body_.index()) {
        return false;
    }
    if (const auto *d = std::get_if<DiagonalBody>(&a.body_)) {
        return *d == std::get<DiagonalBody>(b.body_);
    }
    if (const auto *r = std::get_if<RotatedBody>(&a.body_)) {
        const auto &o = std::get<RotatedBody>(b.body_);
        if (r->inner != o.inner || r->rotations.size() != o.rotations.size()) {
            return false;
        }
        for (std::size_t j = 0; j < r->rotations.size(); ++j) {
            if (r->rotations[j] != o.rotations[j]) {
                return false;
            }
        }
        return true;
    }
    const auto &ma = std::get<ExplicitBody>(a.body_).matrix;
    const auto &mb = std::get<ExplicitBody>(b.body_).matrix;
    return ma.rows() == mb.rows() && ma.cols() == mb.cols() && ma == mb;
}

} // namespace qlll
