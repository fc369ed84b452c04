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

#include "qlll/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace qlll {

LocalIndexer::LocalIndexer(std::span<const std::size_t> support,
                           std::size_t num_qubits) {
    const std::size_t width = support.size();
    local_.assign(std::size_t{1} << width, 0);
    for (std::size_t l = 0; l < local_.size(); ++l) {
        std::size_t offset = 0;
        for (std::size_t j = 0; j < width; ++j) {
            if ((l >> (width - 1 - j)) & 1U) {
                offset |= std::size_t{1} << support[j];
            }
        }
        local_[l] = offset;
    }

    std::size_t support_mask = 0;
    for (std::size_t q : support) {
        support_mask |= std::size_t{1} << q;
    }
    const std::size_t rest_count = std::size_t{1} << (num_qubits - width);
    rest_.reserve(rest_count);
    // Walk all masks over the complement bits.
    const std::size_t full = (std::size_t{1} << num_qubits) - 1;
    const std::size_t free_mask = full & ~support_mask;
    std::size_t sub = 0;
    do {
        rest_.push_back(sub);
        sub = (sub - free_mask) & free_mask;
    } while (sub != 0);
    assert(rest_.size() == rest_count);
}

void apply_local(const Matrix &op, const LocalIndexer &indexer,
                 std::span<Complex> amplitudes) {
    const auto local = indexer.local_offsets();
    const std::size_t dim = local.size();
    Vector in(static_cast<Eigen::Index>(dim));
    for (std::size_t base : indexer.rest_offsets()) {
        for (std::size_t l = 0; l < dim; ++l) {
            in[static_cast<Eigen::Index>(l)] = amplitudes[base + local[l]];
        }
        const Vector out = op * in;
        for (std::size_t l = 0; l < dim; ++l) {
            amplitudes[base + local[l]] = out[static_cast<Eigen::Index>(l)];
        }
    }
}

double local_expectation(const Matrix &op, const LocalIndexer &indexer,
                         std::span<const Complex> amplitudes) {
    const auto local = indexer.local_offsets();
    const std::size_t dim = local.size();
    Vector in(static_cast<Eigen::Index>(dim));
    double total = 0.0;
    for (std::size_t base : indexer.rest_offsets()) {
        for (std::size_t l = 0; l < dim; ++l) {
            in[static_cast<Eigen::Index>(l)] = amplitudes[base + local[l]];
        }
        total += in.dot(op * in).real();
    }
    return total;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
                a(i, j) * b;
        }
    }
    return out;
}

Matrix embed(const Matrix &op, std::span<const std::size_t> support,
             std::span<const std::size_t> target) {
    const std::size_t width = target.size();
    const std::size_t dim = std::size_t{1} << width;
    // Bit position (within a target index) of each support qubit.
    std::vector<std::size_t> position(support.size());
    std::size_t support_mask = 0;
    for (std::size_t j = 0; j < support.size(); ++j) {
        const auto it = std::find(target.begin(), target.end(), support[j]);
        assert(it != target.end());
        const auto pos = static_cast<std::size_t>(it - target.begin());
        position[j] = width - 1 - pos;
        support_mask |= std::size_t{1} << position[j];
    }
    std::vector<std::size_t> sub(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t l = 0;
        for (std::size_t j = 0; j < support.size(); ++j) {
            l = (l << 1) | ((x >> position[j]) & 1U);
        }
        sub[x] = l;
    }
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix out = Matrix::Zero(d, d);
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            if ((x & ~support_mask) == (y & ~support_mask)) {
                out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) =
                    op(static_cast<Eigen::Index>(sub[x]),
                       static_cast<Eigen::Index>(sub[y]));
            }
        }
    }
    return out;
}

Support union_support(std::span<const std::size_t> a,
                      std::span<const std::size_t> b) {
    Support out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool supports_overlap(std::span<const std::size_t> a,
                      std::span<const std::size_t> b) {
    for (std::size_t q : a) {
        if (std::find(b.begin(), b.end(), q) != b.end()) {
            return true;
        }
    }
    return false;
}

double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix2 h;
    h << s, s, s, -s;
    return h;
}

} // namespace qlll
