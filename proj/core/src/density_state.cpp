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

#include "qlll/density_state.hpp"

#include <algorithm>
#include <cmath>

#include "qlll/entropy.hpp"
#include "qlll/errors.hpp"

namespace qlll {
namespace {

void check_cap(std::size_t n, std::size_t cap) {
    if (n == 0) {
        throw InvalidArgument("a register needs at least one qubit");
    }
    if (n > cap) {
        throw DimensionTooLarge("density backend limited to " +
                                std::to_string(cap) + " qubits, got " +
                                std::to_string(n));
    }
}

std::size_t qubits_for(Eigen::Index dim) {
    const auto d = static_cast<std::size_t>(dim);
    if (d == 0 || (d & (d - 1)) != 0) {
        throw InvalidArgument("dimension must be a power of two");
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < d) {
        ++n;
    }
    return n;
}

// rho -> P rho P for a Hermitian local operator P.
Matrix sandwich(const Matrix &op, const LocalIndexer &idx, const Matrix &rho) {
    Matrix left = rho;
    for (Eigen::Index c = 0; c < left.cols(); ++c) {
        apply_local(op, idx,
                    {left.col(c).data(), static_cast<std::size_t>(left.rows())});
    }
    Matrix right = left.adjoint();
    for (Eigen::Index c = 0; c < right.cols(); ++c) {
        apply_local(op, idx,
                    {right.col(c).data(), static_cast<std::size_t>(right.rows())});
    }
    return right.adjoint();
}

} // namespace

DensityState DensityState::fully_mixed(std::size_t n, std::size_t qubit_cap) {
    check_cap(n, qubit_cap);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    return DensityState(n, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityState DensityState::from_pure(const Vector &psi, std::size_t qubit_cap) {
    const std::size_t n = qubits_for(psi.size());
    check_cap(n, qubit_cap);
    return DensityState(n, psi * psi.adjoint());
}

DensityState DensityState::from_matrix(Matrix rho, std::size_t qubit_cap) {
    if (rho.rows() != rho.cols()) {
        throw InvalidArgument("density matrix must be square");
    }
    const std::size_t n = qubits_for(rho.rows());
    check_cap(n, qubit_cap);
    return DensityState(n, std::move(rho));
}

double DensityState::expectation(const ProjectorSpec &projector) const {
    const LocalIndexer idx(projector.support(), n_);
    const auto local = idx.local_offsets();
    const Matrix &op = projector.matrix();
    Complex total = 0.0;
    for (std::size_t base : idx.rest_offsets()) {
        for (std::size_t a = 0; a < local.size(); ++a) {
            for (std::size_t b = 0; b < local.size(); ++b) {
                const Complex pab =
                    op(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
                if (pab != Complex(0.0)) {
                    total += pab * rho_(static_cast<Eigen::Index>(base + local[b]),
                                        static_cast<Eigen::Index>(base + local[a]));
                }
            }
        }
    }
    return total.real();
}

Branch DensityState::project(const ProjectorSpec &projector, bool violated) const {
    const LocalIndexer idx(projector.support(), n_);
    Matrix out;
    if (projector.is_diagonal()) {
        // Keep the block whose row and column both lie in the chosen range.
        const auto local = idx.local_offsets();
        std::vector<char> keep(static_cast<std::size_t>(rho_.rows()), 0);
        for (std::size_t base : idx.rest_offsets()) {
            for (std::size_t l = 0; l < local.size(); ++l) {
                keep[base + local[l]] =
                    projector.forbids(static_cast<std::uint32_t>(l)) == violated;
            }
        }
        out = Matrix::Zero(rho_.rows(), rho_.cols());
        for (Eigen::Index y = 0; y < rho_.cols(); ++y) {
            if (!keep[static_cast<std::size_t>(y)]) {
                continue;
            }
            for (Eigen::Index x = 0; x < rho_.rows(); ++x) {
                if (keep[static_cast<std::size_t>(x)]) {
                    out(x, y) = rho_(x, y);
                }
            }
        }
    } else {
        const auto dim = static_cast<Eigen::Index>(projector.matrix().rows());
        const Matrix op = violated
                              ? projector.matrix()
                              : Matrix(Matrix::Identity(dim, dim) - projector.matrix());
        out = sandwich(op, idx, rho_);
    }
    const double p = out.trace().real();
    if (p < kProbabilityFloor) {
        throw ZeroProbabilityBranch("branch probability " + std::to_string(p) +
                                    " is below the pruning floor");
    }
    out /= p;
    return {std::min(p, 1.0), DensityState(n_, std::move(out))};
}

BranchPair DensityState::measure(const ProjectorSpec &projector) const {
    BranchPair pair;
    pair.violation_probability = std::clamp(expectation(projector), 0.0, 1.0);
    for (bool violated : {false, true}) {
        try {
            Branch b = project(projector, violated);
            (violated ? pair.violated : pair.satisfied) = std::move(b);
        } catch (const ZeroProbabilityBranch &) {
        }
    }
    return pair;
}

void DensityState::replace_qubits(std::span<const std::size_t> support) {
    const LocalIndexer idx(support, n_);
    const auto local = idx.local_offsets();
    const auto rest = idx.rest_offsets();
    const double scale = 1.0 / static_cast<double>(local.size());
    Matrix out = Matrix::Zero(rho_.rows(), rho_.cols());
    for (std::size_t bx : rest) {
        for (std::size_t by : rest) {
            Complex s = 0.0;
            for (std::size_t l : local) {
                s += rho_(static_cast<Eigen::Index>(bx + l),
                          static_cast<Eigen::Index>(by + l));
            }
            s *= scale;
            for (std::size_t l : local) {
                out(static_cast<Eigen::Index>(bx + l),
                    static_cast<Eigen::Index>(by + l)) = s;
            }
        }
    }
    rho_ = std::move(out);
}

void DensityState::swap_qubits(std::size_t a, std::size_t b) {
    if (a >= n_ || b >= n_) {
        throw InvalidArgument("swap_qubits: qubit out of range");
    }
    if (a == b) {
        return;
    }
    const std::size_t ma = std::size_t{1} << a;
    const std::size_t mb = std::size_t{1} << b;
    const auto dim = static_cast<std::size_t>(rho_.rows());
    std::vector<Eigen::Index> perm(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        const bool ba = (x & ma) != 0;
        const bool bb = (x & mb) != 0;
        std::size_t y = x & ~(ma | mb);
        if (ba) {
            y |= mb;
        }
        if (bb) {
            y |= ma;
        }
        perm[x] = static_cast<Eigen::Index>(y);
    }
    Matrix out(rho_.rows(), rho_.cols());
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            out(perm[x], perm[y]) =
                rho_(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
        }
    }
    rho_ = std::move(out);
}

Matrix DensityState::reduced(std::span<const std::size_t> keep) const {
    const LocalIndexer idx(keep, n_);
    const auto local = idx.local_offsets();
    const auto dim = static_cast<Eigen::Index>(local.size());
    Matrix out = Matrix::Zero(dim, dim);
    for (std::size_t base : idx.rest_offsets()) {
        for (Eigen::Index a = 0; a < dim; ++a) {
            for (Eigen::Index b = 0; b < dim; ++b) {
                out(a, b) += rho_(static_cast<Eigen::Index>(
                                      base + local[static_cast<std::size_t>(a)]),
                                  static_cast<Eigen::Index>(
                                      base + local[static_cast<std::size_t>(b)]));
            }
        }
    }
    return out;
}

double DensityState::entropy() const { return von_neumann_entropy(rho_); }

double DensityState::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double von_neumann_entropy(const DensityState &state) { return state.entropy(); }

} // namespace qlll
