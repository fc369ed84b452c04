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

#include "qlll/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qlll/errors.hpp"

namespace qlll {
namespace {

constexpr std::size_t kPlacementAttempts = 20;
constexpr std::size_t kLayoutRestarts = 50;

Support random_subset(std::size_t n, std::size_t k, Rng &rng) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) {
        pool[i] = i;
    }
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(n - i);
        std::swap(pool[i], pool[j]);
    }
    Support out(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
    return out;
}

// Builds one support qubit by qubit. Each pick keeps the new clause and
// every clause it touches within the neighborhood bound. With probability
// `reuse` a qubit already covered by a clause is preferred over a fresh one,
// which is what makes dense layouts (many clauses on few qubits) reachable.
bool grow_support(std::size_t n, std::size_t k, std::size_t max_neighborhood,
                  double reuse, const std::vector<std::vector<std::size_t>> &on_qubit,
                  const std::vector<std::size_t> &nbhd_size, Rng &rng,
                  Support &support, std::vector<std::size_t> &touched) {
    support.clear();
    touched.clear();
    std::vector<std::size_t> free_pick, join_pick, fresh_pick;
    for (std::size_t slot = 0; slot < k; ++slot) {
        free_pick.clear();
        join_pick.clear();
        fresh_pick.clear();
        for (std::size_t q = 0; q < n; ++q) {
            if (std::find(support.begin(), support.end(), q) != support.end()) {
                continue;
            }
            if (on_qubit[q].empty()) {
                fresh_pick.push_back(q);
                continue;
            }
            std::size_t added = 0;
            bool fits = true;
            for (std::size_t j : on_qubit[q]) {
                if (std::find(touched.begin(), touched.end(), j) == touched.end()) {
                    ++added;
                    fits = fits && nbhd_size[j] + 1 <= max_neighborhood;
                }
            }
            if (!fits || touched.size() + added + 1 > max_neighborhood) {
                continue;
            }
            (added == 0 ? free_pick : join_pick).push_back(q);
        }
        const std::vector<std::size_t> *pool = nullptr;
        if (!free_pick.empty() && rng.bernoulli(reuse)) {
            pool = &free_pick;
        } else if (!join_pick.empty() && (fresh_pick.empty() || rng.bernoulli(reuse))) {
            pool = &join_pick;
        } else if (!fresh_pick.empty()) {
            pool = &fresh_pick;
        } else if (!free_pick.empty()) {
            pool = &free_pick;
        } else {
            return false;
        }
        const std::size_t q = (*pool)[rng.below(pool->size())];
        support.push_back(q);
        for (std::size_t j : on_qubit[q]) {
            if (std::find(touched.begin(), touched.end(), j) == touched.end()) {
                touched.push_back(j);
            }
        }
    }
    std::sort(support.begin(), support.end());
    return true;
}

bool place_supports(std::size_t n, std::size_t k, std::size_t clause_count,
                    std::size_t max_neighborhood, double reuse, Rng &rng,
                    std::vector<Support> &supports) {
    supports.clear();
    std::vector<std::vector<std::size_t>> on_qubit(n);
    std::vector<std::size_t> nbhd_size;
    std::vector<std::size_t> touched;
    Support candidate;
    for (std::size_t c = 0; c < clause_count; ++c) {
        bool placed = false;
        for (std::size_t attempt = 0; attempt < kPlacementAttempts && !placed;
             ++attempt) {
            placed = grow_support(n, k, max_neighborhood, reuse, on_qubit, nbhd_size,
                                  rng, candidate, touched);
        }
        if (!placed) {
            return false;
        }
        for (std::size_t j : touched) {
            ++nbhd_size[j];
        }
        nbhd_size.push_back(touched.size() + 1);
        for (std::size_t q : candidate) {
            on_qubit[q].push_back(c);
        }
        supports.push_back(candidate);
    }
    return true;
}

} // namespace

Instance generate_classical_instance(std::size_t n, std::size_t k,
                                     std::size_t clause_count,
                                     std::size_t max_neighborhood,
                                     std::uint64_t seed) {
    if (n == 0 || k == 0 || k > n) {
        throw InvalidArgument("classical generator needs 1 <= k <= n");
    }
    if (max_neighborhood == 0) {
        throw InvalidArgument("neighborhood bound must be at least 1");
    }
    Rng rng(seed);
    std::vector<Support> supports;
    bool ok = false;
    for (std::size_t restart = 0; restart < kLayoutRestarts && !ok; ++restart) {
        const double reuse = 0.25 + 0.75 * static_cast<double>(restart) /
                                        static_cast<double>(kLayoutRestarts - 1);
        ok = place_supports(n, k, clause_count, max_neighborhood, reuse, rng,
                            supports);
    }
    if (!ok) {
        throw InfeasibleLayout(
            "could not place " + std::to_string(clause_count) + " clauses of " +
            std::to_string(k) + " qubits on " + std::to_string(n) +
            " qubits with neighborhoods of at most " +
            std::to_string(max_neighborhood));
    }
    std::vector<ProjectorSpec> projectors;
    projectors.reserve(clause_count);
    const std::uint64_t patterns = std::uint64_t{1} << k;
    for (auto &support : supports) {
        const auto forbidden = static_cast<std::uint32_t>(rng.below(patterns));
        projectors.push_back(
            ProjectorSpec::diagonal(std::move(support), {forbidden}));
    }
    return Instance::create(n, std::move(projectors),
                            InstanceMeta{seed, "classical"});
}

Matrix2 haar_unitary_2x2(Rng &rng) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double alpha = two_pi * rng.uniform();
    const double psi = two_pi * rng.uniform();
    const double chi = two_pi * rng.uniform();
    const double theta = std::asin(std::sqrt(rng.uniform()));
    const Complex phase = std::polar(1.0, alpha);
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Matrix2 u;
    u << phase * std::polar(c, psi), phase * std::polar(s, chi),
        -phase * std::polar(s, -chi), phase * std::polar(c, -psi);
    return u;
}

Matrix haar_unitary(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    Matrix g(d, d);
    const double scale = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            g(i, j) = Complex(re, im) * scale;
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(d, d);
    const Matrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex diag = r(j, j);
        const double mag = std::abs(diag);
        if (mag > 0.0) {
            q.col(j) *= diag / mag;
        }
    }
    return q;
}

ProjectorSpec random_projector(Support support, std::size_t rank, Rng &rng) {
    const std::size_t dim = std::size_t{1} << support.size();
    if (rank > dim) {
        throw InvalidArgument("rank exceeds the local dimension");
    }
    const Matrix u = haar_unitary(dim, rng);
    const auto r = static_cast<Eigen::Index>(rank);
    const Matrix v = u.leftCols(r);
    Matrix p = v * v.adjoint();
    // Symmetrize away rounding so the Hermiticity residual is exactly 0.
    p = (0.5 * (p + p.adjoint())).eval();
    return ProjectorSpec::explicit_matrix(std::move(support), std::move(p));
}

namespace {

Instance conjugate_all(const Instance &instance,
                       std::span<const Matrix2> rotations, InstanceMeta meta) {
    if (rotations.size() != instance.num_qubits()) {
        throw InvalidArgument("rotate_instance needs one unitary per qubit");
    }
    std::vector<ProjectorSpec> projectors;
    projectors.reserve(instance.size());
    for (const auto &p : instance.projectors()) {
        std::vector<Matrix2> local;
        local.reserve(p.support().size());
        for (std::size_t q : p.support()) {
            local.push_back(rotations[q]);
        }
        projectors.push_back(p.conjugated(local));
    }
    meta.generator =
        meta.generator.empty() ? "rotated" : meta.generator + "+rotated";
    return Instance::create(instance.num_qubits(), std::move(projectors),
                            std::move(meta));
}

} // namespace

Instance rotate_instance(const Instance &instance,
                         std::span<const Matrix2> rotations) {
    return conjugate_all(instance, rotations, instance.meta());
}

Instance rotate_instance(const Instance &instance, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Matrix2> rotations(instance.num_qubits());
    for (auto &u : rotations) {
        u = haar_unitary_2x2(rng);
    }
    InstanceMeta meta = instance.meta();
    meta.seed = seed;
    return conjugate_all(instance, rotations, std::move(meta));
}

Instance generate_random_instance(const RandomInstanceOptions &options,
                                  std::uint64_t seed) {
    const auto &o = options;
    if (o.n == 0 || o.k == 0 || o.k > o.n) {
        throw InvalidArgument("random instance needs 1 <= k <= n");
    }
    const std::size_t dim = std::size_t{1} << o.k;
    if (o.max_rank == 0 || o.max_rank > dim) {
        throw InvalidArgument("max_rank must lie in [1, 2^k]");
    }
    Rng rng(seed);
    std::vector<ProjectorSpec> projectors;
    for (std::size_t i = 0; i < o.m; ++i) {
        Support support = random_subset(o.n, o.k, rng);
        const std::size_t rank = 1 + rng.below(o.max_rank);
        if (o.family == RandomFamily::generic) {
            projectors.push_back(random_projector(std::move(support), rank, rng));
            continue;
        }
        std::vector<std::uint32_t> all(dim);
        for (std::size_t x = 0; x < dim; ++x) {
            all[x] = static_cast<std::uint32_t>(x);
        }
        rng.shuffle(all.begin(), all.end());
        all.resize(rank);
        projectors.push_back(ProjectorSpec::diagonal(std::move(support), all));
    }
    Instance base = Instance::create(o.n, std::move(projectors),
                                     InstanceMeta{seed, "random"});
    if (o.family == RandomFamily::rotated) {
        return rotate_instance(base, mix64(seed ^ 0x5eedULL));
    }
    return base;
}

} // namespace qlll
