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

#include "qlll/instance.hpp"

#include <algorithm>
#include <cmath>

#include "qlll/constants.hpp"
#include "qlll/errors.hpp"

namespace qlll {

std::size_t NeighborhoodMap::max_size() const {
    std::size_t g = 1;
    for (const auto &list : members) {
        g = std::max(g, list.size());
    }
    return g;
}

double qlll_margin(std::size_t k, std::size_t g, std::size_t r) {
    return static_cast<double>(k) -
           (std::log2(static_cast<double>(g)) +
            std::log2(static_cast<double>(r)) + kLog2E);
}

QlllCondition check_qlll_condition(const InstanceParams &params) {
    const double margin = qlll_margin(params.k, params.g, params.r);
    return {margin > 0.0, margin};
}

NeighborhoodMap compute_neighborhood(std::span<const ProjectorSpec> projectors) {
    const std::size_t m = projectors.size();
    NeighborhoodMap map;
    map.members.resize(m);
    // Bucket projectors by qubit so overlap detection is linear in the
    // total support size.
    std::size_t max_qubit = 0;
    for (const auto &p : projectors) {
        for (std::size_t q : p.support()) {
            max_qubit = std::max(max_qubit, q + 1);
        }
    }
    std::vector<std::vector<std::size_t>> on_qubit(max_qubit);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t q : projectors[i].support()) {
            on_qubit[q].push_back(i);
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        auto &list = map.members[i];
        list.push_back(i);
        for (std::size_t q : projectors[i].support()) {
            list.insert(list.end(), on_qubit[q].begin(), on_qubit[q].end());
        }
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
    return map;
}

InstanceParams compute_params(std::span<const ProjectorSpec> projectors,
                              const NeighborhoodMap &neighborhood) {
    InstanceParams params;
    params.m = projectors.size();
    params.g = neighborhood.max_size();
    std::size_t k = 1;
    std::size_t r = 0;
    for (const auto &p : projectors) {
        k = std::max(k, p.support().size());
        r = std::max(r, p.rank());
    }
    params.k = k;
    params.r = std::max<std::size_t>(r, 1);
    return params;
}

ValidationReport validate_instance(std::size_t n,
                                   std::span<const ProjectorSpec> projectors) {
    ValidationReport report;
    for (std::size_t i = 0; i < projectors.size(); ++i) {
        const auto &p = projectors[i];
        for (std::size_t q : p.support()) {
            if (q >= n) {
                throw MalformedProjector(
                    "projector " + std::to_string(i) + " acts on qubit " +
                    std::to_string(q) + " but the instance has " +
                    std::to_string(n) + " qubits");
            }
        }
        ProjectorResidual res;
        res.index = i;
        res.hermiticity = p.hermiticity_residual();
        res.idempotence = p.idempotence_residual();
        res.trace = p.trace();
        res.rank = p.rank();
        res.valid = res.hermiticity <= kOperatorTolerance &&
                    res.idempotence <= kOperatorTolerance &&
                    std::abs(res.trace - static_cast<double>(res.rank)) <=
                        kRankTolerance;
        report.projectors_valid = report.projectors_valid && res.valid;
        report.projectors.push_back(res);
    }

    const NeighborhoodMap neighborhood = compute_neighborhood(projectors);
    report.params = compute_params(projectors, neighborhood);

    for (std::size_t i = 0; i < projectors.size(); ++i) {
        for (std::size_t j : neighborhood[i]) {
            if (j <= i) {
                continue;
            }
            const auto &a = projectors[i];
            const auto &b = projectors[j];
            double residual = 0.0;
            if (!(a.is_diagonal() && b.is_diagonal())) {
                const Support joint = union_support(a.support(), b.support());
                const Matrix ea = embed(a.matrix(), a.support(), joint);
                const Matrix eb = embed(b.matrix(), b.support(), joint);
                residual = max_abs(ea * eb - eb * ea);
            }
            report.pairs.push_back({i, j, residual});
            report.max_commutator = std::max(report.max_commutator, residual);
        }
    }
    report.commuting = report.max_commutator <= kOperatorTolerance;
    return report;
}

ValidationReport validate_instance(const Instance &instance) {
    return validate_instance(instance.num_qubits(), instance.projectors());
}

Instance Instance::create(std::size_t n, std::vector<ProjectorSpec> projectors,
                          InstanceMeta meta) {
    if (n == 0) {
        throw MalformedProjector("an instance needs at least one qubit");
    }
    const ValidationReport report = validate_instance(n, projectors);
    for (const auto &res : report.projectors) {
        if (!res.valid) {
            throw MalformedProjector(
                "projector " + std::to_string(res.index) +
                " is not an orthogonal projector (hermiticity residual " +
                std::to_string(res.hermiticity) + ", idempotence residual " +
                std::to_string(res.idempotence) + ", trace " +
                std::to_string(res.trace) + ")");
        }
    }
    Instance instance;
    instance.n_ = n;
    instance.neighborhood_ = compute_neighborhood(projectors);
    instance.projectors_ = std::move(projectors);
    instance.params_ = report.params;
    instance.commuting_ = report.commuting;
    instance.meta_ = std::move(meta);
    return instance;
}

bool Instance::diagonal() const {
    return std::all_of(projectors_.begin(), projectors_.end(),
                       [](const ProjectorSpec &p) { return p.is_diagonal(); });
}

} // namespace qlll
