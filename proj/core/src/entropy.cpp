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

#include "qlll/entropy.hpp"

#include <cmath>

#include "qlll/constants.hpp"
#include "qlll/errors.hpp"

namespace qlll {

double von_neumann_entropy(const Matrix &rho) {
    if (rho.size() == 0) {
        return 0.0;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()[i];
        if (lambda >= kProbabilityFloor) {
            s -= lambda * std::log2(lambda);
        }
    }
    return s;
}

double shannon_entropy(std::span<const double> probabilities) {
    double total = 0.0;
    for (double p : probabilities) {
        if (p < 0.0) {
            throw NotNormalized("negative probability " + std::to_string(p));
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kNormTolerance) {
        throw NotNormalized("probabilities sum to " + std::to_string(total));
    }
    double h = 0.0;
    for (double p : probabilities) {
        if (p > 0.0) {
            h -= p * std::log2(p);
        }
    }
    return h;
}

} // namespace qlll
