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

#include <span>

#include "qlll/linalg.hpp"

namespace qlll {

/// -sum lambda log2 lambda over the eigenvalues of a Hermitian matrix, with
/// eigenvalues below 1e-12 contributing nothing.
double von_neumann_entropy(const Matrix &rho);

/// -sum p log2 p in bits, with 0 log 0 = 0. Throws NotNormalized unless the
/// entries are non-negative and sum to 1 within 1e-9.
double shannon_entropy(std::span<const double> probabilities);

} // namespace qlll
