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

#include "qlll/classical_state.hpp"

#include "qlll/errors.hpp"

namespace qlll {
namespace {

void require_diagonal(const ProjectorSpec &p) {
    if (!p.is_diagonal()) {
        throw InvalidArgument(
            "the diagonal backend only handles computational-basis projectors");
    }
}

} // namespace

ClassicalState ClassicalState::fully_mixed(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw InvalidArgument("a register needs at least one qubit");
    }
    ClassicalState state(std::vector<std::uint8_t>(n, 0), seed);
    for (auto &b : state.bits_) {
        b = state.rng_.bit() ? 1 : 0;
    }
    return state;
}

ClassicalState ClassicalState::from_bits(std::vector<std::uint8_t> bits,
                                         std::uint64_t seed) {
    for (auto &b : bits) {
        b = b ? 1 : 0;
    }
    return ClassicalState(std::move(bits), seed);
}

std::uint32_t ClassicalState::pattern(std::span<const std::size_t> support) const {
    std::uint32_t value = 0;
    for (std::size_t q : support) {
        value = (value << 1) | bits_[q];
    }
    return value;
}

Outcome ClassicalState::measure(const ProjectorSpec &projector) {
    require_diagonal(projector);
    const bool violated = projector.forbids(pattern(projector.support()));
    return {violated, violated ? 1.0 : 0.0};
}

void ClassicalState::replace_qubits(std::span<const std::size_t> support) {
    for (std::size_t q : support) {
        bits_[q] = rng_.bit() ? 1 : 0;
    }
}

double ClassicalState::expectation(const ProjectorSpec &projector) const {
    require_diagonal(projector);
    return projector.forbids(pattern(projector.support())) ? 1.0 : 0.0;
}

} // namespace qlll
