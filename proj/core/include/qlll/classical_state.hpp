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
#include <span>
#include <vector>

#include "qlll/projector.hpp"
#include "qlll/random.hpp"
#include "qlll/trajectory_state.hpp"

namespace qlll {

/// Bit-string backend for diagonal instances: measurement is a lookup and
/// replacement draws fresh uniform bits, i.e. Moser-style resampling.
class ClassicalState {
  public:
    static ClassicalState fully_mixed(std::size_t n, std::uint64_t seed);
    static ClassicalState from_bits(std::vector<std::uint8_t> bits,
                                    std::uint64_t seed);

    std::size_t num_qubits() const { return bits_.size(); }
    const std::vector<std::uint8_t> &bits() const { return bits_; }
    Rng &rng() { return rng_; }

    /// Local basis index of the current bits on `support`.
    std::uint32_t pattern(std::span<const std::size_t> support) const;

    /// Deterministic; the state is unchanged. Throws InvalidArgument for a
    /// projector that is not a 0/1 diagonal.
    Outcome measure(const ProjectorSpec &projector);
    void replace_qubits(std::span<const std::size_t> support);
    /// 1 if the current bits on the support are forbidden, else 0.
    double expectation(const ProjectorSpec &projector) const;

  private:
    ClassicalState(std::vector<std::uint8_t> bits, std::uint64_t seed)
        : bits_(std::move(bits)), rng_(seed) {}

    std::vector<std::uint8_t> bits_;
    Rng rng_;
};

} // namespace qlll
