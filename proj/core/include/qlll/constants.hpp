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

#include <cstddef>

namespace qlll {

/// log2(e) to full double precision.
inline constexpr double kLog2E = 1.44269504088896340735992468100189214;
inline constexpr double kE = 2.71828182845904523536028747135266250;

/// Max-entry tolerance for Hermiticity, idempotence and commutators.
inline constexpr double kOperatorTolerance = 1e-9;
/// A projector's trace must be this close to an integer.
inline constexpr double kRankTolerance = 1e-6;
/// Branches lighter than this are pruned; eigenvalues below it count as 0.
inline constexpr double kProbabilityFloor = 1e-12;
/// A projector counts as satisfied when its expectation is at most this.
inline constexpr double kSatisfactionTolerance = 1e-8;
/// Slack for the entropy inequalities.
inline constexpr double kEntropySlack = 1e-9;
/// Normalization tolerance for states and distributions.
inline constexpr double kNormTolerance = 1e-9;

inline constexpr std::size_t kDefaultTrajectoryQubitCap = 14;
inline constexpr std::size_t kDefaultDensityQubitCap = 8;

} // namespace qlll
