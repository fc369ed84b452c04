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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qlll {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

/// Ordered list of qubit indices a local operator acts on.
///
/// Local basis convention: for a support (q_0, ..., q_{L-1}) the local
/// index has q_0 as its most significant bit, so the bit-string "101" on
/// (a, b, c) sets a = 1, b = 0, c = 1. Globally, qubit q is bit q of a
/// register index.
using Support = std::vector<std::size_t>;

/// Index tables for applying a local operator inside an n-qubit register.
class LocalIndexer {
  public:
    LocalIndexer(std::span<const std::size_t> support, std::size_t num_qubits);

    /// Global offset of every local basis state (size 2^|support|).
    std::span<const std::size_t> local_offsets() const { return local_; }
    /// Global indices with all support bits cleared (size 2^(n-|support|)).
    std::span<const std::size_t> rest_offsets() const { return rest_; }

    std::size_t local_dim() const { return local_.size(); }

  private:
    std::vector<std::size_t> local_;
    std::vector<std::size_t> rest_;
};

/// amplitudes <- (op on support) amplitudes.
void apply_local(const Matrix &op, const LocalIndexer &indexer,
                 std::span<Complex> amplitudes);

/// <v| op |v> for a Hermitian local operator.
double local_expectation(const Matrix &op, const LocalIndexer &indexer,
                         std::span<const Complex> amplitudes);

/// Kronecker product with `a` on the more significant side.
Matrix kron(const Matrix &a, const Matrix &b);

/// Lifts `op` (acting on `support`) to `target`, which must contain every
/// support qubit; identity elsewhere.
Matrix embed(const Matrix &op, std::span<const std::size_t> support,
             std::span<const std::size_t> target);

/// Sorted union of two supports.
Support union_support(std::span<const std::size_t> a,
                      std::span<const std::size_t> b);

bool supports_overlap(std::span<const std::size_t> a,
                      std::span<const std::size_t> b);

/// Max-entry norm.
double max_abs(const Matrix &m);

Matrix2 hadamard();

} // namespace qlll
