// Copyright 2026 The scl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "scl/common.hpp"

namespace scl {

// Complex matrix on an explicit ordered qubit subset; support[0] is the
// most significant bit of the matrix index.
struct DenseOperator {
  QubitSet support;
  Mat matrix;
  bool hermitian = false;
  bool unitary = false;

  DenseOperator() = default;
  DenseOperator(QubitSet s, Mat m);
  int size() const { return static_cast<int>(support.size()); }
  // Sets and verifies the flags (tolerance 1e-10).
  DenseOperator& mark_hermitian();
  DenseOperator& mark_unitary();
};

Mat kron(const Mat& a, const Mat& b);
// Identity-extends `m` (acting on `from`) to `to`, which must contain
// every qubit of `from`. Factor order follows `to`.
Mat embed(const Mat& m, const QubitSet& from, const QubitSet& to);
DenseOperator embed(const DenseOperator& op, const QubitSet& to);
// Partial trace of an operator on `support`, keeping `keep` in its order.
Mat partial_trace(const Mat& m, const QubitSet& support, const QubitSet& keep);
// Reorders the tensor factors of `m` from `from` to the permutation `to`.
Mat permute_factors(const Mat& m, const QubitSet& from, const QubitSet& to);

double spectral_norm(const Mat& m);
Eigen::VectorXd singular_values(const Mat& m);
bool is_hermitian(const Mat& m, double tol = 1e-10);
bool is_unitary(const Mat& m, double tol = 1e-10);
double max_abs(const Mat& m);

// Matrix of a Pauli word such as "XIZ" (letter k acts on factor k).
Mat pauli_word_matrix(const std::string& word);

}  // namespace scl
