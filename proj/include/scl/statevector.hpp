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

#include "scl/circuit.hpp"
#include "scl/common.hpp"
#include "scl/dense.hpp"

namespace scl {

struct StateVector {
  int n = 0;
  Vec amps;

  static StateVector zero(int n);
  // Product of single-qubit states, qubit 0 first.
  static StateVector product(const std::vector<Eigen::Vector2cd>& qubits);
  double norm_squared() const { return amps.squaredNorm(); }
};

// In-place kernels on a 2^n-row array; each column is transformed.
void apply_gate_inplace(Mat& rows, int n, int a, int b, const Mat4& u);
void apply_gate_inplace(Vec& amps, int n, int a, int b, const Mat4& u);
void apply_1q_inplace(Vec& amps, int n, int q, const Mat2& u);

StateVector apply_circuit(const StateVector& state, const Circuit& c,
                          bool dagger = false);
void apply_circuit_inplace(Vec& amps, const Circuit& c, bool dagger = false);

// A circuit regrouped into dense operators on at most `max_support`
// qubits each: consecutive gates are multiplied together, so applying
// the ops in order reproduces the circuit exactly.
struct FusedCircuit {
  int n = 0;
  std::vector<DenseOperator> ops;
};
FusedCircuit fuse_circuit(const Circuit& c, int max_support = 8);
// Applies a dense operator on `support` of an n-qubit state.
void apply_dense_inplace(Vec& amps, int n, const QubitSet& support, const Mat& m);
// Applies the operator to every column of `rows`.
void apply_dense_inplace(Mat& rows, int n, const QubitSet& support, const Mat& m);
void apply_fused_inplace(Vec& amps, const FusedCircuit& f, bool dagger = false);

// <psi| A |psi> with A a dense operator on `support` of the state.
cplx expectation(const StateVector& s, const Mat& op, const QubitSet& support);
// Reduced density matrix on `keep` (ascending order).
Mat reduced_density(const Vec& amps, int n, const QubitSet& keep);
Mat reduced_density(const StateVector& s, const QubitSet& keep);

}  // namespace scl
