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

#include "scl/circuit.hpp"
#include "scl/dense.hpp"

namespace scl {

// U^dag P_i U for the circuit U, on the qubits it acts on nontrivially
// (ascending order). Conjugates P_i through the reversed layers while
// tracking the active support, then drops identity factors.
DenseOperator heisenberg_observable_exact(const Circuit& c, int qubit, char pauli);

// Conjugates an operator by a circuit: returns U^dag O U restricted to
// the grown support (no trimming).
DenseOperator heisenberg_conjugate(const Circuit& c, const DenseOperator& op);

// Removes tensor factors on which the operator acts as identity.
DenseOperator trim_identity_factors(const DenseOperator& op, double tol = 1e-10);

}  // namespace scl
