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

#include "scl/heisenberg.hpp"

#include "scl/gates.hpp"
#include "scl/statevector.hpp"

namespace scl {

DenseOperator heisenberg_conjugate(const Circuit& c, const DenseOperator& op) {
  QubitSet support = op.support;
  Mat o = op.matrix;
  for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it) {
    for (const auto& g : it->gates) {
      if (!contains(support, g.a) && !contains(support, g.b)) continue;
      QubitSet grown = set_union(support, {g.a, g.b});
      check_dense_cap(static_cast<int>(grown.size()), "Heisenberg support");
      if (grown != support) o = embed(o, support, grown);
      support = std::move(grown);
      // o <- u^dag o u, as two column passes.
      const int k = static_cast<int>(support.size());
      const int pa = index_in(support, g.a), pb = index_in(support, g.b);
      const Mat4 ud = g.u.adjoint();
      apply_gate_inplace(o, k, pa, pb, ud);
      o.adjointInPlace();
      apply_gate_inplace(o, k, pa, pb, ud);
      o.adjointInPlace();
    }
  }
  const QubitSet sorted = normalized(support);
  return DenseOperator(sorted, embed(o, support, sorted));
}

DenseOperator trim_identity_factors(const DenseOperator& op, double tol) {
  QubitSet support = op.support;
  Mat o = op.matrix;
  for (int q : op.support) {
    if (support.size() == 1) break;
    QubitSet rest;
    for (int r : support)
      if (r != q) rest.push_back(r);
    const Mat reduced = partial_trace(o, support, rest) / 2.0;
    if (max_abs(embed(reduced, rest, support) - o) <= tol) {
      o = reduced;
      support = rest;
    }
  }
  DenseOperator out(support, o);
  out.hermitian = op.hermitian;
  out.unitary = op.unitary;
  return out;
}

DenseOperator heisenberg_observable_exact(const Circuit& c, int qubit, char pauli) {
  if (qubit < 0 || qubit >= c.n) throw Error("qubit out of range");
  if (pauli != 'X' && pauli != 'Y' && pauli != 'Z') throw Error("Pauli must be X, Y or Z");
  DenseOperator p({qubit}, Mat(gates::pauli(pauli)));
  DenseOperator out = trim_identity_factors(heisenberg_conjugate(c, p));
  out.hermitian = true;
  out.unitary = true;
  return out;
}

}  // namespace scl
