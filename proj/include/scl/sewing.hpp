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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scl/circuit.hpp"
#include "scl/dense.hpp"
#include "scl/geometry.hpp"
#include "scl/pauli.hpp"
#include "scl/statevector.hpp"

namespace scl {

// One factor U^dag S_A U of the sewn circuit, for a region A of system
// qubits. The ancilla partner of qubit j is n + j.
struct SewBlock {
  int n = 0;
  QubitSet region;
  QubitSet support;  // system qubits, then ancillas (ascending overall)
  DenseOperator w;   // may be empty for blocks given only as circuits
  std::optional<Circuit> circuit;  // on the 2n register
  std::string path;                // "synthesis", "shallow" or "inversion"
};

// Nearest unitary U V^dag from the SVD A = U S V^dag.
Mat project_to_unitary(const Mat& a);
DenseOperator project_to_unitary(const DenseOperator& a);

// W = Proj_U(I/2 + sum_P O_P (x) P / 2) with P on ancilla n + i. The
// observables are given in the order X, Y, Z.
SewBlock build_sew_block(int i, const std::array<DenseOperator, 3>& obs, int n,
                         int k_max = kDefaultKMax);
SewBlock build_sew_block(int i, const std::array<PauliObservable, 3>& obs, int n,
                         int k_max = kDefaultKMax);
// Product of the single-qubit blocks of a region, projected once more.
SewBlock build_region_block(const QubitSet& region,
                            const std::vector<std::array<DenseOperator, 3>>& obs, int n,
                            int k_max = kDefaultKMax);
// U^dag S_A U computed from the circuit itself.
SewBlock exact_sew_block(const Circuit& u, const QubitSet& region, int k_max = kDefaultKMax);
// O_{j,P} = Tr_anc(W P_{n+j}) for every region qubit, in the order X, Y, Z.
std::vector<std::array<DenseOperator, 3>> block_observables(const SewBlock& b);

// Greedy coloring of the support-overlap graph in block order; each
// returned layer lists block indices in ascending order.
std::vector<std::vector<std::size_t>> order_blocks_by_coloring(const std::vector<SewBlock>& blocks);

struct SewOptions {
  const GeometryGraph* geometry = nullptr;  // system geometry, for routing
  int k_max = kDefaultKMax;
  int jobs = 1;
};

// Blocks without a circuit are synthesized; the color classes are
// emitted in order (role "block"), followed by the SWAP(j, n+j) layer
// (role "global_swap").
Circuit sew(std::vector<SewBlock>& blocks, const std::vector<std::vector<std::size_t>>& layers,
            int n, const SewOptions& opt = {});
// S prod_i V_i S_i V_i^dag for circuits V_i on the n system qubits.
Circuit sew_local_inversions(const std::vector<Circuit>& v_list, int n,
                             int k_max = kDefaultKMax);

// System geometry plus the edges (j, n+j).
GeometryGraph doubled_geometry(const GeometryGraph& g);
// U on the system followed by U^dag relabelled onto the ancillas.
Circuit tensor_with_dagger(const Circuit& u);

// Runs the sewn circuit on |psi> (x) |0^n> and traces out the ancillas.
DenseOperator implement_learned_channel(const Circuit& sewn, const StateVector& psi);
// Same, with the ancillas measured in the computational basis; returns
// the post-measurement system state.
StateVector sample_learned_channel(const Circuit& sewn, const StateVector& psi,
                                   std::uint64_t seed);

}  // namespace scl
