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

#include <vector>

#include "scl/circuit.hpp"
#include "scl/dense.hpp"
#include "scl/geometry.hpp"

namespace scl {

// Exact two-qubit-gate circuit for a unitary on W.support (at least two
// qubits, at most k_max). Uses the quantum Shannon decomposition down to
// two-qubit blocks: at most 4^k gates. With a graph, gates between
// non-adjacent qubits are routed through SWAP chains inside the support,
// giving at most 2k * 4^k gates. The circuit acts on a register of
// `register_size` qubits (default: max support index + 1).
Circuit synthesize_unitary(const DenseOperator& w, const GeometryGraph* graph = nullptr,
                           int k_max = kDefaultKMax, int register_size = -1);

// Gate list (time order) over positions 0..k-1, qubit 0 most significant.
std::vector<Gate> shannon_decompose(const Mat& u);

// Earliest-layer scheduling of a gate list.
Circuit schedule_gates(const std::vector<Gate>& gates, int n);

}  // namespace scl
