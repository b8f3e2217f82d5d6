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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scl/common.hpp"
#include "scl/geometry.hpp"

namespace scl {

// Two-qubit gate; qubit `a` is tensor factor 0 of `u`.
struct Gate {
  int a = 0;
  int b = 1;
  Mat4 u = Mat4::Identity();
  int tag = -1;  // index into the circuit's finite gate set, -1 if none
};

struct Layer {
  std::vector<Gate> gates;
  std::string role;  // empty, "block" or "global_swap"
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n) : n(n) {}

  int n = 0;
  std::vector<Layer> layers;
  std::optional<GeometryGraph> geometry;
  std::string gateset;

  int depth() const { return static_cast<int>(layers.size()); }
  int gate_count() const;
  // Throws on overlapping qubits in a layer, non-unitary gates, bad
  // indices, or (when a geometry is present) gates off the graph.
  void validate(double tol = 1e-12) const;
  // Reversed layers with conjugate-transposed gates.
  Circuit dagger() const;
  // Appends the layers of `other` after this circuit's layers.
  void append(const Circuit& other);
  // Drops empty layers.
  Circuit compacted() const;
  // Relabels qubit q to map[q] on a register of size new_n.
  Circuit relabeled(const std::vector<int>& map, int new_n) const;
};

// Dense 2^n x 2^n matrix of the circuit (qubit 0 = most significant bit).
Mat circuit_unitary(const Circuit& c);
// Dense matrix restricted to `support`; every gate must act inside it.
Mat circuit_unitary_on(const Circuit& c, const QubitSet& support);

nlohmann::json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const nlohmann::json& j);
nlohmann::json geometry_to_json(const GeometryGraph& g);
GeometryGraph geometry_from_json(const nlohmann::json& j);
// Stable hex digest of the canonical JSON serialization.
std::string circuit_digest(const Circuit& c);

// Random depth-d circuit of Haar SU(4) gates on a brickwork pattern of
// the geometry's edges.
Circuit random_su4_circuit(const GeometryGraph& g, int depth,
                           std::uint64_t seed);
// Random depth-d circuit over a named finite gate set; gates are drawn
// per brickwork slot (an idle slot is allowed with probability 1/(|G|+1)).
Circuit random_gateset_circuit(const GeometryGraph& g, int depth,
                               const std::string& gateset,
                               std::uint64_t seed);
// Edge classes of a proper edge coloring used for brickwork layers:
// layer t uses class t mod (number of classes).
std::vector<std::vector<Edge>> brickwork_classes(const GeometryGraph& g);

}  // namespace scl
