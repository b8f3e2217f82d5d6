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
#include <functional>
#include <optional>
#include <vector>

#include "scl/circuit.hpp"
#include "scl/geometry.hpp"
#include "scl/sewing.hpp"

namespace scl {

// Two-qubit gates in exponential coordinates: exp(i sum_P theta_P P) over
// the 15 non-identity Pauli pairs (base-4 order, IX first). Every gate is
// reached up to a global phase with |theta_P| <= kNetCoordinateBound.
inline constexpr double kNetCoordinateBound = 4.71238898038469;  // 3 pi / 2
using NetCoordinates = std::array<double, 15>;
Mat4 gate_from_coordinates(const NetCoordinates& theta);
// Principal-branch coordinates of u with the global phase chosen to keep
// the generator small.
NetCoordinates coordinates_of_gate(const Mat4& u);

// Empirical max of min_phi ||e^{i phi} G(theta) - G(theta')||_inf /
// ||theta - theta'||_inf over random pairs with theta' at a random corner
// of a small box around theta. Computed once per process.
double epsnet_lipschitz(int samples = 1000, std::uint64_t seed = 7);

struct EpsNetSpec {
  double eps = 0.0;
  int qubits = 0;  // s
  int depth = 0;   // d
  double gate_radius = 0.0;  // 2 eps / (s d)
  double lipschitz = 0.0;
  double spacing = 0.0;      // 2 gate_radius / lipschitz
  int points_per_axis = 0;
  long double count = 0;     // architectures x gate grid
};
EpsNetSpec epsnet_spec(const GeometryGraph& g, int d, double eps);
Mat4 epsnet_gate(const EpsNetSpec& spec, const std::array<int, 15>& index);
// Grid index of the net gate nearest to u in coordinates.
std::array<int, 15> epsnet_nearest_index(const EpsNetSpec& spec, const Mat4& u);

// All matchings of the graph's edges (each qubit in at most one edge),
// restricted to edges inside `allowed` (all qubits when empty). The empty
// matching comes first, then by edge index lexicographically.
std::vector<std::vector<Edge>> layer_matchings(const GeometryGraph& g,
                                               const QubitSet& allowed = {});

// Visits every depth-d net circuit in a fixed order until `visit`
// returns false; throws when the net has more than `cap` elements.
// Returns the number of circuits visited.
std::size_t epsnet_circuits(const GeometryGraph& g, int d, double eps,
                            const std::function<bool(const Circuit&)>& visit,
                            double cap = 1e7);

struct ShallowSource {
  const std::vector<Mat4>* gateset = nullptr;  // finite gate set, or
  double eps = 0.0;                            // net precision otherwise
  double cap = 1e7;
};

// Searches a depth-d circuit V on the block's lightcone with
// V^dag S_A V = W (within 1e-9 for gate sets, 2 eps for nets) and returns
// the circuit V, S_A, V^dag on the 2n register. With a gate set the
// search runs backwards over the gates that can reach the region, and a
// hit is confirmed on the dense block.
std::optional<Circuit> compile_block_to_shallow(const SewBlock& w, int d, const GeometryGraph& g,
                                                const ShallowSource& src);

}  // namespace scl
