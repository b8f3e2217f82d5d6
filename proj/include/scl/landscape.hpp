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

#include <cstdint>
#include <vector>

#include "scl/circuit.hpp"

namespace scl {

// Angles of the three-layer SWAP network on n qubits, grouped per 4-qubit
// block (a, b, c, d) = (4j, ..., 4j+3): (ab, cd) in layer 1, bc in layer 2,
// (ab, cd) in layer 3. links[j] is the layer-2 gate on (4j+3, 4j+4).
// Qubits beyond the last full block carry no gates.
struct SwapAnsatzParams {
  int n = 0;
  std::vector<double> blocks;  // 5 per block
  std::vector<double> links;   // blocks - 1

  int block_count() const { return n / 4; }
  std::size_t size() const { return blocks.size() + links.size(); }
  void validate() const;
  std::vector<double> flat() const;
  static SwapAnsatzParams from_flat(int n, const std::vector<double>& v);
};

SwapAnsatzParams zero_params(int n);
// exp(i theta SWAP) gates on the brickwork pairs.
Circuit build_swap_ansatz(const SwapAnsatzParams& theta);
// prod_{j in S} SWAP(4j, 4j+3).
Circuit target_swap_circuit(const std::vector<int>& s, int n);

struct CostEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// sum_i (2/3)(1 - ||Tr_i W||_F^2 / 2^(n+1)) with W = U(theta)^dag U_S.
double local_cost_exact(const SwapAnsatzParams& theta, const std::vector<int>& s);
// Average of sum_i (1 - <psi_i| rho_i |psi_i>) over M product stabilizer inputs.
CostEstimate local_cost_monte_carlo(const SwapAnsatzParams& theta, const std::vector<int>& s,
                                    std::size_t m, std::uint64_t seed);

// Block angles pi/2 where j in S has its bit of x set, zero elsewhere.
SwapAnsatzParams local_minimum_point(std::uint64_t x, const std::vector<int>& s, int n);

struct ProbeResult {
  double min_cost = 0.0;
  std::vector<double> argmin_offset;
};
// Exact cost at `trials` uniform offsets with ||offset||_inf <= radius.
ProbeResult probe_neighborhood(const SwapAnsatzParams& theta0, const std::vector<int>& s,
                               double radius, std::size_t trials, std::uint64_t seed,
                               int jobs = 1);

}  // namespace scl
