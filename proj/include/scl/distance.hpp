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
#include <functional>

#include "scl/circuit.hpp"
#include "scl/common.hpp"
#include "scl/dense.hpp"

namespace scl {

// Haar-averaged infidelity between two unitaries of equal dimension:
// (d/(d+1)) (1 - |Tr U1^dag U2|^2 / d^2).
double average_gate_distance(const Mat& u1, const Mat& u2);
double average_gate_distance(const DenseOperator& u1, const DenseOperator& u2);

// min over phi of ||e^{i phi} U1 - U2||_F^2 = 2d - 2|Tr U1^dag U2|.
double frobenius_phase_min_sq(const Mat& u1, const Mat& u2);

struct DiamondBounds {
  double lower = 0.0;
  double upper = 0.0;
  double phase = 0.0;  // minimizing phi
};

// m = min_phi ||e^{i phi} U1 - U2||_inf, returned as (m, 2m).
DiamondBounds unitary_diamond_proxy(const Mat& u1, const Mat& u2);
DiamondBounds unitary_diamond_proxy(const DenseOperator& u1, const DenseOperator& u2);

using LinearMap = std::function<void(Vec&)>;

// min_phi ||e^{i phi} M - I||_inf for a unitary M given only through
// its action and the action of M^dag. Uses Lanczos on the imaginary part
// of a phase-rotated M; requires the eigenphases to fit in an arc
// shorter than pi.
double phase_min_deviation_matfree(const LinearMap& apply, const LinearMap& apply_adj,
                                   Eigen::Index dim, std::uint64_t seed = 1);

// min_phi ||e^{i phi} A - B||_inf for two circuits on the same register.
// Dense below 2^9 amplitudes, matrix-free above.
double phase_min_spectral_distance(const Circuit& a, const Circuit& b);

// Smallest and largest eigenvalue of a Hermitian operator (Lanczos with
// full reorthogonalization).
std::pair<double, double> lanczos_extremes(const LinearMap& herm, Eigen::Index dim,
                                           std::uint64_t seed = 1);

}  // namespace scl
