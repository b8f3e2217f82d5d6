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

// Choi state (1/d_in) sum_ij |i><j| (x) E(|i><j|), input factors first.
struct SmallChannel {
  QubitSet in_support;
  QubitSet out_support;
  Mat choi;

  // Applies the channel to a density matrix on in_support.
  Mat apply(const Mat& rho) const;
  // Pauli transfer matrix R_PQ = Tr(P E(Q)) / d_in, Paulis in base-4
  // order (I, X, Y, Z per factor); real part.
  Eigen::MatrixXd ptm() const;
  // Throws unless PSD and trace preserving within tol.
  void validate(double tol = 1e-9) const;
};

// Feeds maximally mixed states on the inputs outside keep_in, applies the
// circuit and traces out everything outside keep_out.
SmallChannel reduced_channel(const Circuit& c, const QubitSet& keep_in,
                             const QubitSet& keep_out);

// Haar-averaged infidelity of a single-qubit channel (given by its 4x4
// transfer matrix) relative to the identity: (2/3)(1 - F_e) with
// F_e = Tr(R) / 4.
double average_infidelity_to_identity(const Eigen::Matrix4d& ptm);

}  // namespace scl
