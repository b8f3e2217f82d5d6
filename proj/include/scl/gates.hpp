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
#include <vector>

#include "scl/common.hpp"
#include "scl/rng.hpp"

namespace scl {
namespace gates {

Mat2 I2();
Mat2 X();
Mat2 Y();
Mat2 Z();
Mat2 H();
Mat2 S();
// Pauli by letter: 'I', 'X', 'Y', 'Z'.
Mat2 pauli(char letter);

Mat4 CNOT();
Mat4 CZ();
Mat4 SWAP();
Mat4 ISWAP();
Mat4 identity4();
Mat4 kron2(const Mat2& a, const Mat2& b);
// exp(i theta SWAP) = cos(theta) I + i sin(theta) SWAP.
Mat4 exp_swap(double theta);

// Haar-random unitary of dimension dim (QR of a complex Ginibre matrix
// with the phase fix on R's diagonal).
Mat haar_unitary(int dim, SeqRng& rng);
Mat4 random_su4(SeqRng& rng);

// Named finite gate sets; "clifford2" is six two-qubit Cliffords.
std::vector<Mat4> gateset(const std::string& name);

}  // namespace gates
}  // namespace scl
