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
#include <string>
#include <vector>

#include "scl/common.hpp"
#include "scl/dense.hpp"

namespace scl {

// The six single-qubit stabilizer states; characters "01+-rl".
enum class Stab : std::uint8_t { Z0 = 0, Z1, Xp, Xm, Yp, Ym };

inline constexpr std::array<char, 6> kStabChars = {'0', '1', '+', '-', 'r', 'l'};

char stab_char(Stab s);
Stab stab_from_char(char c);
Eigen::Vector2cd stab_vector(Stab s);
Mat2 stab_projector(Stab s);
// <s|P|s> for P in {X, Y, Z}: one of -1, 0, +1 (the 18-entry table).
int stab_pauli_sign(Stab s, char pauli);
// Basis index 0/1/2 (X/Y/Z) the state is an eigenstate of.
int stab_basis(Stab s);

struct StabilizerTerm {
  double coef = 0.0;
  std::string label;  // prepared states |s_r> on the decomposed qubits
  std::string probe;  // projected states |s'_r>
  DenseOperator conditional;  // normalized state on the remaining qubits
};

// Single-qubit stabilizer decomposition applied on every qubit of
// `decomposed` (a subset of rho.support): rho = sum_r alpha_r |s_r><s_r|
// (x) rho_r with 10^|decomposed| terms, sum alpha = 1 and
// sum |alpha| = 3^|decomposed|.
std::vector<StabilizerTerm> stabilizer_decompose(const DenseOperator& rho,
                                                 const QubitSet& decomposed);
std::vector<StabilizerTerm> stabilizer_decompose(const DenseOperator& rho);
// Inverse map: sum_r alpha_r |s_r><s_r| (x) rho_r on `support`.
Mat stabilizer_recompose(const std::vector<StabilizerTerm>& terms,
                         const QubitSet& decomposed, const QubitSet& support);

}  // namespace scl
