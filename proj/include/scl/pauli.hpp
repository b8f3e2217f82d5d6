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

#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "scl/common.hpp"
#include "scl/dense.hpp"

namespace scl {

// Non-identity letters keyed by qubit index.
struct PauliString {
  std::map<int, char> letters;

  PauliString() = default;
  explicit PauliString(std::map<int, char> l);
  static PauliString single(int q, char letter);
  // Parses "X1Z3" (letter followed by qubit index, repeated).
  static PauliString parse(const std::string& text);

  int weight() const { return static_cast<int>(letters.size()); }
  QubitSet support() const;
  std::string to_string() const;
  // Letter on qubit q, 'I' if absent.
  char at(int q) const;
  // Dense matrix on `support` (must contain every letter's qubit).
  Mat matrix_on(const QubitSet& support) const;
  bool operator<(const PauliString& o) const { return letters < o.letters; }
  bool operator==(const PauliString& o) const { return letters == o.letters; }
};

// Real combination of Pauli strings; zero coefficients are not stored.
struct PauliObservable {
  std::map<PauliString, double> terms;
  QubitSet declared_support;

  void add(const PauliString& p, double coef);
  QubitSet term_support() const;
  // Dense matrix on `support` (defaults to declared_support).
  Mat matrix_on(const QubitSet& support) const;
  Mat matrix() const { return matrix_on(declared_support); }
  DenseOperator to_dense() const;
  // Throws if a term leaves the declared support or a coefficient is
  // not finite.
  void validate() const;
};

// All Pauli strings with letters in `support`, identity excluded,
// enumerated with letters over support positions in base-4 order.
std::vector<PauliString> all_paulis_on(const QubitSet& support);
// Pauli expansion of a dense operator on `support` (real parts kept,
// |coef| <= tol dropped).
PauliObservable pauli_decompose(const Mat& m, const QubitSet& support,
                                double tol = 1e-12, bool include_identity = true);

// Applies the b x a matrix `t` (row-major) to each of the k axes of a
// tensor of shape (a, ..., a), axis 0 most significant. Each pass
// transforms the leading axis and rotates it to the end, so after k
// passes the axis order is restored.
template <typename T>
std::vector<T> tensor_axis_transform(const std::vector<T>& in, int k, int a, int b,
                                     const std::vector<T>& t) {
  std::vector<T> cur = in;
  for (int axis = 0; axis < k; ++axis) {
    const std::size_t post = cur.size() / static_cast<std::size_t>(a);
    std::vector<T> next(post * static_cast<std::size_t>(b));
    for (std::size_t p = 0; p < post; ++p)
      for (int r = 0; r < b; ++r) {
        T acc{};
        for (int c = 0; c < a; ++c) {
          const T& w = t[static_cast<std::size_t>(r) * a + c];
          if (w != T{}) acc += w * cur[static_cast<std::size_t>(c) * post + p];
        }
        next[p * b + r] = acc;
      }
    cur = std::move(next);
  }
  return cur;
}

// Dense matrix sum_P c_P P on k qubits; coefficients indexed by base-4
// code over (I, X, Y, Z), qubit 0 the most significant digit.
Mat matrix_from_pauli_coefficients(const std::vector<double>& coef, int k);
// Tr(P m) / 2^k for every Pauli code (real parts).
std::vector<double> pauli_coefficients(const Mat& m);

nlohmann::json observable_to_json(const PauliObservable& o);
PauliObservable observable_from_json(const nlohmann::json& j);

}  // namespace scl
