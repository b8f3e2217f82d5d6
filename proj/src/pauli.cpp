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

#include "scl/pauli.hpp"

#include <cctype>
#include <cmath>

#include "scl/gates.hpp"

namespace scl {

PauliString::PauliString(std::map<int, char> l) : letters(std::move(l)) {
  for (auto it = letters.begin(); it != letters.end();) {
    if (it->second == 'I') {
      it = letters.erase(it);
    } else {
      if (it->second != 'X' && it->second != 'Y' && it->second != 'Z')
        throw Error(std::string("invalid Pauli letter '") + it->second + "'");
      ++it;
    }
  }
}

PauliString PauliString::single(int q, char letter) {
  return PauliString({{q, letter}});
}

PauliString PauliString::parse(const std::string& text) {
  std::map<int, char> l;
  size_t i = 0;
  while (i < text.size()) {
    const char c = text[i++];
    size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i) throw Error("Pauli string '" + text + "' is missing a qubit index");
    const int q = std::stoi(text.substr(i, j - i));
    if (l.count(q)) throw Error("Pauli string '" + text + "' repeats a qubit");
    l[q] = c;
    i = j;
  }
  return PauliString(l);
}

QubitSet PauliString::support() const {
  QubitSet s;
  for (const auto& [q, c] : letters) s.push_back(q);
  return s;
}

std::string PauliString::to_string() const {
  std::string s;
  for (const auto& [q, c] : letters) s += c + std::to_string(q);
  return s;
}

char PauliString::at(int q) const {
  auto it = letters.find(q);
  return it == letters.end() ? 'I' : it->second;
}

Mat PauliString::matrix_on(const QubitSet& support) const {
  for (const auto& [q, c] : letters)
    if (!contains(support, q)) throw Error("Pauli letter outside support");
  std::string word;
  for (int q : support) word += at(q);
  return pauli_word_matrix(word);
}

void PauliObservable::add(const PauliString& p, double coef) {
  if (coef == 0.0) return;
  auto& c = terms[p];
  c += coef;
  if (c == 0.0) terms.erase(p);
}

QubitSet PauliObservable::term_support() const {
  QubitSet s;
  for (const auto& [p, c] : terms)
    for (const auto& [q, l] : p.letters) s.push_back(q);
  return normalized(s);
}

Mat PauliObservable::matrix_on(const QubitSet& support) const {
  const Eigen::Index dim = Eigen::Index{1} << support.size();
  Mat m = Mat::Zero(dim, dim);
  for (const auto& [p, c] : terms) m += c * p.matrix_on(support);
  return m;
}

DenseOperator PauliObservable::to_dense() const {
  DenseOperator d(declared_support, matrix());
  d.hermitian = true;
  return d;
}

void PauliObservable::validate() const {
  for (const auto& [p, c] : terms) {
    if (!std::isfinite(c)) throw Error("non-finite Pauli coefficient");
    for (const auto& [q, l] : p.letters)
      if (!contains(declared_support, q))
        throw Error("term " + p.to_string() + " leaves the declared support");
  }
}

std::vector<PauliString> all_paulis_on(const QubitSet& support) {
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  const int k = static_cast<int>(support.size());
  std::vector<PauliString> out;
  const std::size_t total = std::size_t{1} << (2 * k);
  for (std::size_t code = 1; code < total; ++code) {
    std::map<int, char> l;
    for (int t = 0; t < k; ++t) {
      const int digit = (code >> (2 * (k - 1 - t))) & 3;
      if (digit) l[support[t]] = kLetters[digit];
    }
    out.emplace_back(l);
  }
  return out;
}

namespace {

// Tr(P m) / dim for the Pauli word with the given masks (bit k-1-t is
// support position t); P = i^{#Y} X^x Z^z.
double pauli_trace(const Mat& m, std::size_t x, std::size_t z, int ny) {
  const std::size_t dim = static_cast<std::size_t>(m.rows());
  cplx acc = 0;
  for (std::size_t r = 0; r < dim; ++r) {
    const std::size_t c = r ^ x;
    const double sign = (__builtin_popcountll(c & z) & 1) ? -1.0 : 1.0;
    acc += sign * m(c, r);
  }
  static const cplx kPhase[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
  return (kPhase[ny & 3] * acc).real() / static_cast<double>(dim);
}

}  // namespace

PauliObservable pauli_decompose(const Mat& m, const QubitSet& support, double tol,
                                bool include_identity) {
  PauliObservable o;
  o.declared_support = support;
  const int k = static_cast<int>(support.size());
  if (include_identity) {
    const double c = m.trace().real() / static_cast<double>(m.rows());
    if (std::abs(c) > tol) o.add(PauliString(), c);
  }
  for (const auto& p : all_paulis_on(support)) {
    std::size_t x = 0, z = 0;
    int ny = 0;
    for (int t = 0; t < k; ++t) {
      const char l = p.at(support[t]);
      const std::size_t bit = std::size_t{1} << (k - 1 - t);
      if (l == 'X' || l == 'Y') x |= bit;
      if (l == 'Z' || l == 'Y') z |= bit;
      if (l == 'Y') ++ny;
    }
    const double c = pauli_trace(m, x, z, ny);
    if (std::abs(c) > tol) o.add(p, c);
  }
  return o;
}

namespace {

// Interleaved per-qubit (row bit, column bit) digits <-> matrix entries.
Mat interleaved_to_matrix(const std::vector<cplx>& a, int k) {
  const Eigen::Index dim = Eigen::Index{1} << k;
  Mat m(dim, dim);
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    Eigen::Index r = 0, c = 0;
    for (int t = 0; t < k; ++t) {
      const std::size_t digit = (idx >> (2 * (k - 1 - t))) & 3;
      r = (r << 1) | static_cast<Eigen::Index>(digit >> 1);
      c = (c << 1) | static_cast<Eigen::Index>(digit & 1);
    }
    m(r, c) = a[idx];
  }
  return m;
}

std::vector<cplx> matrix_to_interleaved(const Mat& m, int k) {
  std::vector<cplx> a(std::size_t{1} << (2 * k));
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    Eigen::Index r = 0, c = 0;
    for (int t = 0; t < k; ++t) {
      const std::size_t digit = (idx >> (2 * (k - 1 - t))) & 3;
      r = (r << 1) | static_cast<Eigen::Index>(digit >> 1);
      c = (c << 1) | static_cast<Eigen::Index>(digit & 1);
    }
    a[idx] = m(r, c);
  }
  return a;
}

// Entries (r, c) of I, X, Y, Z as rows of a 4 x 4 map from letters.
const std::vector<cplx>& letter_to_entries() {
  static const std::vector<cplx> t = {
      1, 0, 0, 1,                      // (0,0)
      0, 1, cplx(0, -1), 0,            // (0,1)
      0, 1, cplx(0, 1), 0,             // (1,0)
      1, 0, 0, -1};                    // (1,1)
  return t;
}

}  // namespace

Mat matrix_from_pauli_coefficients(const std::vector<double>& coef, int k) {
  if (coef.size() != (std::size_t{1} << (2 * k))) throw Error("Pauli coefficient count mismatch");
  std::vector<cplx> c(coef.begin(), coef.end());
  return interleaved_to_matrix(tensor_axis_transform<cplx>(c, k, 4, 4, letter_to_entries()), k);
}

std::vector<double> pauli_coefficients(const Mat& m) {
  const int k = static_cast<int>(std::lround(std::log2(static_cast<double>(m.rows()))));
  // c_L = (1/2) sum_{rc} P^L_{cr} m_{rc}: the transpose-conjugate pairing
  // of letter_to_entries.
  static const std::vector<cplx> t = {
      0.5, 0, 0, 0.5,                  // I
      0, 0.5, 0.5, 0,                  // X
      0, cplx(0, 0.5), cplx(0, -0.5), 0,  // Y
      0.5, 0, 0, -0.5};                // Z
  const auto out = tensor_axis_transform<cplx>(matrix_to_interleaved(m, k), k, 4, 4, t);
  std::vector<double> re(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) re[i] = out[i].real();
  return re;
}

nlohmann::json observable_to_json(const PauliObservable& o) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [p, c] : o.terms)
    terms.push_back({{"pauli", p.to_string()}, {"coef", c}});
  return {{"support", o.declared_support}, {"terms", terms}};
}

PauliObservable observable_from_json(const nlohmann::json& j) {
  PauliObservable o;
  o.declared_support = j.at("support").get<QubitSet>();
  for (const auto& t : j.at("terms"))
    o.add(PauliString::parse(t.at("pauli").get<std::string>()), t.at("coef").get<double>());
  o.validate();
  return o;
}

}  // namespace scl
