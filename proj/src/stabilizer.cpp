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

#include "scl/stabilizer.hpp"

#include <cmath>

#include "scl/gates.hpp"

namespace scl {

char stab_char(Stab s) { return kStabChars[static_cast<int>(s)]; }

Stab stab_from_char(char c) {
  for (int k = 0; k < 6; ++k)
    if (kStabChars[k] == c) return static_cast<Stab>(k);
  throw Error(std::string("invalid stabilizer label '") + c + "'");
}

Eigen::Vector2cd stab_vector(Stab s) {
  const double r = 1.0 / std::sqrt(2.0);
  const cplx i(0, 1);
  switch (s) {
    case Stab::Z0: return {1, 0};
    case Stab::Z1: return {0, 1};
    case Stab::Xp: return {r, r};
    case Stab::Xm: return {r, -r};
    case Stab::Yp: return {r, r * i};
    case Stab::Ym: return {r, -r * i};
  }
  throw Error("invalid stabilizer state");
}

Mat2 stab_projector(Stab s) {
  const auto v = stab_vector(s);
  return v * v.adjoint();
}

int stab_basis(Stab s) { return static_cast<int>(s) < 2 ? 2 : (static_cast<int>(s) < 4 ? 0 : 1); }

int stab_pauli_sign(Stab s, char pauli) {
  static const int kTable[6][3] = {
      // X, Y, Z
      {0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}};
  const int col = pauli == 'X' ? 0 : pauli == 'Y' ? 1 : pauli == 'Z' ? 2 : -1;
  if (col < 0) throw Error("Pauli must be X, Y or Z");
  return kTable[static_cast<int>(s)][col];
}

namespace {

struct LocalTerm {
  Stab s;
  Stab probe;
  double b;
};

// Per-qubit identity map: rho = sum_r b_r |s_r><s_r| <s'_r|rho|s'_r>.
const std::array<LocalTerm, 10> kLocal = {{{Stab::Z0, Stab::Z0, 1.0},
                                           {Stab::Z1, Stab::Z1, 1.0},
                                           {Stab::Xp, Stab::Xp, 0.5},
                                           {Stab::Xp, Stab::Xm, -0.5},
                                           {Stab::Xm, Stab::Xp, -0.5},
                                           {Stab::Xm, Stab::Xm, 0.5},
                                           {Stab::Yp, Stab::Yp, 0.5},
                                           {Stab::Yp, Stab::Ym, -0.5},
                                           {Stab::Ym, Stab::Yp, -0.5},
                                           {Stab::Ym, Stab::Ym, 0.5}}};

}  // namespace

std::vector<StabilizerTerm> stabilizer_decompose(const DenseOperator& rho,
                                                 const QubitSet& decomposed) {
  const Mat& m = rho.matrix;
  if (!is_hermitian(m, 1e-9)) throw Error("stabilizer_decompose: input is not Hermitian");
  if (std::abs(m.trace() - cplx(1.0)) > 1e-9)
    throw Error("stabilizer_decompose: input trace is not 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw Error("stabilizer_decompose: input is not positive semidefinite");
  for (int q : decomposed)
    if (!contains(rho.support, q)) throw Error("decomposed qubit outside support");

  QubitSet rest;
  for (int q : rho.support)
    if (!contains(decomposed, q)) rest.push_back(q);
  const int k = static_cast<int>(decomposed.size());
  QubitSet order = decomposed;
  order.insert(order.end(), rest.begin(), rest.end());
  const Mat mo = permute_factors(m, rho.support, order);
  const Eigen::Index rd = Eigen::Index{1} << rest.size();

  std::size_t total = 1;
  for (int t = 0; t < k; ++t) total *= 10;
  std::vector<StabilizerTerm> out;
  out.reserve(total);
  for (std::size_t r = 0; r < total; ++r) {
    // Digit t of r (least significant first) picks the term on qubit t.
    std::size_t code = r;
    Vec probe = Vec::Ones(1);
    double b = 1.0;
    std::string label(k, '0'), plabel(k, '0');
    for (int t = 0; t < k; ++t) {
      const auto& lt = kLocal[code % 10];
      code /= 10;
      b *= lt.b;
      label[t] = stab_char(lt.s);
      plabel[t] = stab_char(lt.probe);
    }
    for (int t = 0; t < k; ++t) {
      const Vec v = stab_vector(stab_from_char(plabel[t]));
      probe = kron(probe, v);
    }
    // <s'|rho|s'> on the remaining qubits.
    const Mat pk = kron(probe, Mat::Identity(rd, rd));
    const Mat cond = pk.adjoint() * mo * pk;
    const double z = cond.trace().real();
    StabilizerTerm term;
    term.coef = b * z;
    term.label = label;
    term.probe = plabel;
    Mat normalized_cond = z > 1e-15 ? Mat(cond / z) : Mat(Mat::Identity(rd, rd) / double(rd));
    term.conditional = DenseOperator(rest, normalized_cond);
    out.push_back(std::move(term));
  }
  return out;
}

std::vector<StabilizerTerm> stabilizer_decompose(const DenseOperator& rho) {
  return stabilizer_decompose(rho, rho.support);
}

Mat stabilizer_recompose(const std::vector<StabilizerTerm>& terms,
                         const QubitSet& decomposed, const QubitSet& support) {
  QubitSet rest;
  for (int q : support)
    if (!contains(decomposed, q)) rest.push_back(q);
  QubitSet order = decomposed;
  order.insert(order.end(), rest.begin(), rest.end());
  const Eigen::Index dim = Eigen::Index{1} << support.size();
  Mat acc = Mat::Zero(dim, dim);
  for (const auto& t : terms) {
    Mat prep = Mat::Ones(1, 1);
    for (char c : t.label) prep = kron(prep, Mat(stab_projector(stab_from_char(c))));
    acc += t.coef * kron(prep, t.conditional.matrix);
  }
  return permute_factors(acc, order, support);
}

}  // namespace scl
