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

#include "scl/gates.hpp"

#include <cmath>

namespace scl {
namespace gates {

namespace {
const cplx kI(0.0, 1.0);
}

Mat2 I2() { return Mat2::Identity(); }

Mat2 X() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 Y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}

Mat2 Z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

Mat2 H() {
  Mat2 m;
  const double r = 1.0 / std::sqrt(2.0);
  m << r, r, r, -r;
  return m;
}

Mat2 S() {
  Mat2 m;
  m << 1, 0, 0, kI;
  return m;
}

Mat2 pauli(char letter) {
  switch (letter) {
    case 'I': return I2();
    case 'X': return X();
    case 'Y': return Y();
    case 'Z': return Z();
  }
  throw Error(std::string("unknown Pauli letter '") + letter + "'");
}

Mat4 kron2(const Mat2& a, const Mat2& b) {
  Mat4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return m;
}

Mat4 identity4() { return Mat4::Identity(); }

Mat4 CNOT() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

Mat4 CZ() {
  Mat4 m = Mat4::Identity();
  m(3, 3) = -1;
  return m;
}

Mat4 SWAP() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  return m;
}

Mat4 ISWAP() {
  Mat4 m = Mat4::Zero();
  m(0, 0) = m(3, 3) = 1;
  m(1, 2) = m(2, 1) = kI;
  return m;
}

Mat4 exp_swap(double theta) {
  return std::cos(theta) * Mat4::Identity() + kI * std::sin(theta) * SWAP();
}

Mat haar_unitary(int dim, SeqRng& rng) {
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      g(i, j) = cplx(rng.normal(), rng.normal()) / std::sqrt(2.0);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

Mat4 random_su4(SeqRng& rng) {
  Mat4 u = haar_unitary(4, rng);
  const cplx det = u.determinant();
  return u * std::pow(det, -0.25);
}

std::vector<Mat4> gateset(const std::string& name) {
  if (name == "clifford2") {
    return {CNOT() * kron2(H(), I2()),  // Bell-pair preparation
            CZ() * kron2(H(), H()),     // two-qubit graph state
            CNOT(),
            CZ(),
            SWAP(),
            kron2(H(), S())};
  }
  if (name == "swap_cz") return {SWAP(), CZ()};
  throw Error("unknown gate set '" + name + "'");
}

}  // namespace gates
}  // namespace scl
