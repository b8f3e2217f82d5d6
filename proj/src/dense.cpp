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

#include "scl/dense.hpp"

#include <algorithm>

#include "scl/gates.hpp"

namespace scl {

DenseOperator::DenseOperator(QubitSet s, Mat m)
    : support(std::move(s)), matrix(std::move(m)) {
  if (matrix.rows() != matrix.cols() ||
      matrix.rows() != (Eigen::Index{1} << support.size()))
    throw Error("dense operator dimension does not match its support");
  if (normalized(support).size() != support.size())
    throw Error("dense operator support has repeated qubits");
}

DenseOperator& DenseOperator::mark_hermitian() {
  if (!is_hermitian(matrix)) throw Error("operator is not Hermitian");
  hermitian = true;
  return *this;
}

DenseOperator& DenseOperator::mark_unitary() {
  if (!is_unitary(matrix)) throw Error("operator is not unitary");
  unitary = true;
  return *this;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

namespace {

// Bit position (from the most significant end) of each `from` qubit in `to`.
std::vector<int> positions(const QubitSet& from, const QubitSet& to) {
  std::vector<int> pos;
  for (int q : from) {
    const int p = index_in(to, q);
    if (p < 0) throw Error("qubit " + std::to_string(q) + " missing from target support");
    pos.push_back(p);
  }
  return pos;
}

}  // namespace

Mat embed(const Mat& m, const QubitSet& from, const QubitSet& to) {
  const int k = static_cast<int>(from.size());
  const int K = static_cast<int>(to.size());
  if (m.rows() != (Eigen::Index{1} << k)) throw Error("embed: dimension mismatch");
  const auto pos = positions(from, to);
  std::vector<int> rest;
  for (int p = 0; p < K; ++p)
    if (std::find(pos.begin(), pos.end(), p) == pos.end()) rest.push_back(p);
  const std::size_t dk = std::size_t{1} << k, dr = std::size_t{1} << (K - k);
  // Full index of (sub index, rest index).
  auto full = [&](std::size_t s, std::size_t r) {
    std::size_t idx = 0;
    for (int t = 0; t < k; ++t)
      if ((s >> (k - 1 - t)) & 1) idx |= std::size_t{1} << (K - 1 - pos[t]);
    const int nr = K - k;
    for (int t = 0; t < nr; ++t)
      if ((r >> (nr - 1 - t)) & 1) idx |= std::size_t{1} << (K - 1 - rest[t]);
    return idx;
  };
  std::vector<std::size_t> table(dk * dr);
  for (std::size_t s = 0; s < dk; ++s)
    for (std::size_t r = 0; r < dr; ++r) table[s * dr + r] = full(s, r);
  Mat out = Mat::Zero(Eigen::Index{1} << K, Eigen::Index{1} << K);
  for (std::size_t r = 0; r < dr; ++r)
    for (std::size_t i = 0; i < dk; ++i)
      for (std::size_t j = 0; j < dk; ++j)
        out(table[i * dr + r], table[j * dr + r]) = m(i, j);
  return out;
}

DenseOperator embed(const DenseOperator& op, const QubitSet& to) {
  DenseOperator out(to, embed(op.matrix, op.support, to));
  out.hermitian = op.hermitian;
  out.unitary = op.unitary;
  return out;
}

Mat partial_trace(const Mat& m, const QubitSet& support, const QubitSet& keep) {
  const int K = static_cast<int>(support.size());
  const int k = static_cast<int>(keep.size());
  const auto pos = positions(keep, support);
  std::vector<int> rest;
  for (int p = 0; p < K; ++p)
    if (std::find(pos.begin(), pos.end(), p) == pos.end()) rest.push_back(p);
  const std::size_t dk = std::size_t{1} << k, dr = std::size_t{1} << (K - k);
  std::vector<std::size_t> table(dk * dr);
  for (std::size_t s = 0; s < dk; ++s)
    for (std::size_t r = 0; r < dr; ++r) {
      std::size_t idx = 0;
      for (int t = 0; t < k; ++t)
        if ((s >> (k - 1 - t)) & 1) idx |= std::size_t{1} << (K - 1 - pos[t]);
      for (int t = 0; t < K - k; ++t)
        if ((r >> (K - k - 1 - t)) & 1) idx |= std::size_t{1} << (K - 1 - rest[t]);
      table[s * dr + r] = idx;
    }
  Mat out = Mat::Zero(dk, dk);
  for (std::size_t i = 0; i < dk; ++i)
    for (std::size_t j = 0; j < dk; ++j) {
      cplx acc = 0;
      for (std::size_t r = 0; r < dr; ++r) acc += m(table[i * dr + r], table[j * dr + r]);
      out(i, j) = acc;
    }
  return out;
}

Mat permute_factors(const Mat& m, const QubitSet& from, const QubitSet& to) {
  if (normalized(from) != normalized(to))
    throw Error("permute_factors: supports differ");
  return embed(m, from, to);
}

Eigen::VectorXd singular_values(const Mat& m) {
  if (m.rows() <= 64) {
    Eigen::JacobiSVD<Mat> svd(m);
    return svd.singularValues();
  }
  Eigen::BDCSVD<Mat> svd(m);
  return svd.singularValues();
}

double spectral_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  if (is_hermitian(m, 1e-13)) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return singular_values(m)(0);
}

bool is_hermitian(const Mat& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Mat& m, double tol) {
  return m.rows() == m.cols() &&
         (m.adjoint() * m - Mat::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Mat pauli_word_matrix(const std::string& word) {
  Mat out = Mat::Ones(1, 1);
  for (char c : word) out = kron(out, Mat(gates::pauli(c)));
  return out;
}

}  // namespace scl
