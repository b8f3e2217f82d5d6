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


#include "scl/channel.hpp"

#include "scl/pauli.hpp"
#include "scl/statevector.hpp"

namespace scl {

namespace {

Mat pauli_basis_matrix(std::size_t code, int k) {
  static const char kLetters[] = {'I', 'X', 'Y', 'Z'};
  std::string word;
  for (int t = k - 1; t >= 0; --t) word.push_back(kLetters[(code >> (2 * t)) & 3]);
  return pauli_word_matrix(word);
}

}  // namespace

Mat SmallChannel::apply(const Mat& rho) const {
  const Eigen::Index din = Eigen::Index{1} << in_support.size();
  const Eigen::Index dout = Eigen::Index{1} << out_support.size();
  if (rho.rows() != din) throw Error("channel input dimension mismatch");
  // E(rho) = d_in * Tr_in[(rho^T (x) I) J].
  Mat out = Mat::Zero(dout, dout);
  for (Eigen::Index i = 0; i < din; ++i)
    for (Eigen::Index j = 0; j < din; ++j)
      out += rho(i, j) * choi.block(i * dout, j * dout, dout, dout);
  return static_cast<double>(din) * out;
}

Eigen::MatrixXd SmallChannel::ptm() const {
  const int kin = static_cast<int>(in_support.size());
  const int kout = static_cast<int>(out_support.size());
  const std::size_t nin = std::size_t{1} << (2 * kin), nout = std::size_t{1} << (2 * kout);
  const double din = static_cast<double>(std::size_t{1} << kin);
  Eigen::MatrixXd r(nout, nin);
  std::vector<Mat> outs;
  for (std::size_t p = 0; p < nout; ++p) outs.push_back(pauli_basis_matrix(p, kout));
  for (std::size_t q = 0; q < nin; ++q) {
    const Mat eq = apply(pauli_basis_matrix(q, kin));
    for (std::size_t p = 0; p < nout; ++p)
      r(p, q) = std::real((outs[p] * eq).trace()) / din;
  }
  return r;
}

void SmallChannel::validate(double tol) const {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (choi + choi.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw Error("channel Choi state is not PSD");
  const QubitSet all = [&] {
    QubitSet s;
    for (std::size_t t = 0; t < in_support.size() + out_support.size(); ++t)
      s.push_back(static_cast<int>(t));
    return s;
  }();
  QubitSet in_pos(all.begin(), all.begin() + in_support.size());
  const Mat marg = partial_trace(choi, all, in_pos);
  const double din = static_cast<double>(marg.rows());
  if (max_abs(marg - Mat::Identity(marg.rows(), marg.rows()) / din) > tol)
    throw Error("channel is not trace preserving");
}

SmallChannel reduced_channel(const Circuit& c, const QubitSet& keep_in,
                             const QubitSet& keep_out) {
  check_dense_cap(c.n, "reduced_channel");
  const QubitSet kin = normalized(keep_in), kout = normalized(keep_out);
  for (int q : set_union(kin, kout))
    if (q < 0 || q >= c.n) throw Error("reduced_channel: qubit out of range");
  QubitSet rest_in, rest_out;
  for (int q = 0; q < c.n; ++q) {
    if (!contains(kin, q)) rest_in.push_back(q);
    if (!contains(kout, q)) rest_out.push_back(q);
  }
  const Eigen::Index din = Eigen::Index{1} << kin.size();
  const Eigen::Index dout = Eigen::Index{1} << kout.size();
  const Eigen::Index drest = Eigen::Index{1} << rest_in.size();
  const Eigen::Index dtr = Eigen::Index{1} << rest_out.size();
  const int n = c.n;
  auto input_index = [&](Eigen::Index i, Eigen::Index r) {
    Eigen::Index idx = 0;
    for (std::size_t t = 0; t < kin.size(); ++t)
      if ((i >> (kin.size() - 1 - t)) & 1) idx |= Eigen::Index{1} << (n - 1 - kin[t]);
    for (std::size_t t = 0; t < rest_in.size(); ++t)
      if ((r >> (rest_in.size() - 1 - t)) & 1) idx |= Eigen::Index{1} << (n - 1 - rest_in[t]);
    return idx;
  };
  // Output amplitude index -> (kept index, traced index).
  std::vector<Eigen::Index> out_keep(Eigen::Index{1} << n), out_rest(Eigen::Index{1} << n);
  for (Eigen::Index x = 0; x < (Eigen::Index{1} << n); ++x) {
    Eigen::Index a = 0, b = 0;
    for (int q : kout) a = (a << 1) | ((x >> (n - 1 - q)) & 1);
    for (int q : rest_out) b = (b << 1) | ((x >> (n - 1 - q)) & 1);
    out_keep[x] = a, out_rest[x] = b;
  }
  Mat choi = Mat::Zero(din * dout, din * dout);
  for (Eigen::Index r = 0; r < drest; ++r) {
    // Column i of `cols` is U|i, r> reshaped to (kept x traced).
    std::vector<Mat> cols;
    for (Eigen::Index i = 0; i < din; ++i) {
      Vec v = Vec::Zero(Eigen::Index{1} << n);
      v(input_index(i, r)) = 1.0;
      apply_circuit_inplace(v, c);
      Mat a = Mat::Zero(dout, dtr);
      for (Eigen::Index x = 0; x < v.size(); ++x) a(out_keep[x], out_rest[x]) = v(x);
      cols.push_back(std::move(a));
    }
    for (Eigen::Index i = 0; i < din; ++i)
      for (Eigen::Index j = 0; j < din; ++j)
        choi.block(i * dout, j * dout, dout, dout) += cols[i] * cols[j].adjoint();
  }
  choi /= static_cast<double>(din * drest);
  return SmallChannel{kin, kout, choi};
}

double average_infidelity_to_identity(const Eigen::Matrix4d& ptm) {
  const double fe = ptm.trace() / 4.0;
  return 2.0 / 3.0 * (1.0 - fe);
}

}  // namespace scl
