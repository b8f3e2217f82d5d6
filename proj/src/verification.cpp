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


#include "scl/verification.hpp"

#include <algorithm>
#include <unordered_map>

#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/pauli.hpp"
#include "scl/stabilizer.hpp"
#include "scl/statevector.hpp"

namespace scl {
namespace {

constexpr std::array<char, 3> kLetters = {'X', 'Y', 'Z'};
constexpr int kFusedSupport = 6;

// Projects every ancilla factor of an operator on `support` onto |0>.
DenseOperator project_ancillas(const DenseOperator& op, int n) {
  QubitSet sys;
  std::vector<int> sys_pos;
  for (int t = 0; t < op.size(); ++t)
    if (op.support[t] < n) {
      sys.push_back(op.support[t]);
      sys_pos.push_back(t);
    }
  const int k = op.size();
  const Eigen::Index ds = Eigen::Index{1} << sys.size();
  std::vector<Eigen::Index> full(ds, 0);
  for (Eigen::Index x = 0; x < ds; ++x)
    for (std::size_t t = 0; t < sys.size(); ++t)
      if ((x >> (sys.size() - 1 - t)) & 1) full[x] |= Eigen::Index{1} << (k - 1 - sys_pos[t]);
  Mat m(ds, ds);
  for (Eigen::Index r = 0; r < ds; ++r)
    for (Eigen::Index c = 0; c < ds; ++c) m(r, c) = op.matrix(full[r], full[c]);
  return DenseOperator(sys, m);
}

}  // namespace

double strong_local_deviation(const DenseOperator& u, int i) {
  if (!contains(u.support, i)) return 0.0;
  double total = 0;
  for (char p : kLetters) {
    const Mat pi = embed(Mat(gates::pauli(p)), QubitSet{i}, u.support);
    total += spectral_norm(u.matrix.adjoint() * pi * u.matrix - pi);
  }
  return 0.5 * total;
}

double pauli_influence(const DenseOperator& u, int i) {
  check_dense_cap(u.size(), "pauli_influence");
  if (!contains(u.support, i)) return 0.0;
  QubitSet rest;
  for (int q : u.support)
    if (q != i) rest.push_back(q);
  const Mat reduced = partial_trace(u.matrix, u.support, rest);
  const double dim = std::ldexp(1.0, u.size());
  return 1.0 - reduced.squaredNorm() / (2.0 * dim);
}

std::vector<std::array<DenseOperator, 3>> inverse_channel_observables(const Circuit& sewn) {
  if (sewn.n % 2 != 0) throw Error("verification: sewn circuit must act on 2n qubits");
  const int n = sewn.n / 2;
  std::vector<std::array<DenseOperator, 3>> out(n);
  QubitSet sys(n);
  for (int q = 0; q < n; ++q) sys[q] = q;
  // The isometry needs 2^(3n) amplitudes; n = 8 is 268 MB.
  if (sewn.n <= std::max(dense_cap(), 16)) {
    // Isometry |x> -> sewn^dag |x, 0>, one column per system basis state.
    const FusedCircuit f = fuse_circuit(sewn, kFusedSupport);
    const Eigen::Index dn = Eigen::Index{1} << n;
    Mat v = Mat::Zero(dn * dn, dn);
    for (Eigen::Index x = 0; x < dn; ++x) v(x * dn, x) = 1.0;
    for (auto it = f.ops.rbegin(); it != f.ops.rend(); ++it)
      apply_dense_inplace(v, sewn.n, it->support, it->matrix.adjoint());
    Mat v0(dn * dn / 2, dn), v1(dn * dn / 2, dn);
    for (int i = 0; i < n; ++i) {
      const Eigen::Index bit = Eigen::Index{1} << (2 * n - 1 - i);
      for (Eigen::Index r = 0, t = 0; r < dn * dn; ++r) {
        if (r & bit) continue;
        v0.row(t) = v.row(r);
        v1.row(t++) = v.row(r | bit);
      }
      const Mat g01 = v0.adjoint() * v1;
      const Mat g00 = v0.adjoint() * v0;
      const Mat g11 = v1.adjoint() * v1;
      const cplx im(0, 1);
      const std::array<Mat, 3> o = {Mat(g01 + g01.adjoint()), Mat(-im * g01 + im * g01.adjoint()),
                                    Mat(g00 - g11)};
      for (int p = 0; p < 3; ++p)
        out[i][p] = trim_identity_factors(DenseOperator(sys, 0.5 * (o[p] + o[p].adjoint())), 1e-9);
    }
    return out;
  }
  const Circuit inv = sewn.dagger();
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < 3; ++p) {
      const DenseOperator h =
          heisenberg_conjugate(inv, DenseOperator({i}, Mat(gates::pauli(kLetters[p]))));
      out[i][p] = trim_identity_factors(project_ancillas(h, n), 1e-9);
    }
  return out;
}

std::vector<double> estimate_local_deviations(const MeasurementDataset& ds, const Circuit& sewn,
                                              const VerificationOptions& opt) {
  if (ds.mode != DatasetMode::Unitary) throw Error("verification: dataset is not in unitary mode");
  if (ds.size() == 0) throw Error("verification: empty dataset");
  if (sewn.n != 2 * ds.n) throw Error("verification: sewn circuit does not match the dataset");
  const auto obs = inverse_channel_observables(sewn);
  const int n = ds.n;
  // Per-label factors: 1 for I, 3 <s|P|s> otherwise.
  std::array<std::array<double, 4>, 6> w{};
  for (int s = 0; s < 6; ++s) {
    w[s][0] = 1.0;
    for (int p = 0; p < 3; ++p)
      w[s][p + 1] = 3.0 * stab_pauli_sign(static_cast<Stab>(s), kLetters[p]);
  }
  std::vector<double> table(6 * 4);
  for (int s = 0; s < 6; ++s)
    for (int c = 0; c < 4; ++c) table[s * 4 + c] = w[s][c];
  std::vector<double> o(n, 0.0);
  parallel_for(n, opt.jobs, [&](std::size_t idx) {
    const int i = static_cast<int>(idx);
    double trace_r = 1.0;  // R_II
    for (int p = 0; p < 3; ++p) {
      const DenseOperator& op = obs[i][p];
      const int k = op.size();
      if (k > opt.max_support) throw Error("verification: support exceeds the cap");
      // Shadow value of the observable for every outcome pattern on S.
      const std::vector<double> g =
          tensor_axis_transform<double>(pauli_coefficients(op.matrix), k, 4, 6, table);
      std::unordered_map<std::size_t, double> hist;
      for (std::size_t l = 0; l < ds.size(); ++l) {
        const double wi = w[static_cast<int>(stab_from_char(ds.inputs[l][i]))][p + 1];
        if (wi == 0.0) continue;
        std::size_t key = 0;
        for (int q : op.support)
          key = key * 6 + static_cast<std::size_t>(stab_from_char(ds.outcomes[l][q]));
        hist[key] += wi;
      }
      double r = 0;
      for (const auto& [key, weight] : hist) r += weight * g[key];
      trace_r += r / static_cast<double>(ds.size());
    }
    o[i] = (2.0 / 3.0) * (1.0 - trace_r / 4.0);
  });
  return o;
}

VerificationReport verify(const std::vector<double>& o, double eps) {
  VerificationReport r;
  r.o = o;
  double sum = 0;
  for (double v : o) sum += v;
  r.score = 1.5 * sum;
  r.threshold = eps / 2.0;
  r.pass = r.score <= r.threshold;
  return r;
}

nlohmann::json verification_to_json(const VerificationReport& r) {
  return {{"format_version", kFormatVersion},
          {"o", r.o},
          {"score", r.score},
          {"threshold", r.threshold},
          {"verdict", r.pass ? "PASS" : "FAIL"}};
}

}  // namespace scl
