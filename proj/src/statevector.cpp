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

#include "scl/statevector.hpp"

namespace scl {

StateVector StateVector::zero(int n) {
  check_dense_cap(n, "state vector");
  StateVector s;
  s.n = n;
  s.amps = Vec::Zero(std::size_t{1} << n);
  s.amps(0) = 1.0;
  return s;
}

StateVector StateVector::product(const std::vector<Eigen::Vector2cd>& qubits) {
  const int n = static_cast<int>(qubits.size());
  check_dense_cap(n, "state vector");
  Vec v = Vec::Ones(1);
  for (const auto& q : qubits) {
    Vec next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next(2 * i) = v(i) * q(0);
      next(2 * i + 1) = v(i) * q(1);
    }
    v = std::move(next);
  }
  return {n, v};
}

namespace {

template <typename Array>
void gate_kernel(Array& rows, int n, int a, int b, const Mat4& u) {
  if (a == b || a < 0 || b < 0 || a >= n || b >= n)
    throw Error("gate qubits out of range or equal");
  const std::size_t ma = std::size_t{1} << (n - 1 - a);
  const std::size_t mb = std::size_t{1} << (n - 1 - b);
  const std::size_t dim = std::size_t{1} << n;
  const Eigen::Index cols = rows.cols();
  for (Eigen::Index c = 0; c < cols; ++c) {
    cplx* col = rows.data() + c * rows.rows();
    for (std::size_t i = 0; i < dim; ++i) {
      if (i & (ma | mb)) continue;
      const std::size_t idx[4] = {i, i | mb, i | ma, i | ma | mb};
      cplx v[4];
      for (int k = 0; k < 4; ++k) v[k] = col[idx[k]];
      for (int r = 0; r < 4; ++r)
        col[idx[r]] = u(r, 0) * v[0] + u(r, 1) * v[1] + u(r, 2) * v[2] + u(r, 3) * v[3];
    }
  }
}

}  // namespace

void apply_gate_inplace(Mat& rows, int n, int a, int b, const Mat4& u) {
  gate_kernel(rows, n, a, b, u);
}

void apply_gate_inplace(Vec& amps, int n, int a, int b, const Mat4& u) {
  gate_kernel(amps, n, a, b, u);
}

void apply_1q_inplace(Vec& amps, int n, int q, const Mat2& u) {
  const std::size_t m = std::size_t{1} << (n - 1 - q);
  const std::size_t dim = std::size_t{1} << n;
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & m) continue;
    const cplx v0 = amps(i), v1 = amps(i | m);
    amps(i) = u(0, 0) * v0 + u(0, 1) * v1;
    amps(i | m) = u(1, 0) * v0 + u(1, 1) * v1;
  }
}

void apply_circuit_inplace(Vec& amps, const Circuit& c, bool dagger) {
  if (amps.size() != (Eigen::Index{1} << c.n))
    throw Error("state dimension does not match circuit");
  if (!dagger) {
    for (const auto& layer : c.layers)
      for (const auto& g : layer.gates)
        apply_gate_inplace(amps, c.n, g.a, g.b, g.u);
  } else {
    for (auto it = c.layers.rbegin(); it != c.layers.rend(); ++it)
      for (const auto& g : it->gates)
        apply_gate_inplace(amps, c.n, g.a, g.b, g.u.adjoint());
  }
}

StateVector apply_circuit(const StateVector& state, const Circuit& c,
                          bool dagger) {
  if (state.n != c.n) throw Error("circuit and state qubit counts differ");
  StateVector out = state;
  apply_circuit_inplace(out.amps, c, dagger);
  return out;
}

Mat reduced_density(const Vec& amps, int n, const QubitSet& keep) {
  const int k = static_cast<int>(keep.size());
  const std::size_t dim = std::size_t{1} << n;
  std::vector<int> rest;
  for (int q = 0; q < n; ++q)
    if (!contains(keep, q)) rest.push_back(q);
  // Split every index into (kept bits, rest bits) and accumulate.
  const std::size_t kd = std::size_t{1} << k;
  const std::size_t rd = dim >> k;
  Mat psi(kd, rd);
  for (std::size_t i = 0; i < dim; ++i) {
    std::size_t ki = 0, ri = 0;
    for (int t = 0; t < k; ++t)
      ki = (ki << 1) | ((i >> (n - 1 - keep[t])) & 1);
    for (int q : rest) ri = (ri << 1) | ((i >> (n - 1 - q)) & 1);
    psi(ki, ri) = amps(i);
  }
  return psi * psi.adjoint();
}

Mat reduced_density(const StateVector& s, const QubitSet& keep) {
  return reduced_density(s.amps, s.n, keep);
}

cplx expectation(const StateVector& s, const Mat& op, const QubitSet& support) {
  const Mat rho = reduced_density(s, support);
  return (rho * op).trace();
}

void apply_dense_inplace(Vec& amps, int n, const QubitSet& support, const Mat& m) {
  const int k = static_cast<int>(support.size());
  const std::size_t kd = std::size_t{1} << k;
  if (m.rows() != static_cast<Eigen::Index>(kd)) throw Error("operator dimension mismatch");
  std::vector<std::size_t> offset(kd, 0);
  std::size_t mask = 0;
  for (int t = 0; t < k; ++t) mask |= std::size_t{1} << (n - 1 - support[t]);
  for (std::size_t l = 0; l < kd; ++l)
    for (int t = 0; t < k; ++t)
      if ((l >> (k - 1 - t)) & 1) offset[l] |= std::size_t{1} << (n - 1 - support[t]);
  const std::size_t dim = std::size_t{1} << n;
  Vec buf(kd), out(kd);
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < kd; ++l) buf(l) = amps(base | offset[l]);
    out.noalias() = m * buf;
    for (std::size_t l = 0; l < kd; ++l) amps(base | offset[l]) = out(l);
  }
}

void apply_dense_inplace(Mat& rows, int n, const QubitSet& support, const Mat& m) {
  const int k = static_cast<int>(support.size());
  const std::size_t kd = std::size_t{1} << k;
  if (m.rows() != static_cast<Eigen::Index>(kd)) throw Error("operator dimension mismatch");
  if (rows.rows() != (Eigen::Index{1} << n)) throw Error("state dimension does not match circuit");
  std::vector<std::size_t> offset(kd, 0);
  std::size_t mask = 0;
  for (int t = 0; t < k; ++t) mask |= std::size_t{1} << (n - 1 - support[t]);
  for (std::size_t l = 0; l < kd; ++l)
    for (int t = 0; t < k; ++t)
      if ((l >> (k - 1 - t)) & 1) offset[l] |= std::size_t{1} << (n - 1 - support[t]);
  const std::size_t dim = std::size_t{1} << n;
  Mat buf(kd, rows.cols()), out(kd, rows.cols());
  for (std::size_t base = 0; base < dim; ++base) {
    if (base & mask) continue;
    for (std::size_t l = 0; l < kd; ++l) buf.row(l) = rows.row(base | offset[l]);
    out.noalias() = m * buf;
    for (std::size_t l = 0; l < kd; ++l) rows.row(base | offset[l]) = out.row(l);
  }
}

FusedCircuit fuse_circuit(const Circuit& c, int max_support) {
  if (max_support < 2) throw Error("fusion needs at least two qubits per op");
  struct Group {
    QubitSet support;
    Mat m;
    bool open = false;
  };
  FusedCircuit out;
  out.n = c.n;
  std::vector<Group> groups;
  std::vector<int> owner(c.n, -1);
  auto flush = [&](int gi) {
    if (gi < 0 || !groups[gi].open) return;
    groups[gi].open = false;
    for (int q : groups[gi].support) owner[q] = -1;
    out.ops.emplace_back(groups[gi].support, std::move(groups[gi].m));
  };
  auto merged = [&](const QubitSet& base, int gi, const Mat& m) {
    // Disjoint groups commute, so their product is a tensor product.
    const QubitSet s = set_union(base, groups[gi].support);
    return std::make_pair(s, Mat(embed(m, base, s) * embed(groups[gi].m, groups[gi].support, s)));
  };
  for (const auto& layer : c.layers)
    for (const auto& g : layer.gates) {
      int ga = owner[g.a], gb = owner[g.b];
      QubitSet s = normalized({g.a, g.b});
      Mat m = Mat::Identity(4, 4);
      auto size_with = [&](int gi) {
        return gi < 0 ? 0 : static_cast<int>(set_union(s, groups[gi].support).size());
      };
      if (ga >= 0 && ga == gb) {
        s = groups[ga].support;
        m = std::move(groups[ga].m);
        groups[ga].open = false;
      } else {
        const QubitSet both =
            set_union(set_union(s, ga >= 0 ? groups[ga].support : QubitSet{}),
                      gb >= 0 ? groups[gb].support : QubitSet{});
        std::vector<int> take;
        if (static_cast<int>(both.size()) <= max_support) {
          take = {ga, gb};
        } else {
          const int sa = size_with(ga), sb = size_with(gb);
          const bool fa = ga >= 0 && sa <= max_support, fb = gb >= 0 && sb <= max_support;
          if (fa && (!fb || sa >= sb)) {
            flush(gb);
            take = {ga};
          } else if (fb) {
            flush(ga);
            take = {gb};
          } else {
            flush(ga);
            flush(gb);
          }
        }
        for (int gi : take) {
          if (gi < 0) continue;
          auto [ns, nm] = merged(s, gi, m);
          s = std::move(ns);
          m = std::move(nm);
          groups[gi].open = false;
          for (int q : groups[gi].support) owner[q] = -1;
        }
      }
      apply_gate_inplace(m, static_cast<int>(s.size()), index_in(s, g.a), index_in(s, g.b),
                         g.u);
      groups.push_back(Group{s, std::move(m), true});
      for (int q : s) owner[q] = static_cast<int>(groups.size()) - 1;
    }
  for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) flush(gi);
  return out;
}

void apply_fused_inplace(Vec& amps, const FusedCircuit& f, bool dagger) {
  if (amps.size() != (Eigen::Index{1} << f.n)) throw Error("state dimension does not match circuit");
  if (!dagger) {
    for (const auto& op : f.ops) apply_dense_inplace(amps, f.n, op.support, op.matrix);
  } else {
    for (auto it = f.ops.rbegin(); it != f.ops.rend(); ++it)
      apply_dense_inplace(amps, f.n, it->support, it->matrix.adjoint());
  }
}

}  // namespace scl
