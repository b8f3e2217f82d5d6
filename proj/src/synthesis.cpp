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


#include "scl/synthesis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "scl/gates.hpp"

namespace scl {

namespace {

Mat2 ry(double a) {
  Mat2 m;
  m << std::cos(a / 2), -std::sin(a / 2), std::sin(a / 2), std::cos(a / 2);
  return m;
}

Mat2 rz(double a) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(cplx(0.0, -a / 2));
  m(1, 1) = std::exp(cplx(0.0, a / 2));
  return m;
}

// Rotation on `target` whose angle alpha[j] depends on the basis state j
// of `controls` (controls[0] most significant). Gray-code construction
// with 2^m two-qubit gates, each a rotation followed by a CNOT.
void multiplexed_rotation(bool is_y, const std::vector<double>& alpha, int target,
                          const std::vector<int>& controls, std::vector<Gate>& out) {
  const int m = static_cast<int>(controls.size());
  const std::size_t n = alpha.size();
  auto gray = [](std::size_t i) { return i ^ (i >> 1); };
  for (std::size_t i = 0; i < n; ++i) {
    double beta = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      beta += (std::popcount(gray(i) & j) % 2 ? -1.0 : 1.0) * alpha[j];
    beta /= static_cast<double>(n);
    const std::size_t flip = gray(i) ^ gray((i + 1) % n);
    const int bit = std::countr_zero(flip);
    const int ctrl = controls[m - 1 - bit];
    const Mat2 r = is_y ? ry(beta) : rz(beta);
    out.push_back(Gate{ctrl, target, gates::CNOT() * gates::kron2(gates::I2(), r), -1});
  }
}

void qsd(const Mat& u, const std::vector<int>& qubits, std::vector<Gate>& out);

// A1 (+) A2 on qubits (qubits[0] selects the block).
void demultiplex(const Mat& a1, const Mat& a2, const std::vector<int>& qubits,
                 std::vector<Gate>& out) {
  Eigen::ComplexSchur<Mat> schur(a1 * a2.adjoint());
  const Mat& v = schur.matrixU();
  const Eigen::Index h = a1.rows();
  Vec d(h);
  std::vector<double> alpha(h);
  for (Eigen::Index j = 0; j < h; ++j) {
    const double g = 0.5 * std::arg(schur.matrixT()(j, j));
    d(j) = std::exp(cplx(0.0, g));
    alpha[j] = -2.0 * g;
  }
  const Mat w = d.asDiagonal() * v.adjoint() * a2;
  const std::vector<int> rest(qubits.begin() + 1, qubits.end());
  qsd(w, rest, out);
  multiplexed_rotation(false, alpha, qubits[0], rest, out);
  qsd(v, rest, out);
}

void qsd(const Mat& u, const std::vector<int>& qubits, std::vector<Gate>& out) {
  const int k = static_cast<int>(qubits.size());
  if (k == 2) {
    out.push_back(Gate{qubits[0], qubits[1], Mat4(u), -1});
    return;
  }
  const lapack_int m = static_cast<lapack_int>(u.rows()), p = m / 2;
  Mat x = u;
  Mat u1(p, p), u2(p, p), v1t(p, p), v2t(p, p);
  std::vector<double> theta(p);
  cplx* base = x.data();
  const lapack_int info = LAPACKE_zuncsd(
      LAPACK_COL_MAJOR, 'Y', 'Y', 'Y', 'Y', 'N', 'D', m, p, p, base, m, base + p * m, m,
      base + p, m, base + p * m + p, m, theta.data(), u1.data(), p, u2.data(), p,
      v1t.data(), p, v2t.data(), p);
  if (info != 0) throw Error("cosine-sine decomposition failed");
  std::vector<double> alpha(p);
  for (lapack_int j = 0; j < p; ++j) alpha[j] = 2.0 * theta[j];
  const std::vector<int> rest(qubits.begin() + 1, qubits.end());
  demultiplex(v1t, v2t, qubits, out);
  multiplexed_rotation(true, alpha, qubits[0], rest, out);
  demultiplex(u1, u2, qubits, out);
}

std::vector<int> shortest_path(const GeometryGraph& g, int from, int to) {
  std::vector<int> prev(g.vertex_count(), -1);
  std::queue<int> q;
  q.push(from);
  prev[from] = from;
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    if (v == to) break;
    for (int w : g.neighbors(v))
      if (prev[w] < 0) prev[w] = v, q.push(w);
  }
  if (prev[to] < 0) throw Error("synthesis: graph is disconnected");
  std::vector<int> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::vector<Gate> shannon_decompose(const Mat& u) {
  const int k = static_cast<int>(std::lround(std::log2(static_cast<double>(u.rows()))));
  if (k < 2) throw Error("synthesis needs at least two qubits");
  std::vector<int> qubits(k);
  for (int i = 0; i < k; ++i) qubits[i] = i;
  std::vector<Gate> out;
  qsd(u, qubits, out);
  return out;
}

Circuit schedule_gates(const std::vector<Gate>& gates, int n) {
  Circuit c(n);
  std::vector<int> next(n, 0);
  for (const Gate& g : gates) {
    const int layer = std::max(next[g.a], next[g.b]);
    if (layer >= c.depth()) c.layers.resize(layer + 1);
    c.layers[layer].gates.push_back(g);
    next[g.a] = next[g.b] = layer + 1;
  }
  return c;
}

Circuit synthesize_unitary(const DenseOperator& w, const GeometryGraph* graph, int k_max,
                           int register_size) {
  const int k = w.size();
  if (k > k_max) throw Error("synthesis: support exceeds k_max");
  if (!is_unitary(w.matrix, 1e-9)) throw Error("synthesis: input is not unitary");
  std::vector<Gate> local = shannon_decompose(w.matrix);
  if (graph) {
    const GeometryGraph sub = graph->induced(w.support);
    if (!sub.connected()) throw Error("synthesis: graph is disconnected on the support");
    std::vector<Gate> routed;
    for (const Gate& g : local) {
      if (sub.has_edge(g.a, g.b)) {
        routed.push_back(g);
        continue;
      }
      const auto path = shortest_path(sub, g.a, g.b);
      const int hops = static_cast<int>(path.size()) - 2;
      for (int h = 0; h < hops; ++h)
        routed.push_back(Gate{path[h], path[h + 1], gates::SWAP(), -1});
      routed.push_back(Gate{path[hops], g.b, g.u, -1});
      for (int h = hops - 1; h >= 0; --h)
        routed.push_back(Gate{path[h], path[h + 1], gates::SWAP(), -1});
    }
    local = std::move(routed);
  }
  int reg = register_size;
  if (reg < 0) reg = *std::max_element(w.support.begin(), w.support.end()) + 1;
  for (Gate& g : local) g.a = w.support[g.a], g.b = w.support[g.b];
  return schedule_gates(local, reg);
}

}  // namespace scl
