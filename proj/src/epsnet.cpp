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


#include "scl/epsnet.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "scl/distance.hpp"
#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/rng.hpp"

namespace scl {
namespace {

const std::array<Mat4, 15>& pauli_pairs() {
  static const std::array<Mat4, 15> table = [] {
    std::array<Mat4, 15> t;
    const char letters[4] = {'I', 'X', 'Y', 'Z'};
    for (int code = 1; code < 16; ++code)
      t[code - 1] = gates::kron2(gates::pauli(letters[code / 4]), gates::pauli(letters[code % 4]));
    return t;
  }();
  return table;
}

// min_phi ||e^{i phi} a - b||_inf for 4x4 unitaries, from the smallest
// arc holding the eigenphases of a^dag b.
double phase_min_distance4(const Mat4& a, const Mat4& b) {
  Eigen::ComplexSchur<Mat4> schur(a.adjoint() * b);
  std::vector<double> ph(4);
  for (int k = 0; k < 4; ++k) ph[k] = std::arg(schur.matrixT()(k, k));
  std::sort(ph.begin(), ph.end());
  double gap = ph[0] + 2 * std::numbers::pi - ph[3];
  for (int k = 0; k + 1 < 4; ++k) gap = std::max(gap, ph[k + 1] - ph[k]);
  return 2 * std::sin((2 * std::numbers::pi - gap) / 4);
}

// Matchings of `edges` in lexicographic order, the empty one first.
void matchings_rec(const std::vector<Edge>& edges, std::size_t from, std::vector<bool>& busy,
                   std::vector<Edge>& cur, std::vector<std::vector<Edge>>& out) {
  out.push_back(cur);
  for (std::size_t e = from; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    if (busy[a] || busy[b]) continue;
    busy[a] = busy[b] = true;
    cur.push_back(edges[e]);
    matchings_rec(edges, e + 1, busy, cur, out);
    cur.pop_back();
    busy[a] = busy[b] = false;
  }
}

std::vector<std::vector<Edge>> matchings_of(const std::vector<Edge>& edges, int n) {
  std::vector<std::vector<Edge>> out;
  std::vector<bool> busy(n, false);
  std::vector<Edge> cur;
  matchings_rec(edges, 0, busy, cur, out);
  return out;
}

DenseOperator conjugate_by_gate(const DenseOperator& op, const Edge& e, const Mat4& u) {
  const QubitSet s = set_union(op.support, {e.first, e.second});
  const Mat g = embed(Mat(u), QubitSet{e.first, e.second}, s);
  return DenseOperator(s, g.adjoint() * embed(op.matrix, op.support, s) * g);
}

bool same_operator(const DenseOperator& a, const DenseOperator& b, double tol) {
  const QubitSet s = set_union(a.support, b.support);
  return max_abs(embed(a.matrix, a.support, s) - embed(b.matrix, b.support, s)) <= tol;
}

struct GatesetSearch {
  const GeometryGraph& g;
  const QubitSet& allowed;
  const std::vector<Mat4>& gateset;
  std::vector<DenseOperator> targets;
  std::vector<std::vector<Gate>> chosen;  // per layer

  bool run(int t, const std::vector<DenseOperator>& ops) {
    if (t < 0) {
      for (std::size_t k = 0; k < ops.size(); ++k)
        if (!same_operator(trim_identity_factors(ops[k], 1e-9), targets[k], 1e-8)) return false;
      return true;
    }
    QubitSet sup;
    for (const auto& o : ops) sup = set_union(sup, o.support);
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
      if (contains(allowed, e.first) && contains(allowed, e.second) &&
          (contains(sup, e.first) || contains(sup, e.second)))
        edges.push_back(e);
    for (const auto& m : matchings_of(edges, g.vertex_count())) {
      std::vector<std::size_t> pick(m.size(), 0);
      while (true) {
        std::vector<DenseOperator> next = ops;
        for (std::size_t k = 0; k < m.size(); ++k)
          for (auto& o : next)
            if (contains(o.support, m[k].first) || contains(o.support, m[k].second))
              o = conjugate_by_gate(o, m[k], gateset[pick[k]]);
        chosen[t].clear();
        for (std::size_t k = 0; k < m.size(); ++k)
          chosen[t].push_back(Gate{m[k].first, m[k].second, gateset[pick[k]],
                                   static_cast<int>(pick[k])});
        if (run(t - 1, next)) return true;
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == gateset.size()) pick[k++] = 0;
        if (k == pick.size()) break;
      }
    }
    return false;
  }
};

// V, S_A, V^dag on the doubled register.
Circuit block_circuit(const Circuit& v, const QubitSet& region, int n) {
  std::vector<int> map(n);
  for (int q = 0; q < n; ++q) map[q] = q;
  Circuit fwd = v.relabeled(map, 2 * n);
  fwd.geometry.reset();
  Circuit out = fwd;
  Layer swap;
  for (int j : region) swap.gates.push_back(Gate{j, n + j, gates::SWAP(), -1});
  out.layers.push_back(swap);
  out.append(fwd.dagger());
  return out.compacted();
}

bool confirms(const Circuit& c, const SewBlock& w, double tol) {
  QubitSet s = w.support;
  for (const auto& l : c.layers)
    for (const auto& gt : l.gates) s = set_union(s, {gt.a, gt.b});
  const Mat target = embed(w.w.matrix, w.support, s);
  return unitary_diamond_proxy(circuit_unitary_on(c, s), target).lower <= tol;
}

}  // namespace

Mat4 gate_from_coordinates(const NetCoordinates& theta) {
  Mat4 h = Mat4::Zero();
  for (int k = 0; k < 15; ++k) h += theta[k] * pauli_pairs()[k];
  Eigen::SelfAdjointEigenSolver<Mat4> es(h);
  Eigen::Vector4cd ph;
  for (int k = 0; k < 4; ++k) ph(k) = std::polar(1.0, es.eigenvalues()(k));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

NetCoordinates coordinates_of_gate(const Mat4& u) {
  Eigen::ComplexSchur<Mat4> schur(u);
  std::array<std::pair<double, int>, 4> ph;
  for (int k = 0; k < 4; ++k) ph[k] = {std::arg(schur.matrixT()(k, k)), k};
  std::sort(ph.begin(), ph.end());
  // Cut the circle at the widest gap and centre the phases.
  int cut = 0;
  double gap = ph[0].first + 2 * std::numbers::pi - ph[3].first;
  for (int k = 0; k + 1 < 4; ++k)
    if (ph[k + 1].first - ph[k].first > gap) {
      gap = ph[k + 1].first - ph[k].first;
      cut = k + 1;
    }
  Eigen::Vector4d phase;
  for (int k = 0; k < 4; ++k) {
    const auto& [a, idx] = ph[(cut + k) % 4];
    phase(idx) = a + (cut + k >= 4 ? 2 * std::numbers::pi : 0.0);
  }
  phase.array() -= phase.mean();
  const Mat4 q = schur.matrixU();
  const Mat4 h = q * phase.cast<cplx>().asDiagonal() * q.adjoint();
  NetCoordinates theta;
  for (int k = 0; k < 15; ++k) theta[k] = (pauli_pairs()[k] * h).trace().real() / 4;
  return theta;
}

double epsnet_lipschitz(int samples, std::uint64_t seed) {
  static std::mutex mu;
  static double cached = -1;
  std::lock_guard<std::mutex> lock(mu);
  if (cached > 0 && samples == 1000 && seed == 7) return cached;
  SeqRng rng(seed, 41);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    NetCoordinates a, b;
    const double t = 0.01 + 0.09 * rng.uniform();
    for (int k = 0; k < 15; ++k) {
      a[k] = (2 * rng.uniform() - 1) * kNetCoordinateBound;
      b[k] = a[k] + (rng.uniform() < 0.5 ? -t : t);
    }
    worst = std::max(worst, phase_min_distance4(gate_from_coordinates(a), gate_from_coordinates(b)) / t);
  }
  if (samples == 1000 && seed == 7) cached = worst;
  return worst;
}

std::vector<std::vector<Edge>> layer_matchings(const GeometryGraph& g, const QubitSet& allowed) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (allowed.empty() || (contains(allowed, e.first) && contains(allowed, e.second)))
      edges.push_back(e);
  return matchings_of(edges, g.vertex_count());
}

EpsNetSpec epsnet_spec(const GeometryGraph& g, int d, double eps) {
  if (!(eps > 0)) throw Error("epsnet: eps must be positive");
  if (d < 1) throw Error("epsnet: depth must be positive");
  EpsNetSpec spec;
  spec.eps = eps;
  spec.qubits = g.vertex_count();
  spec.depth = d;
  spec.gate_radius = 2 * eps / (spec.qubits * d);
  spec.lipschitz = epsnet_lipschitz();
  const double target = 2 * spec.gate_radius / spec.lipschitz;
  spec.points_per_axis = static_cast<int>(std::ceil(2 * kNetCoordinateBound / target)) + 1;
  spec.spacing = 2 * kNetCoordinateBound / (spec.points_per_axis - 1);
  const long double per_gate = std::pow(static_cast<long double>(spec.points_per_axis), 15.0L);
  long double per_layer = 0;
  for (const auto& m : layer_matchings(g)) per_layer += std::pow(per_gate, m.size());
  spec.count = std::pow(per_layer, static_cast<long double>(d));
  return spec;
}

Mat4 epsnet_gate(const EpsNetSpec& spec, const std::array<int, 15>& index) {
  NetCoordinates theta;
  for (int k = 0; k < 15; ++k) theta[k] = -kNetCoordinateBound + index[k] * spec.spacing;
  return gate_from_coordinates(theta);
}

std::array<int, 15> epsnet_nearest_index(const EpsNetSpec& spec, const Mat4& u) {
  const NetCoordinates theta = coordinates_of_gate(u);
  std::array<int, 15> idx;
  for (int k = 0; k < 15; ++k) {
    const long v = std::lround((theta[k] + kNetCoordinateBound) / spec.spacing);
    idx[k] = static_cast<int>(std::clamp<long>(v, 0, spec.points_per_axis - 1));
  }
  return idx;
}

std::size_t epsnet_circuits(const GeometryGraph& g, int d, double eps,
                            const std::function<bool(const Circuit&)>& visit, double cap) {
  const EpsNetSpec spec = epsnet_spec(g, d, eps);
  if (spec.count > cap) throw Error("epsnet: net size exceeds the cap");
  const auto arch = layer_matchings(g);
  const int m = spec.points_per_axis;
  std::vector<std::size_t> choice(d, 0);
  std::size_t visited = 0;
  while (true) {
    std::size_t gates_total = 0;
    for (int t = 0; t < d; ++t) gates_total += arch[choice[t]].size();
    std::vector<int> digits(15 * gates_total, 0);
    while (true) {
      Circuit c(g.vertex_count());
      std::size_t slot = 0;
      for (int t = 0; t < d; ++t) {
        Layer layer;
        for (const auto& e : arch[choice[t]]) {
          std::array<int, 15> idx;
          std::copy_n(digits.begin() + 15 * slot, 15, idx.begin());
          layer.gates.push_back(Gate{e.first, e.second, epsnet_gate(spec, idx), -1});
          ++slot;
        }
        c.layers.push_back(std::move(layer));
      }
      ++visited;
      if (!visit(c)) return visited;
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == m) digits[k++] = 0;
      if (k == digits.size()) break;
    }
    int t = d - 1;
    while (t >= 0 && ++choice[t] == arch.size()) choice[t--] = 0;
    if (t < 0) break;
  }
  return visited;
}

std::optional<Circuit> compile_block_to_shallow(const SewBlock& w, int d, const GeometryGraph& g,
                                                const ShallowSource& src) {
  if (w.w.matrix.size() == 0) throw Error("compile_block_to_shallow: block has no matrix");
  const int n = w.n;
  if (g.vertex_count() != n) throw Error("compile_block_to_shallow: geometry size mismatch");
  const QubitSet allowed = lightcone(g, w.region, d);
  if (src.gateset) {
    const auto obs = block_observables(w);
    std::vector<DenseOperator> start, targets;
    for (std::size_t r = 0; r < w.region.size(); ++r)
      for (int p : {0, 2}) {
        start.emplace_back(QubitSet{w.region[r]}, Mat(gates::pauli(p == 0 ? 'X' : 'Z')));
        targets.push_back(trim_identity_factors(obs[r][p], 1e-9));
      }
    GatesetSearch search{g, allowed, *src.gateset, targets, std::vector<std::vector<Gate>>(d)};
    if (!search.run(d - 1, start)) return std::nullopt;
    Circuit v(n);
    for (int t = 0; t < d; ++t) v.layers.push_back(Layer{search.chosen[t], ""});
    Circuit c = block_circuit(v, w.region, n);
    if (!confirms(c, w, 1e-9)) return std::nullopt;
    return c;
  }
  const GeometryGraph sub = g.induced(allowed);
  std::optional<Circuit> hit;
  epsnet_circuits(sub, d, src.eps, [&](const Circuit& local) {
    Circuit v = local.relabeled(allowed, n);
    v.geometry.reset();
    Circuit c = block_circuit(v, w.region, n);
    if (confirms(c, w, 2 * src.eps)) {
      hit = std::move(c);
      return false;
    }
    return true;
  }, src.cap);
  return hit;
}

}  // namespace scl
