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


#include "scl/sewing.hpp"

#include <algorithm>
#include <cmath>

#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/rng.hpp"
#include "scl/synthesis.hpp"

namespace scl {
namespace {

constexpr std::array<char, 3> kLetters = {'X', 'Y', 'Z'};

QubitSet system_part(const QubitSet& support, int n) {
  QubitSet s;
  for (int q : support)
    if (q < n) s.push_back(q);
  return s;
}

QubitSet circuit_qubits(const Circuit& c) {
  QubitSet s;
  for (const auto& layer : c.layers)
    for (const auto& g : layer.gates) {
      s.push_back(g.a);
      s.push_back(g.b);
    }
  return normalized(s);
}

Circuit widened(const Circuit& c, int new_n) {
  std::vector<int> map(c.n);
  for (int q = 0; q < c.n; ++q) map[q] = q;
  return c.relabeled(map, new_n);
}

}  // namespace

Mat project_to_unitary(const Mat& a) {
  if (a.rows() != a.cols()) throw Error("project_to_unitary: matrix is not square");
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

DenseOperator project_to_unitary(const DenseOperator& a) {
  DenseOperator out(a.support, project_to_unitary(a.matrix));
  out.mark_unitary();
  return out;
}

SewBlock build_sew_block(int i, const std::array<DenseOperator, 3>& obs, int n, int k_max) {
  if (i < 0 || i >= n) throw Error("build_sew_block: qubit out of range");
  QubitSet sys = {i};
  for (const auto& o : obs) {
    if (!is_hermitian(o.matrix, 1e-9)) throw Error("build_sew_block: observable is not Hermitian");
    if (spectral_norm(o.matrix) > 1.2) throw Error("build_sew_block: observable norm exceeds 1.2");
    sys = set_union(sys, o.support);
  }
  if (sys.back() >= n) throw Error("build_sew_block: observable acts outside the system");
  if (static_cast<int>(sys.size()) > k_max)
    throw Error("build_sew_block: support exceeds k_max + 1 qubits");
  const Eigen::Index dim = Eigen::Index{1} << (sys.size() + 1);
  Mat a = 0.5 * Mat::Identity(dim, dim);
  for (int p = 0; p < 3; ++p)
    a += 0.5 * kron(embed(obs[p].matrix, obs[p].support, sys), gates::pauli(kLetters[p]));
  SewBlock b;
  b.n = n;
  b.region = {i};
  b.support = sys;
  b.support.push_back(n + i);
  b.w = DenseOperator(b.support, project_to_unitary(a));
  return b;
}

SewBlock build_sew_block(int i, const std::array<PauliObservable, 3>& obs, int n, int k_max) {
  std::array<DenseOperator, 3> dense;
  for (int p = 0; p < 3; ++p) {
    QubitSet s = obs[p].term_support();
    if (s.empty()) s = {i};
    dense[p] = DenseOperator(s, obs[p].matrix_on(s));
  }
  return build_sew_block(i, dense, n, k_max);
}

SewBlock build_region_block(const QubitSet& region,
                            const std::vector<std::array<DenseOperator, 3>>& obs, int n,
                            int k_max) {
  if (region.empty() || region.size() != obs.size())
    throw Error("build_region_block: one observable triple per region qubit is required");
  std::vector<SewBlock> parts;
  QubitSet support;
  for (std::size_t t = 0; t < region.size(); ++t) {
    parts.push_back(build_sew_block(region[t], obs[t], n, k_max));
    support = set_union(support, parts.back().support);
  }
  if (parts.size() == 1) return parts[0];
  if (static_cast<int>(system_part(support, n).size()) > k_max)
    throw Error("build_region_block: support exceeds k_max");
  const Eigen::Index dim = Eigen::Index{1} << support.size();
  Mat w = Mat::Identity(dim, dim);
  for (const auto& p : parts) w = embed(p.w.matrix, p.w.support, support) * w;
  SewBlock b;
  b.n = n;
  b.region = normalized(region);
  b.support = support;
  b.w = DenseOperator(support, project_to_unitary(w));
  return b;
}

SewBlock exact_sew_block(const Circuit& u, const QubitSet& region, int k_max) {
  std::vector<std::array<DenseOperator, 3>> obs;
  for (int j : region) {
    std::array<DenseOperator, 3> t;
    for (int p = 0; p < 3; ++p) t[p] = heisenberg_observable_exact(u, j, kLetters[p]);
    obs.push_back(std::move(t));
  }
  return build_region_block(region, obs, u.n, k_max);
}

std::vector<std::array<DenseOperator, 3>> block_observables(const SewBlock& b) {
  if (b.w.matrix.size() == 0) throw Error("block_observables: block has no matrix");
  const QubitSet sys = system_part(b.support, b.n);
  std::vector<std::array<DenseOperator, 3>> out;
  for (int j : b.region) {
    std::array<DenseOperator, 3> t;
    for (int p = 0; p < 3; ++p) {
      const Mat m = b.w.matrix *
                    embed(Mat(gates::pauli(kLetters[p])), QubitSet{b.n + j}, b.support);
      t[p] = DenseOperator(sys, partial_trace(m, b.support, sys));
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<std::vector<std::size_t>> order_blocks_by_coloring(const std::vector<SewBlock>& blocks) {
  std::vector<int> color(blocks.size(), -1);
  int colors = 0;
  for (std::size_t a = 0; a < blocks.size(); ++a) {
    std::vector<bool> used(blocks.size() + 1, false);
    for (std::size_t b = 0; b < a; ++b) {
      const auto& sa = blocks[a].support;
      const auto& sb = blocks[b].support;
      const bool overlap = std::any_of(sa.begin(), sa.end(), [&](int q) { return contains(sb, q); });
      if (overlap) used[color[b]] = true;
    }
    int c = 0;
    while (used[c]) ++c;
    color[a] = c;
    colors = std::max(colors, c + 1);
  }
  std::vector<std::vector<std::size_t>> layers(colors);
  for (std::size_t a = 0; a < blocks.size(); ++a) layers[color[a]].push_back(a);
  return layers;
}

GeometryGraph doubled_geometry(const GeometryGraph& g) {
  const int n = g.vertex_count();
  std::vector<Edge> edges = g.edges();
  for (int j = 0; j < n; ++j) edges.emplace_back(j, n + j);
  return GeometryGraph::custom(2 * n, edges);
}

Circuit tensor_with_dagger(const Circuit& u) {
  const int n = u.n;
  Circuit out = widened(u, 2 * n);
  out.geometry.reset();
  std::vector<int> map(n);
  for (int q = 0; q < n; ++q) map[q] = n + q;
  Circuit anc = u.dagger().relabeled(map, 2 * n);
  anc.geometry.reset();
  out.append(anc);
  return out;
}

Circuit sew(std::vector<SewBlock>& blocks, const std::vector<std::vector<std::size_t>>& layers,
            int n, const SewOptions& opt) {
  std::vector<int> cover(n, 0);
  for (const auto& b : blocks)
    for (int q : b.region) {
      if (q < 0 || q >= n) throw Error("sew: block region outside the system");
      ++cover[q];
    }
  for (int q = 0; q < n; ++q)
    if (cover[q] != 1)
      throw Error(cover[q] == 0 ? "sew: qubit " + std::to_string(q) + " is not covered"
                                : "sew: qubit " + std::to_string(q) + " is covered twice");
  std::vector<std::size_t> seen;
  for (const auto& l : layers) seen.insert(seen.end(), l.begin(), l.end());
  std::sort(seen.begin(), seen.end());
  for (std::size_t t = 0; t < seen.size(); ++t)
    if (seen[t] != t || seen.size() != blocks.size())
      throw Error("sew: layers must list every block exactly once");

  std::optional<GeometryGraph> doubled;
  if (opt.geometry) doubled = doubled_geometry(*opt.geometry);
  parallel_for(blocks.size(), opt.jobs, [&](std::size_t t) {
    SewBlock& b = blocks[t];
    if (b.circuit) return;
    if (static_cast<int>(system_part(b.support, n).size()) > opt.k_max)
      throw Error("sew: block support exceeds k_max");
    b.circuit = synthesize_unitary(b.w, doubled ? &*doubled : nullptr,
                                   static_cast<int>(b.support.size()), 2 * n);
    b.path = "synthesis";
  });

  Circuit out(2 * n);
  for (const auto& cls : layers) {
    std::vector<Layer> merged;
    for (std::size_t t : cls) {
      const Circuit& c = *blocks[t].circuit;
      if (c.n != 2 * n) throw Error("sew: block circuit is not on the doubled register");
      if (merged.size() < c.layers.size()) merged.resize(c.layers.size());
      for (std::size_t l = 0; l < c.layers.size(); ++l)
        merged[l].gates.insert(merged[l].gates.end(), c.layers[l].gates.begin(),
                               c.layers[l].gates.end());
    }
    for (auto& l : merged) {
      if (l.gates.empty()) continue;
      l.role = "block";
      out.layers.push_back(std::move(l));
    }
  }
  Layer swaps;
  swaps.role = "global_swap";
  for (int j = 0; j < n; ++j) swaps.gates.push_back(Gate{j, n + j, gates::SWAP(), -1});
  out.layers.push_back(std::move(swaps));
  if (doubled) out.geometry = *doubled;
  out.validate(1e-9);
  return out;
}

Circuit sew_local_inversions(const std::vector<Circuit>& v_list, int n, int k_max) {
  if (static_cast<int>(v_list.size()) != n)
    throw Error("sew_local_inversions: one inversion per qubit is required");
  std::vector<SewBlock> blocks;
  for (int i = 0; i < n; ++i) {
    const Circuit& v = v_list[i];
    if (v.n != n) throw Error("sew_local_inversions: inversion acts on a different register");
    const QubitSet sys = set_union(circuit_qubits(v), {i});
    if (static_cast<int>(sys.size()) > k_max) throw Error("sew_local_inversions: region too large");
    Circuit c = widened(v.dagger(), 2 * n);
    c.geometry.reset();
    Layer swap;
    swap.gates.push_back(Gate{i, n + i, gates::SWAP(), -1});
    c.layers.push_back(swap);
    Circuit fwd = widened(v, 2 * n);
    fwd.geometry.reset();
    c.append(fwd);
    SewBlock b;
    b.n = n;
    b.region = {i};
    b.support = sys;
    b.support.push_back(n + i);
    if (static_cast<int>(b.support.size()) <= dense_cap())
      b.w = DenseOperator(b.support, circuit_unitary_on(c, b.support));
    b.circuit = c.compacted();
    b.path = "inversion";
    blocks.push_back(std::move(b));
  }
  const auto layers = order_blocks_by_coloring(blocks);
  return sew(blocks, layers, n, SewOptions{nullptr, k_max, 1});
}

namespace {

// Amplitudes of the sewn circuit applied to |psi> (x) |0^n>, reshaped
// with system index as the row.
Mat run_sewn(const Circuit& sewn, const StateVector& psi) {
  const int n = psi.n;
  if (sewn.n != 2 * n) throw Error("learned channel: sewn circuit must act on 2n qubits");
  check_dense_cap(2 * n, "implement_learned_channel");
  const std::size_t dn = std::size_t{1} << n;
  Vec amps = Vec::Zero(static_cast<Eigen::Index>(dn * dn));
  for (std::size_t x = 0; x < dn; ++x) amps(x * dn) = psi.amps(x);
  apply_fused_inplace(amps, fuse_circuit(sewn, 8));
  return Eigen::Map<Mat>(amps.data(), dn, dn).transpose();
}

}  // namespace

DenseOperator implement_learned_channel(const Circuit& sewn, const StateVector& psi) {
  const Mat a = run_sewn(sewn, psi);
  QubitSet sys(psi.n);
  for (int q = 0; q < psi.n; ++q) sys[q] = q;
  return DenseOperator(sys, a * a.adjoint());
}

StateVector sample_learned_channel(const Circuit& sewn, const StateVector& psi,
                                   std::uint64_t seed) {
  const Mat a = run_sewn(sewn, psi);
  const Eigen::VectorXd p = a.colwise().squaredNorm().transpose();
  double r = CounterRng(seed, 0).uniform(0) * p.sum();
  Eigen::Index y = 0;
  while (y + 1 < p.size() && r >= p(y)) r -= p(y++);
  StateVector out;
  out.n = psi.n;
  out.amps = a.col(y) / std::sqrt(p(y));
  return out;
}

}  // namespace scl
