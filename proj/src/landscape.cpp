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

#include "scl/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scl/dense.hpp"
#include "scl/gates.hpp"
#include "scl/rng.hpp"
#include "scl/stabilizer.hpp"
#include "scl/statevector.hpp"

namespace scl {

namespace {

void check_subset(const std::vector<int>& s, int n) {
  for (int j : s)
    if (j < 0 || j >= n / 4) throw Error("target block index out of range");
  if (normalized(s).size() != s.size()) throw Error("target blocks repeat");
}

Mat target_times_ansatz_dagger(const SwapAnsatzParams& theta, const std::vector<int>& s) {
  theta.validate();
  check_subset(s, theta.n);
  check_dense_cap(theta.n, "local cost");
  Circuit c = target_swap_circuit(s, theta.n);
  c.append(build_swap_ansatz(theta).dagger());
  Mat w = Mat::Identity(Eigen::Index{1} << theta.n, Eigen::Index{1} << theta.n);
  for (const Layer& l : c.layers)
    for (const Gate& g : l.gates) apply_gate_inplace(w, theta.n, g.a, g.b, g.u);
  return w;
}

}  // namespace

void SwapAnsatzParams::validate() const {
  const int b = block_count();
  if (n < 4) throw Error("ansatz needs at least 4 qubits");
  if (blocks.size() != static_cast<std::size_t>(5 * b) ||
      links.size() != static_cast<std::size_t>(b - 1))
    throw Error("ansatz angle count mismatch");
}

std::vector<double> SwapAnsatzParams::flat() const {
  std::vector<double> v = blocks;
  v.insert(v.end(), links.begin(), links.end());
  return v;
}

SwapAnsatzParams SwapAnsatzParams::from_flat(int n, const std::vector<double>& v) {
  SwapAnsatzParams p;
  p.n = n;
  const std::size_t nb = static_cast<std::size_t>(5 * (n / 4));
  if (v.size() < nb) throw Error("ansatz angle count mismatch");
  p.blocks.assign(v.begin(), v.begin() + nb);
  p.links.assign(v.begin() + nb, v.end());
  p.validate();
  return p;
}

SwapAnsatzParams zero_params(int n) {
  SwapAnsatzParams p;
  p.n = n;
  p.blocks.assign(5 * (n / 4), 0.0);
  p.links.assign(std::max(0, n / 4 - 1), 0.0);
  p.validate();
  return p;
}

Circuit build_swap_ansatz(const SwapAnsatzParams& theta) {
  theta.validate();
  Circuit c(theta.n);
  c.layers.resize(3);
  auto put = [&](int layer, int a, double angle) {
    c.layers[layer].gates.push_back(Gate{a, a + 1, gates::exp_swap(angle), -1});
  };
  for (int j = 0; j < theta.block_count(); ++j) {
    const double* t = &theta.blocks[5 * j];
    const int a = 4 * j;
    put(0, a, t[0]);
    put(0, a + 2, t[1]);
    put(1, a + 1, t[2]);
    if (j + 1 < theta.block_count()) put(1, a + 3, theta.links[j]);
    put(2, a, t[3]);
    put(2, a + 2, t[4]);
  }
  c.geometry = GeometryGraph::line(theta.n);
  return c;
}

Circuit target_swap_circuit(const std::vector<int>& s, int n) {
  check_subset(s, n);
  Circuit c(n);
  c.layers.resize(1);
  for (int j : normalized(s)) c.layers[0].gates.push_back(Gate{4 * j, 4 * j + 3, gates::SWAP(), -1});
  return c;
}

double local_cost_exact(const SwapAnsatzParams& theta, const std::vector<int>& s) {
  const Mat w = target_times_ansatz_dagger(theta, s);
  const int n = theta.n;
  const std::size_t half = std::size_t{1} << (n - 1);
  std::vector<Eigen::Index> lo(half);
  double cost = 0;
  for (int i = 0; i < n; ++i) {
    // Tr_i W = W restricted to bit i = 0 plus bit i = 1.
    const std::size_t bit = std::size_t{1} << (n - 1 - i);
    for (std::size_t r = 0; r < half; ++r)
      lo[r] = static_cast<Eigen::Index>(((r & ~(bit - 1)) << 1) | (r & (bit - 1)));
    double f = 0;
    for (std::size_t c = 0; c < half; ++c)
      for (std::size_t r = 0; r < half; ++r)
        f += std::norm(w(lo[r], lo[c]) + w(lo[r] + bit, lo[c] + bit));
    const double fe = f / std::ldexp(1.0, n + 1);
    cost += 2.0 / 3.0 * (1.0 - fe);
  }
  return std::max(0.0, cost);
}

CostEstimate local_cost_monte_carlo(const SwapAnsatzParams& theta, const std::vector<int>& s,
                                    std::size_t m, std::uint64_t seed) {
  if (m < 2) throw Error("Monte Carlo needs at least two samples");
  const Mat w = target_times_ansatz_dagger(theta, s);
  const int n = theta.n;
  SeqRng rng(seed, 0x1a5d5cULL);
  double sum = 0, sum2 = 0;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<Eigen::Vector2cd> qs;
    std::vector<Stab> labels;
    for (int q = 0; q < n; ++q) {
      labels.push_back(static_cast<Stab>(rng.below(6)));
      qs.push_back(stab_vector(labels.back()));
    }
    const Vec out = w * StateVector::product(qs).amps;
    double c = 0;
    for (int q = 0; q < n; ++q) {
      const Mat rho = reduced_density(out, n, {q});
      c += 1.0 - (stab_projector(labels[q]) * rho).trace().real();
    }
    sum += c;
    sum2 += c * c;
  }
  const double mean = sum / static_cast<double>(m);
  const double var = std::max(0.0, sum2 / static_cast<double>(m) - mean * mean);
  return {mean, std::sqrt(var / static_cast<double>(m - 1))};
}

SwapAnsatzParams local_minimum_point(std::uint64_t x, const std::vector<int>& s, int n) {
  check_subset(s, n);
  const auto sorted = normalized(s);
  if (sorted.size() < 64 && x >= (std::uint64_t{1} << sorted.size()))
    throw Error("local minimum index out of range");
  SwapAnsatzParams p = zero_params(n);
  for (std::size_t id = 0; id < sorted.size(); ++id)
    if ((x >> id) & 1)
      for (int t = 0; t < 5; ++t) p.blocks[5 * sorted[id] + t] = std::numbers::pi / 2;
  return p;
}

ProbeResult probe_neighborhood(const SwapAnsatzParams& theta0, const std::vector<int>& s,
                               double radius, std::size_t trials, std::uint64_t seed, int jobs) {
  if (radius < 0) throw Error("radius must be nonnegative");
  const auto base = theta0.flat();
  std::vector<double> costs(trials);
  std::vector<std::vector<double>> offsets(trials);
  const CounterRng rng(seed, 0x9b0beULL);
  parallel_for(trials, jobs, [&](std::size_t t) {
    std::vector<double> off(base.size()), v(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) {
      off[k] = radius * (2.0 * rng.uniform(t * base.size() + k) - 1.0);
      v[k] = base[k] + off[k];
    }
    costs[t] = local_cost_exact(SwapAnsatzParams::from_flat(theta0.n, v), s);
    offsets[t] = std::move(off);
  });
  ProbeResult r;
  if (trials == 0) {
    r.min_cost = local_cost_exact(theta0, s);
    r.argmin_offset.assign(base.size(), 0.0);
    return r;
  }
  const auto it = std::min_element(costs.begin(), costs.end());
  r.min_cost = *it;
  r.argmin_offset = offsets[it - costs.begin()];
  return r;
}

}  // namespace scl
