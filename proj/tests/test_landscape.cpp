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

#include <bit>
#include <cmath>
#include <numbers>

#include "catch_amalgamated.hpp"
#include "scl/dense.hpp"
#include "scl/gates.hpp"
#include "scl/landscape.hpp"
#include "scl/rng.hpp"

using namespace scl;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

QubitSet range(int lo, int hi) {
  QubitSet s;
  for (int q = lo; q < hi; ++q) s.push_back(q);
  return s;
}

// Sum over qubits of the average infidelity of the reduced channel of
// W = U(theta)^dag U_S, from its Pauli transfer diagonal.
double oracle_cost(const SwapAnsatzParams& theta, const std::vector<int>& s) {
  const int n = theta.n;
  const Mat w = circuit_unitary(build_swap_ansatz(theta)).adjoint() *
                circuit_unitary(target_swap_circuit(s, n));
  const QubitSet all = range(0, n);
  const double rest = std::ldexp(1.0, n - 1);
  double total = 0;
  for (int i = 0; i < n; ++i) {
    double fe = 0.25;
    for (char p : {'X', 'Y', 'Z'}) {
      const Mat in = embed(Mat(gates::pauli(p)), {i}, all) / rest;
      const Mat out = partial_trace(w * in * w.adjoint(), all, {i});
      fe += 0.125 * (Mat(gates::pauli(p)) * out).trace().real();
    }
    total += (2.0 / 3.0) * (1.0 - fe);
  }
  return total;
}

SwapAnsatzParams random_params(int n, SeqRng& rng) {
  std::vector<double> v(zero_params(n).size());
  for (double& x : v) x = std::numbers::pi * (2 * rng.uniform() - 1);
  return SwapAnsatzParams::from_flat(n, v);
}

}  // namespace

TEST_CASE("ansatz layout and gates") {
  const SwapAnsatzParams z = zero_params(8);
  CHECK(z.size() == 5 * 2 + 1);
  CHECK(z.blocks.size() == 10);
  CHECK(z.links.size() == 1);
  CHECK(zero_params(12).size() == 5 * 3 + 2);
  CHECK_THROWS_AS(SwapAnsatzParams::from_flat(8, std::vector<double>(10)), Error);

  const Circuit c = build_swap_ansatz(z);
  CHECK(c.depth() == 3);
  CHECK(max_abs(circuit_unitary(c) - Mat::Identity(256, 256)) < 1e-12);

  const Mat4 g = gates::exp_swap(kHalfPi);
  CHECK(max_abs(Mat(g) - cplx(0, 1) * Mat(gates::SWAP())) < 1e-12);
  SeqRng rng(1, 2);
  for (const auto& layer : build_swap_ansatz(random_params(8, rng)).layers)
    for (const Gate& gt : layer.gates) CHECK(is_unitary(gt.u, 1e-12));
}

TEST_CASE("exact cost matches the reduced-channel oracle") {
  SeqRng rng(7, 7);
  const std::vector<int> s = {0, 1};
  for (int t = 0; t < 5; ++t) {
    const SwapAnsatzParams theta = random_params(8, rng);
    const double c = local_cost_exact(theta, s);
    CHECK(c >= 0);
    CHECK(std::abs(c - oracle_cost(theta, s)) < 1e-9);
  }
}

TEST_CASE("cost at the local minima") {
  const std::vector<int> s = {0, 1};
  const int n = 8;
  for (std::uint64_t x = 0; x < 4; ++x) {
    const SwapAnsatzParams theta = local_minimum_point(x, s, n);
    const double expect = static_cast<double>(s.size() - std::popcount(x));
    CHECK(std::abs(local_cost_exact(theta, s) - expect) < 1e-9);
    CHECK(std::abs(oracle_cost(theta, s) - expect) < 1e-9);
    for (double a : theta.links) CHECK(a == 0.0);
  }
  CHECK(local_cost_exact(local_minimum_point(3, s, n), s) < 1e-9);
  CHECK(local_minimum_point(0, s, n).flat() != local_minimum_point(1, s, n).flat());
  CHECK(local_minimum_point(1, s, n).flat() != local_minimum_point(2, s, n).flat());
  CHECK_THROWS_AS(local_minimum_point(4, s, n), Error);
  CHECK_THROWS_AS(local_minimum_point(0, {2}, n), Error);
}

TEST_CASE("non-global minima are strictly suboptimal") {
  for (int n : {4, 8, 12}) {
    std::vector<int> s;
    for (int j = 0; j < std::min(3, n / 4); ++j) s.push_back(j);
    const std::uint64_t global = (std::uint64_t{1} << s.size()) - 1;
    const double best = local_cost_exact(local_minimum_point(global, s, n), s);
    CHECK(best < 1e-9);
    for (std::uint64_t x = 0; x < global; ++x)
      CHECK(local_cost_exact(local_minimum_point(x, s, n), s) >= 1 + best - 1e-9);
  }
}

TEST_CASE("Monte Carlo cost agrees with the exact cost") {
  SeqRng rng(3, 11);
  const std::vector<int> s = {0, 1};
  for (int t = 0; t < 10; ++t) {
    const SwapAnsatzParams theta = random_params(8, rng);
    const CostEstimate mc = local_cost_monte_carlo(theta, s, 20000, 100 + t);
    CHECK(std::abs(mc.value - local_cost_exact(theta, s)) <= 4 * mc.stderr_ + 1e-12);
  }
}

TEST_CASE("neighborhood probe") {
  const std::vector<int> s = {0, 1};
  const int n = 8;
  const SwapAnsatzParams x0 = local_minimum_point(0, s, n);
  const double c0 = local_cost_exact(x0, s);
  const ProbeResult p = probe_neighborhood(x0, s, 0.7, 1000, 5);
  CHECK(p.min_cost >= c0 - 1e-9);
  CHECK(p.argmin_offset.size() == x0.size());
  for (double d : p.argmin_offset) CHECK(std::abs(d) <= 0.7);

  CHECK(probe_neighborhood(x0, s, 0.0, 3, 1).min_cost == Catch::Approx(c0).margin(1e-12));
  CHECK(probe_neighborhood(local_minimum_point(3, s, n), s, 0.7, 50, 2).min_cost >= 0.0);
}
