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

// Acceptance checks, one per criterion: `acceptance --criterion N` prints a
// single PASS/FAIL line and exits nonzero on FAIL.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "scl/coloring.hpp"
#include "scl/dataset.hpp"
#include "scl/distance.hpp"
#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/landscape.hpp"
#include "scl/rng.hpp"
#include "scl/sewing.hpp"
#include "scl/stabilizer.hpp"
#include "scl/state_learning.hpp"
#include "scl/statevector.hpp"
#include "scl/unitary_learning.hpp"
#include "scl/verification.hpp"

using namespace scl;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

QubitSet range(int lo, int hi) {
  QubitSet s;
  for (int q = lo; q < hi; ++q) s.push_back(q);
  return s;
}

std::array<DenseOperator, 3> exact_observables(const Circuit& u, int i) {
  return {heisenberg_observable_exact(u, i, 'X'), heisenberg_observable_exact(u, i, 'Y'),
          heisenberg_observable_exact(u, i, 'Z')};
}

// The ten sewing instances: line(4..6), depth 1 and 2.
std::vector<Circuit> sewing_instances() {
  std::vector<Circuit> out;
  for (int k = 0; k < 10; ++k) {
    const int n = 4 + k % 3, d = 1 + (k / 3) % 2;
    out.push_back(random_su4_circuit(GeometryGraph::line(n), d, 100 + k));
  }
  return out;
}

Circuit sew_all(std::vector<SewBlock>& blocks, int n) {
  return sew(blocks, order_blocks_by_coloring(blocks), n);
}

Outcome criterion1() {
  double worst = 0;
  for (const Circuit& u : sewing_instances()) {
    std::vector<SewBlock> blocks;
    for (int i = 0; i < u.n; ++i) blocks.push_back(build_sew_block(i, exact_observables(u, i), u.n));
    worst = std::max(worst, phase_min_spectral_distance(sew_all(blocks, u.n), tensor_with_dagger(u)));
  }
  return {worst <= 1e-8, fmt("max deviation %.3g over 10 circuits", worst)};
}

Outcome criterion2() {
  SeqRng rng(2, 2);
  int ok = 0;
  double worst_slack = -1e9;
  for (const Circuit& u : sewing_instances()) {
    std::vector<SewBlock> blocks;
    double budget = 0;
    for (int i = 0; i < u.n; ++i) {
      auto obs = exact_observables(u, i);
      for (auto& o : obs) {
        const Eigen::Index dim = o.matrix.rows();
        Mat h(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
          for (Eigen::Index c = 0; c < dim; ++c) h(r, c) = cplx(rng.normal(), rng.normal());
        h = (0.5 * (h + h.adjoint())).eval();
        const double e = 0.05 * rng.uniform();
        o.matrix += e * h / spectral_norm(h);
        budget += e;
      }
      blocks.push_back(build_sew_block(i, obs, u.n));
    }
    const double dev = phase_min_spectral_distance(sew_all(blocks, u.n), tensor_with_dagger(u));
    ok += dev <= budget + 1e-8;
    worst_slack = std::max(worst_slack, dev - budget);
  }
  return {ok == 10, fmt("%d/10 within budget, max(dev - budget) = %.3g", ok, worst_slack)};
}

// Fraction of exact observables and the worst output fidelity on 50
// random inputs.
std::pair<bool, double> check_learned_channel(const LearnedUnitary& l, const Circuit& u,
                                              std::uint64_t seed) {
  bool exact = true;
  for (const auto& o : l.observables) {
    const auto ex = heisenberg_observable_exact(u, o.qubit, o.pauli);
    const auto s = set_union(ex.support, o.used.support);
    exact = exact && max_abs(embed(ex.matrix, ex.support, s) - embed(o.used.matrix, o.used.support, s)) < 1e-9;
  }
  double worst = 1;
  SeqRng rng(seed, 99);
  for (int k = 0; k < 50; ++k) {
    StateVector psi;
    psi.n = u.n;
    psi.amps = Vec(Eigen::Index{1} << u.n);
    for (Eigen::Index a = 0; a < psi.amps.size(); ++a) psi.amps(a) = cplx(rng.normal(), rng.normal());
    psi.amps.normalize();
    const DenseOperator rho = implement_learned_channel(l.sewn, psi);
    Vec up = psi.amps;
    apply_circuit_inplace(up, u);
    worst = std::min(worst, (up.adjoint() * rho.matrix * up)(0, 0).real());
  }
  return {exact, worst};
}

Outcome finite_gate_learning(UnitaryStrategy strategy, int d, bool depth_check) {
  setenv("SCL_DENSE_CAP", "16", 1);
  const int n = 8;
  const GeometryGraph g = GeometryGraph::line(n);
  int good = 0, max_depth = 0;
  double worst = 1;
  for (int seed = 0; seed < 20; ++seed) {
    const Circuit u = random_gateset_circuit(g, d, "clifford2", 1000 + seed);
    const MeasurementDataset ds = sample_unitary_dataset(u, 4000, seed);
    UnitaryLearningOptions opt;
    opt.depth = d;
    opt.geometry = g;
    opt.gateset = "clifford2";
    opt.strategy = strategy;
    const LearnedUnitary l = learn_unitary(ds, opt);
    const auto [exact, fid] = check_learned_channel(l, u, seed);
    max_depth = std::max(max_depth, l.sewn.depth());
    worst = std::min(worst, fid);
    good += exact && fid >= 1 - 1e-9 && (!depth_check || l.sewn.depth() <= 7);
  }
  return {good >= 18, fmt("%d/20 seeds exact, worst fidelity 1-%.2g, max depth %d", good, 1 - worst,
                          max_depth)};
}

Outcome criterion3() { return finite_gate_learning(UnitaryStrategy::Geo, 2, false); }

Outcome criterion4() {
  const int n = 6;
  const GeometryGraph g = GeometryGraph::line(n);
  std::vector<double> ratios;
  int bound_ok = 0;
  for (int seed = 0; seed < 10; ++seed) {
    const Circuit u = random_su4_circuit(g, 1, 500 + seed);
    double med[2] = {0, 0};
    for (int k = 0; k < 2; ++k) {
      const MeasurementDataset ds = sample_unitary_dataset(u, k == 0 ? 20000 : 80000, seed * 7 + k);
      UnitaryLearningOptions opt;
      opt.depth = 1;
      opt.geometry = g;
      const LearnedUnitary l = learn_unitary(ds, opt);
      std::vector<double> errs;
      double eps_sum = 0;
      for (const auto& o : l.observables) {
        const auto ex = heisenberg_observable_exact(u, o.qubit, o.pauli);
        const auto s = set_union(ex.support, o.estimate.declared_support);
        errs.push_back(spectral_norm(embed(ex.matrix, ex.support, s) - o.estimate.matrix_on(s)));
        const auto s2 = set_union(ex.support, o.used.support);
        eps_sum += spectral_norm(embed(ex.matrix, ex.support, s2) - embed(o.used.matrix, o.used.support, s2));
      }
      std::nth_element(errs.begin(), errs.begin() + errs.size() / 2, errs.end());
      med[k] = errs[errs.size() / 2];
      if (k == 1) {
        const double upper = 2 * phase_min_spectral_distance(l.sewn, tensor_with_dagger(u));
        bound_ok += upper <= 3 * eps_sum;
      }
    }
    ratios.push_back(med[0] / med[1]);
  }
  std::sort(ratios.begin(), ratios.end());
  const double median = 0.5 * (ratios[4] + ratios[5]);
  return {median >= 1.5 && median <= 2.7 && bound_ok == 10,
          fmt("median error ratio %.3f, diamond bound held %d/10", median, bound_ok)};
}

Outcome criterion5() { return finite_gate_learning(UnitaryStrategy::LatticeOptimized, 1, true); }

Outcome criterion6() {
  const int k = 2, R = 6;
  const std::vector<int> dims = {24, 24};
  const RegionColoring col = lattice_region_coloring(k, dims, R);
  const GeometryGraph g = GeometryGraph::lattice(dims);
  std::vector<int> seen(g.vertex_count(), 0);
  std::size_t largest = 0;
  for (const auto& r : col.regions) {
    largest = std::max(largest, r.size());
    for (int q : r) ++seen[q];
  }
  const bool partition = std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
  int min_dist = std::numeric_limits<int>::max();
  for (std::size_t a = 0; a < col.regions.size(); ++a)
    for (std::size_t b = a + 1; b < col.regions.size(); ++b)
      if (col.colors[a] == col.colors[b])
        min_dist = std::min(min_dist, set_distance(g, col.regions[a], col.regions[b]));
  const bool pass = col.color_count() == 3 && partition && min_dist >= R &&
                    static_cast<double>(largest) <= std::pow(2.0 * k * R, k);
  return {pass, fmt("%d colors, %zu regions, min same-color distance %d, largest region %zu",
                    col.color_count(), col.regions.size(), min_dist, largest)};
}

Outcome criterion7() {
  int good = 0;
  for (int n : {8, 12})
    for (int seed = 1; seed <= 20; ++seed) {
      const GeometryGraph g = GeometryGraph::line(n);
      const Circuit u = random_gateset_circuit(g, 2, "clifford2", seed);
      StateLearningOptions opt;
      opt.depth = 2;
      opt.seed = seed;
      try {
        const Learned1DState r = learn_1d_state(circuit_state_source(u), g, opt);
        Circuit c = u;
        c.geometry.reset();
        Circuit v = r.v;
        v.geometry.reset();
        c.append(v);
        good += r.assignment.satisfiable && zero_return_probability(c, range(0, n)) >= 1 - 1e-9;
      } catch (const LearningFailure&) {
      }
    }
  return {good == 40, fmt("%d/40 planted states inverted", good)};
}

Outcome criterion8() {
  const GeometryGraph lattice = GeometryGraph::lattice({3, 7});
  int good = 0, max_depth = 0;
  for (int seed = 1; seed <= 10; ++seed) {
    const Circuit u = random_gateset_circuit(lattice, 1, "clifford2", seed);
    StateLearningOptions opt;
    opt.depth = 1;
    opt.samples = 200000;
    opt.seed = seed;
    try {
      const Learned2DState r = learn_2d_state(circuit_state_source(u), lattice, opt, 3, 2);
      max_depth = std::max(max_depth, r.prep.depth());
      good += r.prep.depth() <= 3 && preparation_fidelity(r.prep, u) >= 1 - 1e-6;
    } catch (const LearningFailure&) {
    }
  }
  return {good >= 9, fmt("%d/10 seeds, max preparation depth %d", good, max_depth)};
}

Outcome criterion9() {
  const int n = 6;
  const double eps = 0.3;
  const GeometryGraph g = GeometryGraph::line(n);
  Circuit swaps(n);
  swaps.layers.resize(1);
  for (int q = 0; q + 1 < n; q += 2) swaps.layers[0].gates.push_back(Gate{q, q + 1, gates::SWAP(), -1});
  const double bad_dave = average_gate_distance(circuit_unitary(swaps), Mat(Mat::Identity(64, 64)));
  std::vector<SewBlock> id_blocks;
  for (int i = 0; i < n; ++i) id_blocks.push_back(exact_sew_block(Circuit(n), {i}));
  const Circuit sewn_id = sew_all(id_blocks, n);
  int good = 0, bad = 0;
  for (int seed = 0; seed < 20; ++seed) {
    const Circuit u = random_su4_circuit(g, 1, 700 + seed);
    std::vector<SewBlock> blocks;
    for (int i = 0; i < n; ++i) blocks.push_back(exact_sew_block(u, {i}));
    good += verify(estimate_local_deviations(sample_unitary_dataset(u, 50000, seed), sew_all(blocks, n)), eps).pass;
    bad += !verify(estimate_local_deviations(sample_unitary_dataset(swaps, 50000, seed + 100), sewn_id), eps).pass;
  }
  return {good >= 18 && bad >= 18 && bad_dave > eps,
          fmt("planted-good PASS %d/20, planted-bad FAIL %d/20 (bad D_ave %.3f)", good, bad, bad_dave)};
}

Outcome criterion10() {
  const int n = 8;
  const std::vector<int> s = {0, 1};
  const double global = local_cost_exact(local_minimum_point(3, s, n), s);
  bool stated = true, derived = true, probe = true;
  std::ostringstream costs;
  for (std::uint64_t x = 0; x < 4; ++x) {
    const SwapAnsatzParams theta = local_minimum_point(x, s, n);
    const double c = local_cost_exact(theta, s);
    costs << (x ? "," : "") << c;
    stated = stated && std::abs(c - (8.0 - std::popcount(x))) <= 1e-9;
    derived = derived && std::abs(c - (2.0 - std::popcount(x))) <= 1e-9;
    const ProbeResult p = probe_neighborhood(theta, s, std::numbers::pi / 4 - 0.01, 2000, 10 + x);
    probe = probe && p.min_cost >= c - 1e-9;
  }
  const bool pass = std::abs(global) <= 1e-9 && stated && probe;
  return {pass, fmt("C(global)=%.2g; C(theta_x)=[%s]; 8-popcount %s; |S|-popcount %s; probe %s",
                    global, costs.str().c_str(), stated ? "holds" : "violated",
                    derived ? "holds" : "violated", probe ? "holds" : "violated")};
}

Outcome criterion11() {
  SeqRng rng(11, 11);
  bool ok = true;
  // SWAP = (1/2) sum_P P (x) P.
  Mat sw = Mat::Zero(4, 4);
  for (char p : {'I', 'X', 'Y', 'Z'}) sw += 0.5 * pauli_word_matrix(std::string(2, p));
  ok = ok && max_abs(sw - Mat(gates::SWAP())) < 1e-12;
  // Stabilizer decomposition round trip.
  for (int k = 1; k <= 2; ++k)
    for (int t = 0; t < 10; ++t) {
      const Mat a = gates::haar_unitary(1 << k, rng);
      Eigen::VectorXd w(1 << k);
      for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = rng.uniform();
      w /= w.sum();
      const Mat rho = a * w.cast<cplx>().asDiagonal() * a.adjoint();
      const QubitSet sup = range(0, k);
      const auto terms = stabilizer_decompose(DenseOperator(sup, rho));
      double sum = 0, sum_abs = 0;
      for (const auto& term : terms) sum += term.coef, sum_abs += std::abs(term.coef);
      ok = ok && std::abs(sum - 1) < 1e-10 && std::abs(sum_abs - std::pow(3.0, k)) < 1e-9 &&
           max_abs(stabilizer_recompose(terms, sup, sup) - rho) < 1e-9;
    }
  // Proj_U: unitary output, fixed points, optimality against samples.
  for (int t = 0; t < 20; ++t) {
    const Mat u = gates::haar_unitary(4, rng);
    Mat a = u;
    for (Eigen::Index r = 0; r < 4; ++r)
      for (Eigen::Index c = 0; c < 4; ++c) a(r, c) += 0.2 * cplx(rng.normal(), rng.normal());
    const Mat p = project_to_unitary(a);
    ok = ok && is_unitary(p, 1e-10) && max_abs(project_to_unitary(Mat(3.0 * u)) - u) < 1e-10;
    for (int j = 0; j < 10; ++j)
      ok = ok && spectral_norm(a - p) <= spectral_norm(a - gates::haar_unitary(4, rng)) + 1e-12;
  }
  // (1/3) F <= D_ave <= F with F = min_phi ||e^{i phi} U1 - U2||_F^2 / 2^n.
  for (int t = 0; t < 100; ++t) {
    const int dim = 2 << (t % 3);
    const Mat a = gates::haar_unitary(dim, rng), b = gates::haar_unitary(dim, rng);
    const double f = (2.0 * dim - 2.0 * std::abs((a.adjoint() * b).trace())) / dim;
    const double dave = average_gate_distance(a, b);
    ok = ok && f / 3 <= dave + 1e-12 && dave <= f + 1e-12;
  }
  return {ok, "swap identity, stabilizer round trip, Proj_U, Frobenius sandwich"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int criterion = 0;
  app.add_option("--criterion", criterion)->required()->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);
  const std::vector<std::function<Outcome()>> all = {
      criterion1, criterion2, criterion3, criterion4,  criterion5, criterion6,
      criterion7, criterion8, criterion9, criterion10, criterion11};
  const auto t0 = std::chrono::steady_clock::now();
  Outcome r;
  try {
    r = all[criterion - 1]();
  } catch (const std::exception& e) {
    r = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << "criterion " << criterion << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail
            << "; " << fmt("%.1f s", secs) << ")\n";
  return r.pass ? 0 : 1;
}
