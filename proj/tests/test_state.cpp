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

#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <functional>

#include "catch_amalgamated.hpp"
#include "scl/dataset.hpp"
#include "scl/gates.hpp"
#include "scl/geometry.hpp"
#include "scl/observable_learning.hpp"
#include "scl/rng.hpp"
#include "scl/state_learning.hpp"
#include "scl/statevector.hpp"

using namespace scl;
using Catch::Approx;

namespace {

QubitSet range(int lo, int hi) {
  QubitSet s;
  for (int q = lo; q < hi; ++q) s.push_back(q);
  return s;
}

// Exact reduced states of U|0^n>; the simulation may exceed the default cap.
RdmProvider exact_rdms(const Circuit& u) {
  const char* old = std::getenv("SCL_DENSE_CAP");
  const std::string saved = old ? old : "";
  setenv("SCL_DENSE_CAP", "24", 1);
  auto psi = std::make_shared<StateVector>(apply_circuit(StateVector::zero(u.n), u));
  if (old)
    setenv("SCL_DENSE_CAP", saved.c_str(), 1);
  else
    unsetenv("SCL_DENSE_CAP");
  return [psi](const QubitSet& q) { return reduced_density(*psi, q); };
}

CandidateList toy_list(std::size_t id, const std::vector<double>& scores) {
  CandidateList l;
  l.region = {static_cast<int>(id)};
  for (std::size_t k = 0; k < scores.size(); ++k) {
    l.choices.push_back({static_cast<int>(k)});
    l.circuits.emplace_back(1);
  }
  l.scores = scores;
  return l;
}

double fidelity_after_inverse(const Circuit& u, const Circuit& v) {
  Circuit c = u;
  c.geometry.reset();
  Circuit w = v;
  w.geometry.reset();
  c.append(w);
  return zero_return_probability(c, range(0, u.n));
}

}  // namespace

TEST_CASE("local inversions of the zero state") {
  const GeometryGraph g = GeometryGraph::line(4);
  const std::vector<Mat4> gs = {gates::identity4(), gates::SWAP()};
  const SlotLayout layout = inversion_layout(g, 1, gs);
  const DenseOperator zero(range(0, 4), reduced_density(StateVector::zero(4), range(0, 4)));
  const CandidateList l = enumerate_local_inversions(zero, layout, {1}, 1 - 1e-9);
  bool identity = false;
  for (std::size_t k = 0; k < l.size(); ++k) {
    CHECK(l.scores[k] >= 1 - 1e-9);
    bool all_id = true;
    for (const auto& layer : l.circuits[k].layers)
      for (const Gate& gt : layer.gates) all_id = all_id && max_abs(gt.u - gates::identity4()) == 0;
    identity = identity || (all_id && l.scores[k] == Approx(1.0));
  }
  CHECK(identity);
  CHECK(enumerate_local_inversions(zero, layout, {1}, 1.1).size() == 0);
}

TEST_CASE("planted inverse is among the candidates") {
  const int n = 6;
  const GeometryGraph g = GeometryGraph::line(n);
  const auto gs = gates::gateset("clifford2");
  const SlotLayout layout = inversion_layout(g, 1, gs);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const Circuit u = random_gateset_circuit(g, 1, "clifford2", seed);
    for (int q : {0, 2, 5}) {
      const CandidateList l = enumerate_local_inversions(exact_rdms(u), layout, {q}, 1 - 1e-9);
      bool found = false;
      for (std::size_t k = 0; k < l.size() && !found; ++k) {
        bool match = true;
        for (const auto& layer : l.circuits[k].layers)
          for (const Gate& gt : layer.gates) {
            bool hit = false;
            for (const Gate& ug : u.layers[0].gates)
              if (ug.a == gt.a && ug.b == gt.b) hit = max_abs(Mat(ug.u.adjoint()) - Mat(gt.u)) < 1e-12;
            match = match && hit;
          }
        found = match && l.scores[k] >= 1 - 1e-9;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("chain CSP basics") {
  {
    std::vector<CandidateList> lists = {toy_list(0, {1}), toy_list(1, {1}), toy_list(2, {1})};
    const auto a = solve_chain_csp(lists, [](auto&, std::size_t, auto&, std::size_t) { return true; });
    CHECK(a.satisfiable);
    CHECK(a.chosen == std::vector<std::size_t>{0, 0, 0});
  }
  {
    std::vector<CandidateList> lists = {toy_list(0, {1, 1}), toy_list(1, {1, 1})};
    const auto a = solve_chain_csp(lists, [](auto&, std::size_t, auto&, std::size_t) { return false; });
    CHECK_FALSE(a.satisfiable);
    CHECK(a.blocking_position == 2);
    CHECK_THROWS_AS(merge_assignment(a), Error);
  }
  {
    // Ties go to the smallest index.
    std::vector<CandidateList> lists = {toy_list(0, {1, 1, 1}), toy_list(1, {1, 1})};
    const auto a = solve_chain_csp(lists, [](auto&, std::size_t, auto&, std::size_t) { return true; });
    CHECK(a.chosen == std::vector<std::size_t>{0, 0});
  }
}

TEST_CASE("chain CSP finds the cheapest consistent assignment") {
  SeqRng rng(12, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t L = 2 + rng.below(4);
    std::vector<CandidateList> lists;
    std::vector<std::size_t> planted;
    for (std::size_t i = 0; i < L; ++i) {
      std::vector<double> scores(1 + rng.below(5));
      for (double& s : scores) s = rng.uniform();
      planted.push_back(rng.below(scores.size()));
      lists.push_back(toy_list(i, scores));
    }
    // Random compatibility, with the planted pairs forced in.
    std::map<std::tuple<int, std::size_t, std::size_t>, bool> rel;
    const ConsistencyPredicate ok = [&](const CandidateList& a, std::size_t i,
                                        const CandidateList& b, std::size_t j) {
      const int pos = a.region[0];
      if (planted[pos] == i && planted[pos + 1] == j) return true;
      auto key = std::make_tuple(pos, i, j);
      if (!rel.count(key)) rel[key] = rng.uniform() < 0.3;
      return rel[key];
      (void)b;
    };
    const auto a = solve_chain_csp(lists, ok);
    REQUIRE(a.satisfiable);
    double dp_cost = 0;
    for (std::size_t i = 0; i < L; ++i) {
      dp_cost += 1 - lists[i].scores[a.chosen[i]];
      if (i > 0) CHECK(ok(lists[i - 1], a.chosen[i - 1], lists[i], a.chosen[i]));
    }
    // Brute force over every assignment.
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> pick(L, 0);
    while (true) {
      bool good = true;
      double c = 0;
      for (std::size_t i = 0; i < L; ++i) {
        c += 1 - lists[i].scores[pick[i]];
        if (i > 0) good = good && ok(lists[i - 1], pick[i - 1], lists[i], pick[i]);
      }
      if (good) best = std::min(best, c);
      std::size_t k = 0;
      while (k < L && ++pick[k] == lists[k].size()) pick[k++] = 0;
      if (k == L) break;
    }
    CHECK(dp_cost == Approx(best).margin(1e-12));
  }
}

TEST_CASE("merging assignments") {
  {
    ChainAssignment a;
    a.satisfiable = true;
    a.parts = {Circuit(4), Circuit(4)};
    CHECK(merge_assignment(a).gate_count() == 0);
  }
  {
    Circuit p(4), q(4);
    p.layers.resize(1);
    q.layers.resize(1);
    p.layers[0].gates.push_back(Gate{0, 1, gates::CNOT(), -1});
    q.layers[0].gates.push_back(Gate{0, 1, gates::CZ(), -1});
    ChainAssignment a;
    a.satisfiable = true;
    a.parts = {p, p};
    const Circuit m = merge_assignment(a);
    CHECK(m.depth() == 1);
    CHECK(m.gate_count() == 1);
    a.parts = {p, q};
    CHECK_THROWS_AS(merge_assignment(a), Error);
  }
}

TEST_CASE("end-to-end 1D state learning") {
  for (int n : {8, 10, 12}) {
    const GeometryGraph g = GeometryGraph::line(n);
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      const Circuit u = random_gateset_circuit(g, 2, "clifford2", seed);
      StateLearningOptions opt;
      opt.depth = 2;
      opt.seed = seed;
      const Learned1DState r = learn_1d_state(circuit_state_source(u), g, opt);
      CHECK(r.assignment.satisfiable);
      CHECK(r.v.depth() == 2);
      CHECK(fidelity_after_inverse(u, r.v) >= 1 - 1e-9);
    }
  }
}

TEST_CASE("learned RDMs have finite correlation length") {
  const int n = 8;
  const Circuit u = random_gateset_circuit(GeometryGraph::line(n), 1, "clifford2", 4);
  const MeasurementDataset ds = sample_state_dataset(u, 40000, 2);
  auto rdms = learn_reduced_density_matrices(ds, {{0, 1, 4, 5}, {2, 3, 6, 7}});
  for (auto& r : rdms) {
    const auto exact = exactify_stabilizer_rdm(r);
    REQUIRE(exact);
    r = *exact;
  }
  const RdmProvider p = window_rdm_provider(rdms);
  CHECK(correlation_defect(p, {0, 1}, {4, 5}) <= 1e-7);
  CHECK(correlation_defect(p, {2, 3}, {6, 7}) <= 1e-7);
}

TEST_CASE("2D disentangling and patches on exact RDMs") {
  const GeometryGraph lattice = GeometryGraph::lattice({3, 7});
  const StripLayout layout = strip_layout(lattice, 2, 3);
  StateLearningOptions opt;
  opt.depth = 1;
  const auto gs = gates::gateset("clifford2");
  {
    const Disentangled2D z = disentangle_2d(exact_rdms(Circuit(21)), lattice, layout, opt);
    CHECK(z.diagnostic == Approx(1.0).margin(1e-12));
  }
  const Circuit u = random_gateset_circuit(lattice, 1, "clifford2", 6);
  const RdmProvider rdm = exact_rdms(u);
  const Disentangled2D dis = disentangle_2d(rdm, lattice, layout, opt);
  CHECK(dis.diagnostic >= 1 - 1e-9);
  CHECK(dis.v.depth() <= 1);

  std::vector<PatchCircuit> patches;
  for (const QubitSet& a : layout.patches) {
    const DenseOperator rho_a = disentangled_rdm(rdm, dis.v, a);
    Eigen::SelfAdjointEigenSolver<Mat> es(rho_a.matrix, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().maxCoeff() >= 1 - (1 - dis.diagnostic) - 1e-9);

    std::vector<DenseOperator> targets;
    for (const QubitSet& w : patch_windows(lattice, a, 3, 2))
      targets.push_back(disentangled_rdm(rdm, dis.v, w));
    patches.push_back(learn_patch_circuit(targets, lattice, a, 1, gs));
    CHECK(patches.back().w.depth() <= 2);

    // Negative control: a window that disagrees with its neighbours.
    std::vector<DenseOperator> bad = targets;
    bad[0].matrix.setZero();
    bad[0].matrix(bad[0].matrix.rows() - 1, bad[0].matrix.cols() - 1) = 1.0;
    CHECK_THROWS(learn_patch_circuit(bad, lattice, a, 1, gs));
  }
  const Circuit prep = assemble_state_preparation(dis.v, patches);
  CHECK(prep.depth() <= 3);
  CHECK(preparation_fidelity(prep, u) >= 1 - 1e-9);
}

TEST_CASE("trivial patch and assembly") {
  const GeometryGraph lattice = GeometryGraph::lattice({3, 4});
  const QubitSet patch = {0, 1, 4, 5, 8, 9};
  std::vector<DenseOperator> targets;
  for (const QubitSet& w : patch_windows(lattice, patch, 3, 2))
    targets.push_back(DenseOperator(w, reduced_density(StateVector::zero(12), w)));
  const PatchCircuit pc = learn_patch_circuit(targets, lattice, patch, 1, gates::gateset("clifford2"));
  const Circuit prep = assemble_state_preparation(Circuit(12), {pc});
  CHECK(preparation_fidelity(prep, Circuit(12)) == Approx(1.0));

  PatchCircuit empty;
  empty.w = Circuit(12);
  empty.system = patch;
  CHECK(assemble_state_preparation(Circuit(12), {empty}).gate_count() == 0);
  CHECK_THROWS_AS(assemble_state_preparation(Circuit(12), {empty, empty}), Error);
}

TEST_CASE("end-to-end 2D state learning") {
  const GeometryGraph lattice = GeometryGraph::lattice({3, 7});
  const Circuit u = random_gateset_circuit(lattice, 1, "clifford2", 2);
  StateLearningOptions opt;
  opt.depth = 1;
  opt.samples = 200000;
  const Learned2DState r = learn_2d_state(circuit_state_source(u), lattice, opt, 3, 2);
  CHECK(r.prep.depth() <= 3);
  CHECK(preparation_fidelity(r.prep, u) >= 1 - 1e-6);
  CHECK_THROWS_AS(learn_2d_state(circuit_state_source(u), lattice, opt, 2, 2), Error);
}

TEST_CASE("no-ancilla 1D learning") {
  const int n = 9;
  const GeometryGraph g = GeometryGraph::line(n);
  const auto gs = gates::gateset("clifford2");
  {
    const auto r = learn_1d_state_no_ancilla(exact_rdms(Circuit(n)), range(0, n), 1, gs);
    CHECK(r.fidelity_estimate == Approx(1.0));
    for (double e : r.product_defects) CHECK(e <= 1e-12);
    CHECK(preparation_fidelity(r.prep, Circuit(n)) == Approx(1.0));
  }
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const Circuit u = random_gateset_circuit(g, 1, "clifford2", seed);
    const RdmProvider rdm = exact_rdms(u);
    CHECK(correlation_defect(rdm, {0, 1}, {4, 5}) <= 1e-8);
    const auto r = learn_1d_state_no_ancilla(rdm, range(0, n), 1, gs);
    CHECK(r.prep.n == n);
    CHECK(preparation_fidelity(r.prep, u) >= 1 - 1e-6);
  }
  CHECK(chain_blocks(range(0, 9), 2).size() == 5);
  const auto blocks = chain_blocks(range(0, 8), 2);
  CHECK(blocks.size() == 3);
  CHECK(blocks.back().size() == 4);
}

TEST_CASE("error budget") {
  const ErrorBudget z = error_budget(0, 0, 10, 4, 0);
  CHECK(z.local_consistency == 0);
  CHECK(z.approx_disentangle == 0);
  CHECK(z.final_bound == 0);
  CHECK(z.required_eps0 == 0);

  const ErrorBudget b = error_budget(0.1, 0.01, 16, 4, 1e-12);
  const double expect = 6 * std::pow(16.0, 25.0 / 32) * std::pow(1e-12, 1.0 / 32);
  CHECK(b.final_bound == Approx(expect).epsilon(1e-6));
  CHECK(b.local_consistency == Approx(13 * 16 * std::pow(0.1, 1.0 / 16) + 4 * 16 * std::pow(0.01, 0.25)));
  CHECK(b.approx_disentangle == Approx(std::sqrt(0.2 + 0.04)));
  CHECK(error_budget(b.final_bound, 0, 16, 1, 0).required_eps0 == Approx(1e-12).epsilon(1e-6));

  const std::vector<double> grid = {0, 1e-6, 1e-3, 0.1, 1};
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const ErrorBudget lo = error_budget(grid[i], grid[i], 8, 3, grid[i]);
    const ErrorBudget hi_eps = error_budget(grid[i + 1], grid[i], 8, 3, grid[i]);
    const ErrorBudget hi_delta = error_budget(grid[i], grid[i + 1], 8, 3, grid[i]);
    const ErrorBudget hi_eps0 = error_budget(grid[i], grid[i], 8, 3, grid[i + 1]);
    const ErrorBudget hi_n = error_budget(grid[i], grid[i], 9, 4, grid[i]);
    for (const ErrorBudget* h : {&hi_eps, &hi_delta, &hi_eps0, &hi_n}) {
      CHECK(h->local_consistency >= lo.local_consistency);
      CHECK(h->approx_disentangle >= lo.approx_disentangle);
      CHECK(h->final_bound >= lo.final_bound);
    }
  }
  CHECK(error_budget_to_json(b).contains("final_bound"));
}
