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


#include <algorithm>
#include <cmath>

#include "catch_amalgamated.hpp"
#include "scl/dataset.hpp"
#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/observable_learning.hpp"
#include "scl/statevector.hpp"

using namespace scl;
using Catch::Approx;

namespace {

double coef(const PauliObservable& o, const std::string& p) {
  auto it = o.terms.find(PauliString::parse(p));
  return it == o.terms.end() ? 0.0 : it->second;
}

double spectral_error(const PauliObservable& est, const DenseOperator& exact) {
  const QubitSet all = set_union(est.declared_support, exact.support);
  const Mat diff = est.matrix_on(all) - embed(exact, all).matrix;
  Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double trace_norm(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

Circuit swap01(int n) {
  Circuit c(n);
  c.layers.push_back({{Gate{0, 1, gates::SWAP(), -1}}, ""});
  return c;
}

}  // namespace

TEST_CASE("pauli coefficient transforms match direct traces") {
  SeqRng rng(1, 9);
  for (int k = 1; k <= 3; ++k) {
    const Mat m = gates::haar_unitary(1 << k, rng);
    const Mat h = m + m.adjoint();
    const auto c = pauli_coefficients(h);
    QubitSet s;
    for (int q = 0; q < k; ++q) s.push_back(q);
    const auto direct = pauli_decompose(h, s, 0.0);
    REQUIRE(c[0] == Approx(h.trace().real() / (1 << k)).margin(1e-12));
    const auto paulis = all_paulis_on(s);
    for (std::size_t code = 1; code < c.size(); ++code) {
      auto it = direct.terms.find(paulis[code - 1]);
      const double d = it == direct.terms.end() ? 0.0 : it->second;
      REQUIRE(c[code] == Approx(d).margin(1e-12));
    }
    REQUIRE(max_abs(matrix_from_pauli_coefficients(c, k) - h) < 1e-12);
  }
}

TEST_CASE("unknown-support learning examples") {
  const auto ds = sample_unitary_dataset(Circuit(4), 20000, 3);
  const auto o = learn_observable_unknown_support(derive_pauli_dataset(ds, PauliString::parse("Z1")),
                                                  1, 0.3);
  REQUIRE(o.terms.size() == 1);
  REQUIRE(coef(o, "Z1") == Approx(1.0).margin(0.1));
  REQUIRE(o.declared_support == QubitSet{1});

  std::vector<ObservableSamplePair> zeros(100, ObservableSamplePair{"0000", 0.0});
  REQUIRE(learn_observable_unknown_support(zeros, 2, 0.5).terms.empty());

  const auto sw = sample_unitary_dataset(swap01(3), 20000, 4);
  const auto x = learn_observable_unknown_support(derive_pauli_dataset(sw, PauliString::parse("X0")),
                                                  1, 0.3);
  for (int q : x.declared_support) REQUIRE(q == 1);
  REQUIRE(coef(x, "X1") == Approx(1.0).margin(0.1));
  REQUIRE_THROWS_AS(learn_observable_unknown_support(zeros, 0, 0.5), Error);
  REQUIRE_THROWS_AS(learn_observable_unknown_support(zeros, 1, 0.0), Error);
}

TEST_CASE("known-support learning examples") {
  const auto ds = sample_unitary_dataset(Circuit(4), 20000, 5);
  const auto pairs = derive_pauli_dataset(ds, PauliString::parse("Z1"));
  const auto o = learn_observable_known_support(pairs, {1});
  REQUIRE(coef(o, "Z1") == Approx(1.0).margin(0.1));
  REQUIRE(std::abs(coef(o, "X1")) < 0.1);
  REQUIRE(std::abs(coef(o, "Y1")) < 0.1);
  REQUIRE_THROWS_AS(learn_observable_known_support(pairs, {}), Error);

  const auto line = GeometryGraph::line(4);
  int good = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = random_su4_circuit(line, 1, 40 + seed);
    const auto big = sample_unitary_dataset(c, 50000, seed);
    const auto exact = heisenberg_observable_exact(c, 2, 'X');
    const auto est = learn_observable_known_support(
        derive_pauli_dataset(big, PauliString::parse("X2")), exact.support);
    good += spectral_error(est, exact) <= 0.15;
  }
  REQUIRE(good >= 9);
}

TEST_CASE("thresholding soundness") {
  const auto line = GeometryGraph::line(4);
  const int k = 2;
  const double eps = 1.0;
  const double thr = 0.5 * eps / std::pow(2.0 * std::sqrt(2.0), k);
  int premise_held = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = random_su4_circuit(line, 1, 300 + seed);
    const auto ds = sample_unitary_dataset(c, 100000, 100 + seed);
    const int i = static_cast<int>(seed % 4);
    const char p = "XYZ"[seed % 3];
    PauliString target = PauliString::single(i, p);
    const auto pairs = derive_pauli_dataset(ds, target);
    const auto exact = heisenberg_observable_exact(c, i, p);
    // Raw estimates of every Pauli with weight <= k.
    const QubitSet all{0, 1, 2, 3};
    const auto raw = estimate_pauli_coefficients(pairs, all);
    const auto truth = pauli_coefficients(embed(exact, all).matrix);
    bool premise = true;
    for (std::size_t code = 1; code < raw.size(); ++code) {
      int w = 0;
      for (int t = 0; t < 4; ++t) w += ((code >> (2 * t)) & 3) != 0;
      if (w <= k && std::abs(raw[code] - truth[code]) >= thr) premise = false;
    }
    if (!premise) continue;
    ++premise_held;
    const auto o = learn_observable_unknown_support(pairs, k, eps);
    for (int q : o.declared_support) REQUIRE(contains(exact.support, q));
    REQUIRE(spectral_error(o, exact) <= eps);
  }
  REQUIRE(premise_held >= 10);
}

TEST_CASE("estimation error scales as one over root N") {
  const auto line = GeometryGraph::line(4);
  std::vector<double> err_n, err_4n;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto c = random_su4_circuit(line, 1, 500 + seed);
    const auto small = sample_unitary_dataset(c, 4000, 2 * seed);
    const auto large = sample_unitary_dataset(c, 16000, 2 * seed + 1);
    for (int i = 0; i < 4; ++i)
      for (char p : {'X', 'Y', 'Z'}) {
        const auto exact = heisenberg_observable_exact(c, i, p);
        const auto target = PauliString::single(i, p);
        const QubitSet s = lightcone(line, {i}, 1);
        err_n.push_back(spectral_error(
            learn_observable_known_support(derive_pauli_dataset(small, target), s), exact));
        err_4n.push_back(spectral_error(
            learn_observable_known_support(derive_pauli_dataset(large, target), s), exact));
      }
  }
  auto median = [](std::vector<double> v) {
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    return v[v.size() / 2];
  };
  const double ratio = median(err_n) / median(err_4n);
  REQUIRE(ratio >= 1.5);
  REQUIRE(ratio <= 2.7);
}

TEST_CASE("snapping") {
  const DenseOperator z({1}, Mat(gates::Z())), x({1}, Mat(gates::X()));
  PauliObservable est;
  est.declared_support = {1};
  est.add(PauliString::parse("Z1"), 0.95);
  est.add(PauliString::parse("X1"), 0.02);
  auto r = snap_observable_to_candidates(est, {z, x}, 1.0);
  REQUIRE(r.index == 0);
  PauliObservable exact;
  exact.declared_support = {1};
  exact.add(PauliString::parse("X1"), 1.0);
  r = snap_observable_to_candidates(exact, {z, x}, 1.0);
  REQUIRE(r.index == 1);
  REQUIRE(r.distance == Approx(0.0).margin(1e-12));
  REQUIRE_FALSE(r.low_confidence);
  REQUIRE_THROWS_AS(snap_observable_to_candidates(est, {}, 1.0), Error);
  REQUIRE_THROWS_AS(snap_observable_to_candidates(est, {z, z}, 1.0), Error);
  REQUIRE_THROWS_AS(snap_observable_to_candidates(est, {z, x}, 1.5), Error);
}

TEST_CASE("snapping recovers finite-gate observables") {
  const auto line = GeometryGraph::line(6);
  const auto gs = gates::gateset("swap_cz");
  int exact_trials = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto c = random_gateset_circuit(line, 1, "swap_cz", 700 + seed);
    const auto ds = sample_unitary_dataset(c, 2000, seed);
    const int i = static_cast<int>(seed % 6);
    const char p = "XYZ"[seed % 3];
    const QubitSet region = lightcone(line, {i}, 1);
    const auto cands = enumerate_gateset_heisenberg_candidates(gs, 1, line, region, i, p);
    const auto est = learn_observable_known_support(
        derive_pauli_dataset(ds, PauliString::single(i, p)), region);
    const auto r = snap_observable_to_candidates(est, cands, candidate_min_gap(cands));
    const auto truth = heisenberg_observable_exact(c, i, p);
    const QubitSet all = set_union(truth.support, r.op.support);
    exact_trials += max_abs(embed(r.op, all).matrix - embed(truth, all).matrix) < 1e-9;
  }
  REQUIRE(exact_trials == 20);
}

TEST_CASE("candidate enumeration") {
  const auto line2 = GeometryGraph::line(2);
  auto c = enumerate_gateset_heisenberg_candidates({gates::identity4()}, 3, line2, {0, 1}, 0, 'Z');
  REQUIRE(c.size() == 1);
  REQUIRE(c[0].support == QubitSet{0});
  REQUIRE(max_abs(c[0].matrix - Mat(gates::Z())) < 1e-12);

  c = enumerate_gateset_heisenberg_candidates({gates::SWAP()}, 1, line2, {0, 1}, 0, 'X');
  REQUIRE(c.size() == 2);
  REQUIRE(c[0].support == QubitSet{0});
  REQUIRE(c[1].support == QubitSet{1});
  REQUIRE(max_abs(c[1].matrix - Mat(gates::X())) < 1e-12);

  const auto dup = enumerate_gateset_heisenberg_candidates({gates::CZ(), gates::CZ(), gates::SWAP()},
                                                          2, GeometryGraph::line(4), {0, 1, 2, 3},
                                                          1, 'X');
  const auto single = enumerate_gateset_heisenberg_candidates({gates::CZ(), gates::SWAP()}, 2,
                                                             GeometryGraph::line(4), {0, 1, 2, 3},
                                                             1, 'X');
  REQUIRE(dup.size() == single.size());
  REQUIRE(candidate_min_gap(dup) > 0.5);

  // Every exact observable of a random circuit is in its family.
  const auto line = GeometryGraph::line(6);
  const auto gs = gates::gateset("clifford2");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto circ = random_gateset_circuit(line, 2, "clifford2", seed);
    const auto truth = heisenberg_observable_exact(circ, 3, 'Y');
    const auto fam =
        enumerate_gateset_heisenberg_candidates(gs, 2, line, lightcone(line, {3}, 2), 3, 'Y');
    bool found = false;
    for (const auto& f : fam)
      if (f.support == truth.support && max_abs(f.matrix - truth.matrix) < 1e-9) found = true;
    REQUIRE(found);
  }
  REQUIRE_THROWS_AS(
      enumerate_gateset_heisenberg_candidates(gs, 2, line, {0, 1, 2, 3, 4, 5}, 3, 'Y', 10),
      Error);
}

TEST_CASE("reduced density matrices") {
  const auto zero = sample_state_dataset(Circuit(3), 5000, 1);
  auto rdm = learn_reduced_density_matrices(zero, {{0}, {0, 2}});
  Mat target = Mat::Zero(2, 2);
  target(0, 0) = 1.0;
  REQUIRE(trace_norm(rdm[0].matrix - target) / 2 < 0.1);
  REQUIRE(rdm[0].matrix.trace().real() == Approx(1.0).margin(1e-12));
  REQUIRE(rdm[1].matrix.trace().real() == Approx(1.0).margin(1e-12));

  Circuit bell(3);
  bell.layers.push_back(
      {{Gate{0, 1, gates::CNOT() * gates::kron2(gates::H(), gates::I2()), -1}}, ""});
  const auto bds = sample_state_dataset(bell, 5000, 2);
  rdm = learn_reduced_density_matrices(bds, {{0}}, RdmOptions{true, 9});
  REQUIRE(trace_norm(rdm[0].matrix - Mat::Identity(2, 2) / 2.0) / 2 < 0.1);
  REQUIRE_THROWS_AS(learn_reduced_density_matrices(bds, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}}), Error);
  REQUIRE_THROWS_AS(learn_reduced_density_matrices(sample_unitary_dataset(bell, 10, 1), {{0}}),
                    Error);
}

TEST_CASE("rdm error obeys the coefficient chain") {
  const auto c = random_su4_circuit(GeometryGraph::line(5), 2, 31);
  const auto ds = sample_state_dataset(c, 20000, 8);
  const auto psi = apply_circuit(StateVector::zero(5), c);
  for (const QubitSet& r : std::vector<QubitSet>{{0}, {1, 2}, {2, 3, 4}}) {
    const auto sigma = learn_reduced_density_matrices(ds, {r})[0];
    const Mat rho = reduced_density(psi, r);
    const auto a = pauli_coefficients(sigma.matrix), b = pauli_coefficients(rho);
    const double dim = std::ldexp(1.0, static_cast<int>(r.size()));
    double max_err = 0;
    for (std::size_t code = 0; code < a.size(); ++code)
      max_err = std::max(max_err, dim * std::abs(a[code] - b[code]));
    REQUIRE(trace_norm(sigma.matrix - rho) <= std::pow(4.0, r.size()) * max_err + 1e-12);
  }
}

TEST_CASE("stabilizer rdm exactification") {
  const auto line = GeometryGraph::line(6);
  const auto c = random_gateset_circuit(line, 2, "clifford2", 4);
  const auto psi = apply_circuit(StateVector::zero(6), c);
  const auto ds = sample_state_dataset(c, 40000, 3);
  const QubitSet r{1, 2, 3};
  const auto sigma = learn_reduced_density_matrices(ds, {r})[0];
  const auto exact = exactify_stabilizer_rdm(sigma);
  REQUIRE(exact.has_value());
  REQUIRE(max_abs(exact->matrix - reduced_density(psi, r)) < 1e-12);
  DenseOperator junk(r, Mat::Identity(8, 8) / 8.0);
  junk.matrix(0, 1) = junk.matrix(1, 0) = 0.3;
  REQUIRE_FALSE(exactify_stabilizer_rdm(junk).has_value());
}
