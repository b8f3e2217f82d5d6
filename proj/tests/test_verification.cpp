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

#include "catch_amalgamated.hpp"
#include "scl/dataset.hpp"
#include "scl/distance.hpp"
#include "scl/gates.hpp"
#include "scl/rng.hpp"
#include "scl/sewing.hpp"
#include "scl/verification.hpp"

using namespace scl;
using Catch::Approx;

namespace {

QubitSet range(int lo, int hi) {
  QubitSet s;
  for (int q = lo; q < hi; ++q) s.push_back(q);
  return s;
}

// D_ave of the reduced channel rho_i -> Tr_{-i}[U (rho_i (x) I/2^(n-1)) U^dag]
// against the identity, through its Pauli transfer diagonal.
double reduced_channel_distance(const Mat& u, int n, int i) {
  const QubitSet all = range(0, n);
  const double rest = std::ldexp(1.0, n - 1);
  double fe = 0.25;
  for (char p : {'X', 'Y', 'Z'}) {
    const Mat in = embed(Mat(gates::pauli(p)), {i}, all) / rest;
    const Mat out = partial_trace(u * in * u.adjoint(), all, {i});
    fe += 0.125 * (Mat(gates::pauli(p)) * out).trace().real();
  }
  return (2.0 / 3.0) * (1.0 - fe);
}

Circuit exact_sewing(const Circuit& u) {
  std::vector<SewBlock> blocks;
  for (int i = 0; i < u.n; ++i) blocks.push_back(exact_sew_block(u, {i}));
  return sew(blocks, order_blocks_by_coloring(blocks), u.n);
}

Circuit swap_layer(int n) {
  Circuit c(n);
  Layer l;
  for (int q = 0; q + 1 < n; q += 2) l.gates.push_back(Gate{q, q + 1, gates::SWAP(), -1});
  c.layers.push_back(l);
  return c;
}

Mat near_identity(int dim, double t, SeqRng& rng) {
  Mat h(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) h(r, c) = cplx(rng.normal(), rng.normal());
  h = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  const Eigen::VectorXcd phases =
      (cplx(0, t) * es.eigenvalues().cast<cplx>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("strong local deviation") {
  CHECK(strong_local_deviation(DenseOperator({0, 1}, Mat::Identity(4, 4)), 0) == Approx(0.0));
  CHECK(strong_local_deviation(DenseOperator({0, 1}, Mat(gates::SWAP())), 0) == Approx(3.0));
  SeqRng rng(1, 1);
  const Mat v = gates::haar_unitary(4, rng);
  const DenseOperator idle({0, 1, 2}, kron(Mat::Identity(2, 2), v));
  CHECK(strong_local_deviation(idle, 0) < 1e-12);
  CHECK(strong_local_deviation(idle, 1) > 0.1);
}

TEST_CASE("pauli influence is 3/2 the reduced-channel distance") {
  CHECK(pauli_influence(DenseOperator({0, 1}, Mat::Identity(4, 4)), 1) == Approx(0.0).margin(1e-12));
  CHECK(pauli_influence(DenseOperator({0, 1}, embed(Mat(gates::X()), {1}, {0, 1})), 1) ==
        Approx(1.0));
  SeqRng rng(2, 5);
  for (int t = 0; t < 20; ++t) {
    const Mat u = gates::haar_unitary(8, rng);
    for (int i = 0; i < 3; ++i)
      CHECK(std::abs(pauli_influence(DenseOperator({0, 1, 2}, u), i) -
                     1.5 * reduced_channel_distance(u, 3, i)) < 1e-9);
  }
}

TEST_CASE("strong local checks bound the global distance") {
  SeqRng rng(6, 6);
  for (int t = 0; t < 20; ++t) {
    const Mat u = near_identity(8, 0.01 * (t + 1), rng);
    const DenseOperator op({0, 1, 2}, u);
    double sum = 0;
    for (int i = 0; i < 3; ++i) sum += strong_local_deviation(op, i);
    CHECK(unitary_diamond_proxy(u, Mat(Mat::Identity(8, 8))).lower <= 2 * 3 * sum + 1e-12);
  }
}

TEST_CASE("inverse-channel observables of an exact sewing are U P U^dag") {
  const int n = 3;
  const Circuit u = random_su4_circuit(GeometryGraph::line(n), 1, 4);
  const Mat um = circuit_unitary(u);
  const auto obs = inverse_channel_observables(exact_sewing(u));
  for (int i = 0; i < n; ++i)
    for (int p = 0; p < 3; ++p) {
      const Mat expect = um * embed(Mat(gates::pauli("XYZ"[p])), {i}, range(0, n)) * um.adjoint();
      CHECK(max_abs(embed(obs[i][p].matrix, obs[i][p].support, range(0, n)) - expect) < 1e-9);
    }
}

TEST_CASE("estimated deviations of an exact sewing are small") {
  const int n = 4;
  const Circuit u = random_su4_circuit(GeometryGraph::line(n), 1, 31);
  const MeasurementDataset ds = sample_unitary_dataset(u, 50000, 3);
  const auto o = estimate_local_deviations(ds, exact_sewing(u));
  REQUIRE(o.size() == static_cast<std::size_t>(n));
  for (double v : o) CHECK(v <= 0.05);
}

TEST_CASE("estimated deviations against the identity match the oracle") {
  const int n = 4;
  const Circuit u = swap_layer(n);
  const MeasurementDataset ds = sample_unitary_dataset(u, 50000, 8);
  const auto o = estimate_local_deviations(ds, exact_sewing(Circuit(n)));
  const Mat ud = circuit_unitary(u).adjoint();
  for (int i = 0; i < n; ++i) {
    const double oracle = (2.0 / 3.0) * pauli_influence(DenseOperator(range(0, n), ud), i);
    CHECK(std::abs(o[i] - oracle) <= 0.1);
    CHECK(oracle == Approx(0.5));
  }
}

TEST_CASE("estimation rejects empty or mismatched data") {
  const Circuit u = swap_layer(2);
  MeasurementDataset ds = sample_unitary_dataset(u, 10, 1);
  CHECK_THROWS_AS(estimate_local_deviations(ds, exact_sewing(Circuit(3))), Error);
  ds.inputs.clear();
  ds.outcomes.clear();
  CHECK_THROWS_AS(estimate_local_deviations(ds, exact_sewing(Circuit(2))), Error);
}

TEST_CASE("verify decision rule") {
  CHECK(verify({0, 0, 0}, 0.2).pass);
  CHECK_FALSE(verify({0.2, 0, 0}, 0.2).pass);
  const VerificationReport edge = verify({0.25, 0.25}, 1.5);  // (3/2)(1/2) = 3/4
  CHECK(edge.score == 0.75);
  CHECK(edge.threshold == 0.75);
  CHECK(edge.pass);
  const auto j = verification_to_json(edge);
  CHECK(j.at("verdict") == "PASS");
  CHECK(j.at("o").size() == 2);
}
