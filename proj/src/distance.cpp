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


#include "scl/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scl/rng.hpp"
#include "scl/statevector.hpp"

namespace scl {

namespace {

void check_pair(const Mat& u1, const Mat& u2) {
  if (u1.rows() != u2.rows() || u1.cols() != u2.cols() || u1.rows() != u1.cols())
    throw Error("distance: dimension mismatch");
  if (!is_unitary(u1, 1e-9) || !is_unitary(u2, 1e-9)) throw Error("distance: non-unitary input");
}

const Mat& checked_matrix(const DenseOperator& a, const DenseOperator& b) {
  if (a.support != b.support) throw Error("distance: operators act on different supports");
  return a.matrix;
}

Vec random_unit(Eigen::Index dim, std::uint64_t seed) {
  SeqRng rng(seed, 0x6c616e637a6f73ULL);
  Vec v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = cplx(rng.normal(), rng.normal());
  return v / v.norm();
}

}  // namespace

double average_gate_distance(const Mat& u1, const Mat& u2) {
  check_pair(u1, u2);
  const double d = static_cast<double>(u1.rows());
  const double t = std::abs((u1.adjoint() * u2).trace());
  return std::clamp(d / (d + 1.0) * (1.0 - t * t / (d * d)), 0.0, 1.0);
}

double average_gate_distance(const DenseOperator& u1, const DenseOperator& u2) {
  return average_gate_distance(checked_matrix(u1, u2), u2.matrix);
}

double frobenius_phase_min_sq(const Mat& u1, const Mat& u2) {
  check_pair(u1, u2);
  const double d = static_cast<double>(u1.rows());
  return std::max(0.0, 2.0 * d - 2.0 * std::abs((u1.adjoint() * u2).trace()));
}

DiamondBounds unitary_diamond_proxy(const Mat& u1, const Mat& u2) {
  check_pair(u1, u2);
  // ||e^{i phi} U1 - U2|| = max_k |e^{i(phi + theta_k)} - 1| with theta_k
  // the eigenphases of U2^dag U1.
  Eigen::ComplexEigenSolver<Mat> es(u2.adjoint() * u1, false);
  std::vector<double> theta;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    theta.push_back(std::arg(es.eigenvalues()(k)));
  auto f = [&](double phi) {
    double m = 0.0;
    for (double t : theta) m = std::max(m, 2.0 * std::abs(std::sin(0.5 * (phi + t))));
    return m;
  };
  constexpr int kGrid = 1024;
  const double two_pi = 2.0 * std::numbers::pi;
  int best = 0;
  double best_val = f(0.0);
  for (int g = 1; g < kGrid; ++g) {
    const double v = f(two_pi * g / kGrid);
    if (v < best_val) best_val = v, best = g;
  }
  const double h = two_pi / kGrid;
  double lo = two_pi * best / kGrid - h, hi = lo + 2.0 * h;
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (hi - lo > 1e-10) {
    if (f1 <= f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - r * (hi - lo), f1 = f(x1);
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + r * (hi - lo), f2 = f(x2);
    }
  }
  const double phi = 0.5 * (lo + hi);
  const double m = spectral_norm(std::exp(cplx(0.0, phi)) * u1 - u2);
  return {m, 2.0 * m, phi};
}

DiamondBounds unitary_diamond_proxy(const DenseOperator& u1, const DenseOperator& u2) {
  return unitary_diamond_proxy(checked_matrix(u1, u2), u2.matrix);
}

std::pair<double, double> lanczos_extremes(const LinearMap& herm, Eigen::Index dim,
                                           std::uint64_t seed) {
  const Eigen::Index max_it = std::min<Eigen::Index>(dim, 400);
  Mat basis(dim, max_it);
  std::vector<double> alpha, beta;
  Vec v = random_unit(dim, seed);
  double lo = 0.0, hi = 0.0;
  for (Eigen::Index j = 0; j < max_it; ++j) {
    basis.col(j) = v;
    Vec w = v;
    herm(w);
    alpha.push_back(std::real(v.dot(w)));
    // Full reorthogonalization, applied twice for stability.
    for (int pass = 0; pass < 2; ++pass)
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).adjoint() * w);
    const double b = w.norm();
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) t(i, i) = alpha[i];
    for (int i = 0; i + 1 < m; ++i) t(i, i + 1) = t(i + 1, i) = beta[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    lo = es.eigenvalues()(0);
    hi = es.eigenvalues()(m - 1);
    const double res_lo = b * std::abs(es.eigenvectors()(m - 1, 0));
    const double res_hi = b * std::abs(es.eigenvectors()(m - 1, m - 1));
    if (b < 1e-14 || (m >= 8 && res_lo < 1e-12 && res_hi < 1e-12)) break;
    beta.push_back(b);
    v = w / b;
  }
  return {lo, hi};
}

double phase_min_deviation_matfree(const LinearMap& apply, const LinearMap& apply_adj,
                                   Eigen::Index dim, std::uint64_t seed) {
  Vec probe = random_unit(dim, seed ^ 0x9e37ULL);
  Vec mp = probe;
  apply(mp);
  const cplx overlap = probe.dot(mp);
  const cplx rot = std::abs(overlap) > 1e-12 ? std::conj(overlap) / std::abs(overlap) : cplx(1.0);
  // J = Im(rot M), K = Re(rot M); eigenphases of rot M are asin(eig J)
  // provided K is positive definite.
  auto part = [&](bool imag) {
    return [&, imag](Vec& x) {
      Vec a = x, b = x;
      apply(a);
      apply_adj(b);
      if (imag)
        x = (rot * a - std::conj(rot) * b) / cplx(0.0, 2.0);
      else
        x = (rot * a + std::conj(rot) * b) / 2.0;
    };
  };
  const auto [k_lo, k_hi] = lanczos_extremes(part(false), dim, seed + 1);
  (void)k_hi;
  if (k_lo <= 1e-3)
    throw Error("matrix-free deviation: eigenphase arc too wide for the Lanczos estimate");
  const auto [j_lo, j_hi] = lanczos_extremes(part(true), dim, seed + 2);
  const double spread =
      std::asin(std::clamp(j_hi, -1.0, 1.0)) - std::asin(std::clamp(j_lo, -1.0, 1.0));
  return 2.0 * std::sin(std::max(0.0, spread) / 4.0);
}

double phase_min_spectral_distance(const Circuit& a, const Circuit& b) {
  if (a.n != b.n) throw Error("distance: circuits act on different registers");
  if (a.n <= 8) {
    check_dense_cap(a.n, "phase_min_spectral_distance");
    auto dense = [](const Circuit& c) {
      const FusedCircuit f = fuse_circuit(c, 6);
      const Eigen::Index dim = Eigen::Index{1} << c.n;
      Mat u(dim, dim);
      for (Eigen::Index col = 0; col < dim; ++col) {
        Vec x = Vec::Unit(dim, col);
        apply_fused_inplace(x, f);
        u.col(col) = x;
      }
      return u;
    };
    return unitary_diamond_proxy(dense(a), dense(b)).lower;
  }
  check_dense_cap(a.n, "phase_min_spectral_distance");
  // M = B^dag A.
  const FusedCircuit fa = fuse_circuit(a, 6), fb = fuse_circuit(b, 6);
  auto apply = [&](Vec& x) {
    apply_fused_inplace(x, fa, false);
    apply_fused_inplace(x, fb, true);
  };
  auto apply_adj = [&](Vec& x) {
    apply_fused_inplace(x, fb, false);
    apply_fused_inplace(x, fa, true);
  };
  return phase_min_deviation_matfree(apply, apply_adj, Eigen::Index{1} << a.n);
}

}  // namespace scl
