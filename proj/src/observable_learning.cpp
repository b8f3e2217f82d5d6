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


#include "scl/observable_learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/stabilizer.hpp"

namespace scl {

namespace {

int label_index(char c) { return static_cast<int>(stab_from_char(c)); }

// Maps counts over the six labels "01+-rl" to the four letter sums
// (I, X, Y, Z) weighted by 3 for non-identity letters.
const std::vector<double>& six_to_four() {
  static const std::vector<double> t = {
      1, 1, 1, 1, 1, 1,    // I
      0, 0, 3, -3, 0, 0,   // X
      0, 0, 0, 0, 3, -3,   // Y
      3, -3, 0, 0, 0, 0};  // Z
  return t;
}

// Weighted histogram over label patterns on S, folded to Pauli sums.
std::vector<double> label_pauli_sums(const std::vector<const std::string*>& labels,
                                     const std::vector<double>* weights, const QubitSet& s) {
  const int k = static_cast<int>(s.size());
  std::size_t size = 1;
  for (int t = 0; t < k; ++t) size *= 6;
  std::vector<double> hist(size, 0.0);
  for (std::size_t l = 0; l < labels.size(); ++l) {
    std::size_t idx = 0;
    for (int q : s) idx = idx * 6 + label_index((*labels[l])[q]);
    hist[idx] += weights ? (*weights)[l] : 1.0;
  }
  return tensor_axis_transform<double>(hist, k, 6, 4, six_to_four());
}

Mat embed_observable(const PauliObservable& o, const QubitSet& support) {
  return o.matrix_on(support);
}

std::string canonical_key(const DenseOperator& op) {
  std::string key;
  for (int q : op.support) key += std::to_string(q) + ",";
  key += "|";
  for (Eigen::Index i = 0; i < op.matrix.size(); ++i) {
    const cplx v = op.matrix.data()[i];
    key += std::to_string(std::llround(v.real() * 1e6)) + ":" +
           std::to_string(std::llround(v.imag() * 1e6)) + ";";
  }
  return key;
}

void check_region(const QubitSet& s, int n) {
  for (int q : s)
    if (q < 0 || q >= n) throw Error("region qubit out of range");
  if (normalized(s).size() != s.size()) throw Error("region has repeated qubits");
}

}  // namespace

std::vector<double> estimate_pauli_coefficients(const std::vector<ObservableSamplePair>& pairs,
                                                const QubitSet& s) {
  if (s.empty()) throw Error("known support must be nonempty");
  if (pairs.empty()) throw Error("no samples");
  if (static_cast<int>(s.size()) > kDefaultKMax) throw Error("known support exceeds k_max");
  check_region(s, static_cast<int>(pairs.front().input.size()));
  std::vector<const std::string*> labels;
  std::vector<double> weights;
  for (const auto& p : pairs) labels.push_back(&p.input), weights.push_back(p.v);
  auto sums = label_pauli_sums(labels, &weights, s);
  for (double& x : sums) x /= static_cast<double>(pairs.size());
  return sums;
}

PauliObservable learn_observable_known_support(const std::vector<ObservableSamplePair>& pairs,
                                               const QubitSet& s) {
  const auto coef = estimate_pauli_coefficients(pairs, s);
  PauliObservable o;
  o.declared_support = s;
  const auto paulis = all_paulis_on(s);
  for (std::size_t code = 1; code < coef.size(); ++code)
    if (coef[code] != 0.0) o.add(paulis[code - 1], coef[code]);
  return o;
}

PauliObservable learn_observable_unknown_support(const std::vector<ObservableSamplePair>& pairs,
                                                 int k, double eps,
                                                 const ObservableLearningOptions& opt) {
  if (k < 1 || k > opt.max_k) throw Error("k out of range");
  if (!(eps > 0.0 && eps <= 1.0)) throw Error("eps must lie in (0, 1]");
  if (pairs.empty()) throw Error("no samples");
  const int n = static_cast<int>(pairs.front().input.size());
  if (n > opt.max_n || n > 32) throw Error("register too large for unknown-support learning");
  // Only Paulis whose letters match the input bases contribute for a given
  // sample: one per subset of at most k qubits. Key: 2 bits per qubit.
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (!cur.empty()) subsets.push_back(cur);
    if (static_cast<int>(cur.size()) == k) return;
    for (int q = start; q < n; ++q) {
      cur.push_back(q);
      self(self, q + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  static const int kLetterCode[6] = {3, 3, 1, 1, 2, 2};  // Z, Z, X, X, Y, Y
  static const int kSign[6] = {1, -1, 1, -1, 1, -1};
  std::unordered_map<std::uint64_t, double> acc;
  for (const auto& p : pairs) {
    if (p.v == 0.0) continue;
    int lab[32];
    for (int q = 0; q < n; ++q) lab[q] = label_index(p.input[q]);
    for (const auto& sub : subsets) {
      std::uint64_t key = 0;
      double val = p.v;
      for (int q : sub) {
        key |= static_cast<std::uint64_t>(kLetterCode[lab[q]]) << (2 * q);
        val *= 3.0 * kSign[lab[q]];
      }
      acc[key] += val;
    }
  }
  const double thr = 0.5 * eps / std::pow(2.0 * std::sqrt(2.0), k);
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  PauliObservable o;
  for (const auto& [key, sum] : acc) {
    const double a = sum / static_cast<double>(pairs.size());
    if (std::abs(a) < thr) continue;
    std::map<int, char> letters;
    for (int q = 0; q < n; ++q)
      if (const int c = (key >> (2 * q)) & 3) letters[q] = kLetters[c];
    o.add(PauliString(letters), a);
  }
  o.declared_support = o.term_support();
  return o;
}

double candidate_min_gap(const std::vector<DenseOperator>& candidates) {
  QubitSet all;
  for (const auto& c : candidates) all = set_union(all, c.support);
  std::vector<Mat> full;
  for (const auto& c : candidates) full.push_back(embed(c, all).matrix);
  double gap = std::numeric_limits<double>::infinity();
  const double root_dim = std::sqrt(static_cast<double>(full.empty() ? 1 : full[0].rows()));
  for (std::size_t a = 0; a < full.size(); ++a)
    for (std::size_t b = a + 1; b < full.size(); ++b) {
      const Mat diff = full[a] - full[b];
      // ||D||_F / sqrt(dim) <= ||D||_inf <= ||D||_F.
      if (diff.norm() / root_dim >= gap) continue;
      Eigen::SelfAdjointEigenSolver<Mat> es(diff, Eigen::EigenvaluesOnly);
      gap = std::min(gap, es.eigenvalues().cwiseAbs().maxCoeff());
    }
  return gap;
}

SnapResult snap_observable_to_candidates(const PauliObservable& estimate,
                                         const std::vector<DenseOperator>& candidates,
                                         double min_gap, const SnapOptions& opt) {
  if (candidates.empty()) throw Error("empty candidate list");
  if (!opt.gap_verified && candidates.size() > 1 &&
      candidate_min_gap(candidates) < min_gap - 1e-12)
    throw Error("candidate family gap is below min_gap");
  QubitSet all;
  for (const auto& c : candidates) all = set_union(all, c.support);
  PauliObservable est = estimate;
  if (opt.restrict_to_span) {
    std::map<PauliString, double> span;
    for (const auto& c : candidates)
      for (const auto& [p, coef] : pauli_decompose(c.matrix, c.support, 1e-9, false).terms)
        span[p] = 1.0;
    PauliObservable restricted;
    for (const auto& [p, coef] : estimate.terms)
      if (span.count(p)) restricted.add(p, coef);
    est = restricted;
  }
  all = set_union(all, est.term_support());
  const Mat o = embed_observable(est, all);
  auto spectral = [&](const Mat& diff) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (diff + diff.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().maxCoeff();
  };
  SnapResult best;
  double best_score = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Mat diff = embed(candidates[i], all).matrix - o;
    const double score = opt.metric == SnapMetric::Spectral ? spectral(diff) : diff.norm();
    if (score < best_score) {
      best_score = score;
      best.index = i;
    }
  }
  best.op = candidates[best.index];
  best.distance = spectral(embed(best.op, all).matrix - o);
  best.low_confidence = best.distance > min_gap / 3.0;
  return best;
}

std::vector<DenseOperator> enumerate_gateset_heisenberg_candidates(
    const std::vector<Mat4>& gateset, int d, const GeometryGraph& g, const QubitSet& region,
    int qubit, char pauli, std::size_t cap) {
  if (!contains(region, qubit)) throw Error("target qubit outside the region");
  std::vector<DenseOperator> current{
      DenseOperator({qubit}, Mat(gates::pauli(pauli)))};
  for (int layer = 0; layer < d; ++layer) {
    std::vector<DenseOperator> next;
    std::unordered_map<std::string, bool> seen;
    for (const DenseOperator& op : current) {
      // Edges inside the region touching the current support.
      std::vector<Edge> edges;
      for (const Edge& e : g.edges())
        if (contains(region, e.first) && contains(region, e.second) &&
            (contains(op.support, e.first) || contains(op.support, e.second)))
          edges.push_back(e);
      std::vector<std::pair<Edge, int>> chosen;
      std::vector<char> used(g.vertex_count(), 0);
      auto emit = [&]() {
        Circuit layer_circuit(g.vertex_count());
        Layer l;
        for (const auto& [e, gi] : chosen) l.gates.push_back(Gate{e.first, e.second, gateset[gi], gi});
        layer_circuit.layers.push_back(std::move(l));
        DenseOperator out =
            trim_identity_factors(heisenberg_conjugate(layer_circuit, op), 1e-10);
        out.hermitian = true;
        out.unitary = true;
        const std::string key = canonical_key(out);
        if (seen.emplace(key, true).second) {
          next.push_back(std::move(out));
          if (next.size() > cap) throw Error("candidate enumeration exceeds the cap");
        }
      };
      auto rec = [&](auto&& self, std::size_t idx) -> void {
        if (idx == edges.size()) {
          emit();
          return;
        }
        self(self, idx + 1);  // edge idle
        const Edge& e = edges[idx];
        if (used[e.first] || used[e.second]) return;
        used[e.first] = used[e.second] = 1;
        for (int gi = 0; gi < static_cast<int>(gateset.size()); ++gi) {
          chosen.push_back({e, gi});
          self(self, idx + 1);
          chosen.pop_back();
        }
        used[e.first] = used[e.second] = 0;
      };
      rec(rec, 0);
    }
    current = std::move(next);
  }
  return current;
}

Mat project_psd(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  const double tr = ev.sum();
  if (tr <= 0.0) throw Error("PSD projection: no positive spectrum");
  ev /= tr;
  return es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<DenseOperator> learn_reduced_density_matrices(const MeasurementDataset& ds,
                                                          const std::vector<QubitSet>& regions,
                                                          const RdmOptions& opt) {
  if (ds.mode != DatasetMode::State) throw Error("RDM learning needs a state dataset");
  if (ds.size() == 0) throw Error("no samples");
  std::vector<const std::string*> labels;
  for (const auto& o : ds.outcomes) labels.push_back(&o);
  std::vector<DenseOperator> out;
  for (const QubitSet& r : regions) {
    if (r.empty()) throw Error("empty region");
    if (static_cast<int>(r.size()) > opt.max_region) throw Error("region too large");
    check_region(r, ds.n);
    const int k = static_cast<int>(r.size());
    auto beta = label_pauli_sums(labels, nullptr, r);
    const double scale = 1.0 / (static_cast<double>(ds.size()) * std::ldexp(1.0, k));
    for (double& b : beta) b *= scale;
    Mat sigma = matrix_from_pauli_coefficients(beta, k);
    if (opt.psd_projection) sigma = project_psd(sigma);
    DenseOperator op(r, sigma);
    op.hermitian = true;
    out.push_back(std::move(op));
  }
  return out;
}

std::optional<DenseOperator> exactify_stabilizer_rdm(const DenseOperator& sigma) {
  const int k = sigma.size();
  auto coef = pauli_coefficients(sigma.matrix);
  // For a stabilizer state, Tr(P sigma) = 2^k coef_P lies in {-1, 0, 1}.
  const double dim = std::ldexp(1.0, k);
  for (double& c : coef) c = std::clamp(std::round(c * dim), -1.0, 1.0) / dim;
  coef[0] = 1.0 / dim;
  const Mat rho = matrix_from_pauli_coefficients(coef, k);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > 1e-9 && std::abs(ev(i) - top) > 1e-9) return std::nullopt;
  DenseOperator out(sigma.support, rho);
  out.hermitian = true;
  return out;
}

}  // namespace scl
