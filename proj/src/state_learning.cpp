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

#include "scl/state_learning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "scl/gates.hpp"
#include "scl/observable_learning.hpp"
#include "scl/statevector.hpp"
#include "scl/synthesis.hpp"

namespace scl {

namespace {

constexpr int kUnassigned = -2;

// rho <- g rho g^dag on local positions (a, b) of a k-qubit operator.
void conjugate_inplace(Mat& rho, int k, int a, int b, const Mat4& g) {
  apply_gate_inplace(rho, k, a, b, g);
  rho.adjointInPlace();
  apply_gate_inplace(rho, k, a, b, g);
  rho.adjointInPlace();
}

std::vector<char> membership(int n, const QubitSet& s) {
  std::vector<char> in(n, 0);
  for (int q : s) in.at(q) = 1;
  return in;
}

// Depth-first search over slot choices, one step at a time. Each step
// assigns its new slots and either prunes or passes an updated score.
class SlotSearch {
 public:
  using Check = std::function<std::optional<double>(std::size_t, const std::vector<int>&, double)>;

  SlotSearch(const SlotLayout& layout, std::vector<std::vector<int>> steps, Check check,
             const EnumerationLimits& lim)
      : layout_(layout), steps_(std::move(steps)), check_(std::move(check)), lim_(lim),
        assign_(layout.slot_count(), kUnassigned) {}

  void run(const std::function<void(const std::vector<int>&, double)>& emit) {
    emit_ = &emit;
    recurse(0, 0.0);
  }

 private:
  void recurse(std::size_t step, double acc) {
    if (step == steps_.size()) {
      if (++emitted_ > lim_.max_candidates) throw LearningFailure("candidate cap exceeded");
      (*emit_)(assign_, acc);
      return;
    }
    const auto& fresh = steps_[step];
    std::vector<int> sizes;
    for (int s : fresh)
      sizes.push_back(static_cast<int>(
          layout_.alphabets[layout_.alphabet[layout_.slot_layer(s)]].size()));
    for (int s : fresh) assign_[s] = -1;
    while (true) {
      if (++nodes_ > lim_.max_nodes) throw LearningFailure("search node cap exceeded");
      if (auto next = check_(step, assign_, acc)) recurse(step + 1, *next);
      // Odometer over idle, 0, 1, ... per fresh slot.
      std::size_t t = 0;
      for (; t < fresh.size(); ++t) {
        if (assign_[fresh[t]] + 1 < sizes[t]) {
          ++assign_[fresh[t]];
          break;
        }
        assign_[fresh[t]] = -1;
      }
      if (t == fresh.size()) break;
    }
    for (int s : fresh) assign_[s] = kUnassigned;
  }

  const SlotLayout& layout_;
  std::vector<std::vector<int>> steps_;
  Check check_;
  EnumerationLimits lim_;
  std::vector<int> assign_;
  const std::function<void(const std::vector<int>&, double)>* emit_ = nullptr;
  std::size_t nodes_ = 0;
  std::size_t emitted_ = 0;
};

// New slots per step when the cones of the first t+1 qubits are covered.
std::vector<std::vector<int>> incremental_steps(const SlotLayout& layout,
                                                const std::vector<std::vector<int>>& cones) {
  std::vector<char> seen(layout.slot_count(), 0);
  std::vector<std::vector<int>> steps;
  for (const auto& cone : cones) {
    std::vector<int> fresh;
    for (int s : cone)
      if (!seen[s]) seen[s] = 1, fresh.push_back(s);
    steps.push_back(fresh);
  }
  return steps;
}

void finish_list(CandidateList& out, const SlotLayout& layout) {
  for (const auto& ch : out.choices) out.circuits.push_back(layout.circuit(out.slots, ch));
}

Circuit restrict_to(const Circuit& c, const QubitSet& qs) {
  std::vector<int> map(c.n, -1);
  for (std::size_t t = 0; t < qs.size(); ++t) map[qs[t]] = static_cast<int>(t);
  Circuit local(static_cast<int>(qs.size()));
  for (const Layer& layer : c.layers) {
    Layer l;
    for (const Gate& g : layer.gates)
      if (map[g.a] >= 0) l.gates.push_back(Gate{map[g.a], map[g.b], g.u, g.tag});
    if (!l.gates.empty()) local.layers.push_back(std::move(l));
  }
  return local;
}

std::vector<QubitSet> row_bands(const GeometryGraph& g, const QubitSet& region, int height) {
  std::map<int, QubitSet> by_row;
  for (int q : region) by_row[g.coords(q)[0]].push_back(q);
  std::vector<QubitSet> out;
  QubitSet cur;
  int count = 0;
  for (auto& [row, qs] : by_row) {
    cur.insert(cur.end(), qs.begin(), qs.end());
    if (++count == height) {
      out.push_back(normalized(cur));
      cur.clear();
      count = 0;
    }
  }
  if (!cur.empty()) out.push_back(normalized(cur));
  return out;
}

std::vector<Mat4> daggered(const std::vector<Mat4>& set) {
  std::vector<Mat4> out;
  for (const Mat4& g : set) out.push_back(g.adjoint());
  return out;
}

double trace_norm_hermitian(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

std::vector<DenseOperator> learn_windows(const MeasurementDataset& ds,
                                         const std::vector<QubitSet>& windows, bool exactify) {
  RdmOptions ro;
  for (const auto& w : windows)
    ro.max_region = std::max(ro.max_region, std::min(10, static_cast<int>(w.size())));
  auto rdms = learn_reduced_density_matrices(ds, windows, ro);
  if (!exactify) {
    for (auto& r : rdms) r.matrix = project_psd(r.matrix);
    return rdms;
  }
  for (auto& r : rdms) {
    auto snapped = exactify_stabilizer_rdm(r);
    if (!snapped) throw LearningFailure("RDM exactification failed");
    r = *snapped;
  }
  return rdms;
}

template <typename Result, typename Fn>
Result with_retries(const StateSource& src, const StateLearningOptions& opt, Fn fn) {
  std::string last;
  for (int a = 0; a <= opt.retries; ++a) {
    const std::size_t N = opt.samples << a;
    try {
      Result r = fn(src.sample(N, opt.seed + static_cast<std::uint64_t>(a)));
      r.samples = N;
      r.attempts = a + 1;
      return r;
    } catch (const LearningFailure& e) {
      last = e.what();
    }
  }
  throw LearningFailure("state learning failed after " + std::to_string(opt.retries + 1) +
                        " attempts: " + last);
}

}  // namespace

int SlotLayout::slot_count() const {
  int c = 0;
  for (const auto& l : layers) c += static_cast<int>(l.size());
  return c;
}

int SlotLayout::slot_layer(int slot) const {
  for (int t = 0; t < depth(); ++t) {
    const int sz = static_cast<int>(layers[t].size());
    if (slot < sz) return t;
    slot -= sz;
  }
  throw Error("slot id out of range");
}

Edge SlotLayout::slot_edge(int slot) const {
  for (int t = 0; t < depth(); ++t) {
    const int sz = static_cast<int>(layers[t].size());
    if (slot < sz) return layers[t][slot];
    slot -= sz;
  }
  throw Error("slot id out of range");
}

const Mat4& SlotLayout::gate(int slot, int choice) const {
  return alphabets.at(alphabet.at(slot_layer(slot))).at(choice);
}

std::vector<int> SlotLayout::cone_slots(const QubitSet& seeds, QubitSet* qubits) const {
  auto in = membership(n, seeds);
  std::vector<int> offset(depth() + 1, 0);
  for (int t = 0; t < depth(); ++t)
    offset[t + 1] = offset[t] + static_cast<int>(layers[t].size());
  std::vector<int> out;
  for (int t = depth() - 1; t >= 0; --t) {
    for (std::size_t e = 0; e < layers[t].size(); ++e) {
      auto [a, b] = layers[t][e];
      if (in[a] || in[b]) {
        out.push_back(offset[t] + static_cast<int>(e));
        in[a] = in[b] = 1;
      }
    }
  }
  std::sort(out.begin(), out.end());
  if (qubits) {
    qubits->clear();
    for (int q = 0; q < n; ++q)
      if (in[q]) qubits->push_back(q);
  }
  return out;
}

Circuit SlotLayout::circuit(const std::vector<int>& slots, const std::vector<int>& choices) const {
  if (slots.size() != choices.size()) throw Error("slot/choice size mismatch");
  Circuit c(n);
  c.layers.resize(depth());
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (choices[i] < 0) continue;
    auto [a, b] = slot_edge(slots[i]);
    c.layers[slot_layer(slots[i])].gates.push_back(Gate{a, b, gate(slots[i], choices[i]), -1});
  }
  return c;
}

SlotLayout inversion_layout(const GeometryGraph& g, int d, const std::vector<Mat4>& gateset) {
  if (d < 1) throw Error("depth must be positive");
  const auto classes = brickwork_classes(g);
  SlotLayout l;
  l.n = g.vertex_count();
  l.alphabets = {daggered(gateset)};
  for (int t = 0; t < d; ++t) {
    l.layers.push_back(classes.empty() ? std::vector<Edge>{}
                                       : classes[(d - 1 - t) % classes.size()]);
    l.alphabet.push_back(0);
  }
  return l;
}

SlotLayout patch_layout(const GeometryGraph& g, int d, const std::vector<Mat4>& gateset,
                        const QubitSet& vertices) {
  if (d < 1) throw Error("depth must be positive");
  const auto classes = brickwork_classes(g);
  const auto in = membership(g.vertex_count(), vertices);
  auto restricted = [&](int cls) {
    std::vector<Edge> out;
    if (classes.empty()) return out;
    for (auto [a, b] : classes[cls % classes.size()])
      if (in[a] && in[b]) out.push_back({a, b});
    return out;
  };
  SlotLayout l;
  l.n = g.vertex_count();
  l.alphabets = {gateset, daggered(gateset)};
  for (int t = 0; t < d; ++t) {
    l.layers.push_back(restricted(t));
    l.alphabet.push_back(0);
  }
  for (int t = 0; t < d; ++t) {
    l.layers.push_back(restricted(d - 1 - t));
    l.alphabet.push_back(1);
  }
  return l;
}

RdmProvider window_rdm_provider(std::vector<DenseOperator> windows) {
  return [windows = std::move(windows)](const QubitSet& request) -> Mat {
    const DenseOperator* best = nullptr;
    for (const auto& w : windows) {
      const bool covers = std::all_of(request.begin(), request.end(),
                                      [&](int q) { return contains(w.support, q); });
      if (covers && (!best || w.size() < best->size())) best = &w;
    }
    if (!best) throw Error("no learned window contains the requested qubits");
    return partial_trace(best->matrix, best->support, request);
  };
}

CandidateList enumerate_local_inversions(const RdmProvider& rdm, const SlotLayout& layout,
                                         const QubitSet& region, double fid,
                                         const EnumerationLimits& lim) {
  CandidateList out;
  out.region = normalized(region);
  if (out.region.empty()) throw Error("empty region");
  out.slots = layout.cone_slots(out.region, &out.footprint);

  const std::size_t m = out.region.size();
  std::vector<std::vector<int>> cones(m);
  std::vector<QubitSet> cone_qubits(m);
  std::vector<Mat> rhos(m);
  for (std::size_t t = 0; t < m; ++t) {
    cones[t] = layout.cone_slots({out.region[t]}, &cone_qubits[t]);
    rhos[t] = rdm(cone_qubits[t]);
  }
  const double budget = 1.0 - fid + 1e-12;
  if (budget < 0) return out;

  auto check = [&](std::size_t step, const std::vector<int>& assign,
                   double acc) -> std::optional<double> {
    const QubitSet& qs = cone_qubits[step];
    const int k = static_cast<int>(qs.size());
    Mat o = embed(pauli_word_matrix("Z"), {out.region[step]}, qs);
    // V^dag Z V: undo layers from last to first.
    for (auto it = cones[step].rbegin(); it != cones[step].rend(); ++it) {
      const int c = assign[*it];
      if (c < 0) continue;
      auto [a, b] = layout.slot_edge(*it);
      conjugate_inplace(o, k, index_in(qs, a), index_in(qs, b),
                        layout.gate(*it, c).adjoint());
    }
    const double p = 0.5 * (1.0 + (rhos[step] * o).trace().real());
    const double next = acc + std::max(0.0, 1.0 - p);
    if (next > budget) return std::nullopt;
    return next;
  };
  SlotSearch search(layout, incremental_steps(layout, cones), check, lim);
  search.run([&](const std::vector<int>& assign, double acc) {
    std::vector<int> ch;
    for (int s : out.slots) ch.push_back(assign[s]);
    out.choices.push_back(std::move(ch));
    out.scores.push_back(std::clamp(1.0 - acc, 0.0, 1.0));
  });
  finish_list(out, layout);
  return out;
}

CandidateList enumerate_local_inversions(const DenseOperator& rdm, const SlotLayout& layout,
                                         const QubitSet& region, double fid,
                                         const EnumerationLimits& lim) {
  return enumerate_local_inversions(window_rdm_provider({rdm}), layout, region, fid, lim);
}

CandidateList enumerate_local_preparations(const DenseOperator& target, const SlotLayout& layout,
                                           double tol, const EnumerationLimits& lim) {
  CandidateList out;
  out.region = normalized(target.support);
  if (out.region != target.support) throw Error("target support must be ascending");
  out.slots = layout.cone_slots(out.region, &out.footprint);
  check_dense_cap(static_cast<int>(out.footprint.size()), "local preparation search");

  const std::size_t m = out.region.size();
  std::vector<std::vector<int>> cones(m);
  std::vector<QubitSet> cone_qubits(m);
  std::vector<Mat> partial(m);
  for (std::size_t t = 0; t < m; ++t) {
    const QubitSet prefix(out.region.begin(), out.region.begin() + t + 1);
    cones[t] = layout.cone_slots(prefix, &cone_qubits[t]);
    partial[t] = partial_trace(target.matrix, target.support, prefix);
  }
  auto check = [&](std::size_t step, const std::vector<int>& assign,
                   double acc) -> std::optional<double> {
    const QubitSet& qs = cone_qubits[step];
    const int k = static_cast<int>(qs.size());
    Vec amps = Vec::Zero(Eigen::Index{1} << k);
    amps(0) = 1.0;
    for (int s : cones[step]) {  // ascending slot ids are time-ordered
      const int c = assign[s];
      if (c < 0) continue;
      auto [a, b] = layout.slot_edge(s);
      apply_gate_inplace(amps, k, index_in(qs, a), index_in(qs, b), layout.gate(s, c));
    }
    QubitSet keep;
    for (std::size_t t = 0; t <= step; ++t) keep.push_back(index_in(qs, out.region[t]));
    const double dev = max_abs(reduced_density(amps, k, keep) - partial[step]);
    if (dev > tol) return std::nullopt;
    return std::max(acc, dev);
  };
  SlotSearch search(layout, incremental_steps(layout, cones), check, lim);
  search.run([&](const std::vector<int>& assign, double acc) {
    std::vector<int> ch;
    for (int s : out.slots) ch.push_back(assign[s]);
    out.choices.push_back(std::move(ch));
    out.scores.push_back(std::clamp(1.0 - acc, 0.0, 1.0));
  });
  finish_list(out, layout);
  return out;
}

bool slot_consistent(const CandidateList& a, std::size_t i, const CandidateList& b,
                     std::size_t j) {
  std::size_t x = 0, y = 0;
  while (x < a.slots.size() && y < b.slots.size()) {
    if (a.slots[x] < b.slots[y]) {
      ++x;
    } else if (a.slots[x] > b.slots[y]) {
      ++y;
    } else {
      if (a.choices[i][x] != b.choices[j][y]) return false;
      ++x, ++y;
    }
  }
  return true;
}

ChainAssignment solve_chain_csp(const std::vector<CandidateList>& lists,
                                const ConsistencyPredicate& consistent) {
  if (lists.empty()) throw Error("chain has no regions");
  constexpr double kInf = std::numeric_limits<double>::infinity();
  ChainAssignment out;
  std::vector<std::vector<double>> cost(lists.size());
  std::vector<std::vector<std::size_t>> prev(lists.size());
  for (std::size_t i = 0; i < lists.size(); ++i) {
    const auto& li = lists[i];
    cost[i].assign(li.size(), kInf);
    prev[i].assign(li.size(), 0);
    bool any = false;
    for (std::size_t j = 0; j < li.size(); ++j) {
      const double own = 1.0 - li.scores[j];
      if (i == 0) {
        cost[i][j] = own;
      } else {
        for (std::size_t k = 0; k < lists[i - 1].size(); ++k) {
          if (cost[i - 1][k] == kInf || cost[i - 1][k] + own >= cost[i][j]) continue;
          if (!consistent(lists[i - 1], k, li, j)) continue;
          cost[i][j] = cost[i - 1][k] + own;
          prev[i][j] = k;
        }
      }
      any = any || cost[i][j] < kInf;
    }
    if (!any) {
      out.blocking_position = i + 1;
      return out;
    }
  }
  const auto& last = cost.back();
  std::size_t best = 0;
  for (std::size_t j = 1; j < last.size(); ++j)
    if (last[j] < last[best]) best = j;
  out.chosen.assign(lists.size(), 0);
  for (std::size_t i = lists.size(); i-- > 0;) {
    out.chosen[i] = best;
    if (i > 0) best = prev[i][best];
  }
  for (std::size_t i = 0; i < lists.size(); ++i)
    out.parts.push_back(lists[i].circuits.at(out.chosen[i]));
  out.satisfiable = true;
  out.merged = merge_assignment(out);
  return out;
}

Circuit merge_assignment(const ChainAssignment& assignment) {
  if (!assignment.satisfiable) throw Error("cannot merge an unsatisfiable assignment");
  int n = 0, depth = 0;
  for (const Circuit& p : assignment.parts) {
    n = std::max(n, p.n);
    depth = std::max(depth, p.depth());
  }
  Circuit out(n);
  out.layers.resize(depth);
  for (int t = 0; t < depth; ++t) {
    std::map<int, Gate> by_qubit;
    for (const Circuit& p : assignment.parts) {
      if (t >= p.depth()) continue;
      for (const Gate& g : p.layers[t].gates) {
        auto it = by_qubit.find(g.a);
        if (it == by_qubit.end()) {
          if (by_qubit.count(g.b)) throw Error("merge: gates collide on a qubit");
          by_qubit[g.a] = g;
          by_qubit[g.b] = g;
          continue;
        }
        const Gate& h = it->second;
        if (h.a != g.a || h.b != g.b || max_abs(h.u - g.u) > 1e-9)
          throw Error("merge: inconsistent gates on overlapping footprint");
      }
    }
    for (const auto& [q, g] : by_qubit)
      if (q == g.a) out.layers[t].gates.push_back(g);
  }
  return out;
}

double zero_return_probability(const Circuit& c, const QubitSet& qubits) {
  const auto check = membership(c.n, qubits);
  double p = 1.0;
  for (const QubitSet& comp : gate_components(c)) {
    QubitSet local_check;
    for (std::size_t t = 0; t < comp.size(); ++t)
      if (check[comp[t]]) local_check.push_back(static_cast<int>(t));
    if (local_check.empty()) continue;
    const Circuit local = restrict_to(c, comp);
    check_dense_cap(local.n, "zero-return probability");
    Vec amps = Vec::Zero(Eigen::Index{1} << local.n);
    amps(0) = 1.0;
    apply_circuit_inplace(amps, local);
    std::size_t mask = 0;
    for (int q : local_check) mask |= std::size_t{1} << (local.n - 1 - q);
    double s = 0;
    for (Eigen::Index i = 0; i < amps.size(); ++i)
      if ((static_cast<std::size_t>(i) & mask) == 0) s += std::norm(amps(i));
    p *= s;
  }
  return p;
}

double preparation_fidelity(const Circuit& prep, const Circuit& target) {
  if (target.n > prep.n) throw Error("target register larger than preparation register");
  std::vector<int> map(target.n);
  std::iota(map.begin(), map.end(), 0);
  Circuit c = prep;
  c.geometry.reset();
  Circuit inv = target.dagger().relabeled(map, prep.n);
  inv.geometry.reset();
  c.append(inv);
  return zero_return_probability(c, map);
}

StateSource circuit_state_source(const Circuit& c, int jobs) {
  StateSource src;
  src.n = c.n;
  src.sample = [c, jobs](std::size_t N, std::uint64_t seed) {
    return sample_state_dataset(c, N, seed, jobs);
  };
  return src;
}

Learned1DState learn_1d_state(const MeasurementDataset& ds, const GeometryGraph& g,
                              const StateLearningOptions& opt) {
  if (g.kind() != "line") throw Error("1D state learning needs a line geometry");
  if (ds.n != g.vertex_count()) throw Error("dataset and geometry sizes differ");
  const int d = opt.depth;
  const SlotLayout layout = inversion_layout(g, d, gates::gateset(opt.gateset));
  const int size = opt.region_size > 0 ? opt.region_size : 3 * d;

  std::vector<QubitSet> windows;
  for (int q = 0; q < g.vertex_count(); ++q) windows.push_back(lightcone(g, {q}, d));
  const RdmProvider rdm = window_rdm_provider(learn_windows(ds, windows, opt.exactify));

  Learned1DState out;
  for (int s = 0; s < g.vertex_count(); s += size) {
    QubitSet r;
    for (int q = s; q < std::min(s + size, g.vertex_count()); ++q) r.push_back(q);
    out.regions.push_back(r);
  }
  std::vector<CandidateList> lists(out.regions.size());
  parallel_for(lists.size(), opt.jobs, [&](std::size_t i) {
    lists[i] = enumerate_local_inversions(rdm, layout, out.regions[i], opt.fid, opt.limits);
  });
  for (std::size_t i = 0; i < lists.size(); ++i) {
    out.candidate_counts.push_back(lists[i].size());
    if (lists[i].size() == 0)
      throw LearningFailure("no local inversion for region " + std::to_string(i + 1));
  }
  out.assignment = solve_chain_csp(lists);
  if (!out.assignment.satisfiable)
    throw LearningFailure("chain unsatisfiable at region " +
                          std::to_string(out.assignment.blocking_position));
  out.v = out.assignment.merged;
  out.score = 1.0;
  for (std::size_t i = 0; i < lists.size(); ++i)
    out.score -= 1.0 - lists[i].scores[out.assignment.chosen[i]];
  return out;
}

Learned1DState learn_1d_state(const StateSource& src, const GeometryGraph& g,
                              const StateLearningOptions& opt) {
  return with_retries<Learned1DState>(
      src, opt, [&](const MeasurementDataset& ds) { return learn_1d_state(ds, g, opt); });
}

StripLayout strip_layout(const GeometryGraph& lattice, int w_a, int w_b) {
  if (lattice.kind() != "lattice" || lattice.dims().size() != 2)
    throw Error("strip layout needs a 2D lattice");
  if (w_a < 1 || w_b < 1) throw Error("strip widths must be positive");
  const int rows = lattice.dims()[0], cols = lattice.dims()[1];
  StripLayout out;
  auto band = [&](int c0, int c1) {
    std::vector<int> cs;
    QubitSet qs;
    for (int c = c0; c < c1; ++c) {
      cs.push_back(c);
      for (int r = 0; r < rows; ++r) qs.push_back(lattice.vertex_at({r, c}));
    }
    return std::make_pair(cs, normalized(qs));
  };
  int pos = 0;
  while (pos < cols) {
    int end = std::min(cols, pos + w_a);
    const bool more = cols - end >= w_b + w_a;
    if (!more) end = cols;
    auto [ac, aq] = band(pos, end);
    out.patch_columns.push_back(ac);
    out.patches.push_back(aq);
    pos = end;
    if (!more) break;
    auto [bc, bq] = band(pos, pos + w_b);
    out.strip_columns.push_back(bc);
    out.strips.push_back(bq);
    pos += w_b;
  }
  return out;
}

Disentangled2D disentangle_2d(const RdmProvider& rdm, const GeometryGraph& lattice,
                              const StripLayout& layout, const StateLearningOptions& opt) {
  const int d = opt.depth;
  const SlotLayout slots = inversion_layout(lattice, d, gates::gateset(opt.gateset));
  const int height = opt.region_size > 0 ? opt.region_size : 3 * d;
  Disentangled2D out;
  out.layout = layout;
  out.diagnostic = 1.0;
  out.strips.resize(layout.strips.size());
  std::vector<double> deficits(layout.strips.size(), 0.0);
  parallel_for(layout.strips.size(), opt.jobs, [&](std::size_t s) {
    std::vector<CandidateList> lists;
    for (const QubitSet& r : row_bands(lattice, layout.strips[s], height)) {
      lists.push_back(enumerate_local_inversions(rdm, slots, r, opt.fid, opt.limits));
      if (lists.back().size() == 0)
        throw LearningFailure("no local inversion in strip " + std::to_string(s + 1));
    }
    out.strips[s] = solve_chain_csp(lists);
    if (!out.strips[s].satisfiable)
      throw LearningFailure("strip " + std::to_string(s + 1) + " unsatisfiable at region " +
                            std::to_string(out.strips[s].blocking_position));
    auto& a = out.strips[s];
    for (std::size_t i = 0; i < lists.size(); ++i) deficits[s] += 1.0 - lists[i].scores[a.chosen[i]];
  });
  ChainAssignment all;
  all.satisfiable = true;
  for (std::size_t s = 0; s < out.strips.size(); ++s) {
    all.parts.insert(all.parts.end(), out.strips[s].parts.begin(), out.strips[s].parts.end());
    out.diagnostic -= deficits[s];
  }
  if (all.parts.empty()) {
    out.v = Circuit(lattice.vertex_count());
    out.v.layers.resize(d);
  } else {
    out.v = merge_assignment(all);
  }
  out.v.geometry = lattice;
  out.v.validate();
  return out;
}

QubitSet patch_ancilla_positions(const GeometryGraph& lattice, const QubitSet& patch, int d) {
  const auto dist = lattice.distances_from(patch);
  QubitSet out;
  for (int q = 0; q < lattice.vertex_count(); ++q)
    if (dist[q] >= 1 && dist[q] <= 2 * d) out.push_back(q);
  return out;
}

std::vector<QubitSet> patch_windows(const GeometryGraph& lattice, const QubitSet& patch,
                                    int height, int overlap) {
  if (height < 1 || overlap < 0 || overlap >= height) throw Error("bad window shape");
  std::map<int, QubitSet> by_row;
  for (int q : patch) by_row[lattice.coords(q)[0]].push_back(q);
  std::vector<int> rows;
  for (const auto& [r, qs] : by_row) rows.push_back(r);
  std::vector<QubitSet> out;
  const int R = static_cast<int>(rows.size());
  for (int s = 0;; s += height - overlap) {
    QubitSet w;
    for (int t = s; t < std::min(R, s + height); ++t)
      w.insert(w.end(), by_row[rows[t]].begin(), by_row[rows[t]].end());
    out.push_back(normalized(w));
    if (s + height >= R) break;
  }
  return out;
}

PatchCircuit learn_patch_circuit(const std::vector<DenseOperator>& targets,
                                 const GeometryGraph& lattice, const QubitSet& patch, int d,
                                 const std::vector<Mat4>& gateset, const PatchOptions& opt) {
  if (targets.empty()) throw Error("patch has no windows");
  PatchCircuit out;
  out.system = normalized(patch);
  out.ancilla = patch_ancilla_positions(lattice, out.system, d);
  const SlotLayout layout =
      patch_layout(lattice, d, gateset, set_union(out.system, out.ancilla));
  std::vector<CandidateList> lists;
  for (const auto& t : targets) {
    for (int q : t.support)
      if (!contains(out.system, q)) throw Error("window leaves the patch");
    lists.push_back(enumerate_local_preparations(t, layout, opt.tol, opt.limits));
    if (lists.back().size() == 0) throw LearningFailure("no local preparation for a window");
  }
  const ChainAssignment a = solve_chain_csp(lists);
  if (!a.satisfiable)
    throw LearningFailure("patch windows unsatisfiable at window " +
                          std::to_string(a.blocking_position));
  out.w = a.merged;
  return out;
}

DenseOperator disentangled_rdm(const RdmProvider& rdm, const Circuit& v, const QubitSet& window) {
  auto in = membership(v.n, window);
  std::vector<std::pair<int, const Gate*>> cone;
  for (int t = v.depth() - 1; t >= 0; --t)
    for (const Gate& g : v.layers[t].gates)
      if (in[g.a] || in[g.b]) {
        cone.push_back({t, &g});
        in[g.a] = in[g.b] = 1;
      }
  QubitSet qs;
  for (int q = 0; q < v.n; ++q)
    if (in[q]) qs.push_back(q);
  Mat rho = rdm(qs);
  const int k = static_cast<int>(qs.size());
  for (auto it = cone.rbegin(); it != cone.rend(); ++it)
    conjugate_inplace(rho, k, index_in(qs, it->second->a), index_in(qs, it->second->b),
                      it->second->u);
  DenseOperator out(window, partial_trace(rho, qs, window));
  out.hermitian = true;
  return out;
}

Circuit assemble_state_preparation(const Circuit& v, const std::vector<PatchCircuit>& patches) {
  const int n = v.n;
  std::vector<char> used(n, 0);
  int total = n;
  int depth = 0;
  for (const auto& p : patches) {
    for (int q : p.system) {
      if (q < 0 || q >= n) throw Error("patch qubit out of range");
      if (used[q]) throw Error("patch supports collide");
      used[q] = 1;
    }
    total += static_cast<int>(p.ancilla.size());
    depth = std::max(depth, p.w.depth());
  }
  Circuit out(total);
  out.layers.resize(depth);
  int offset = n;
  for (const auto& p : patches) {
    std::vector<int> map(p.w.n, -1);
    for (int q : p.system) map[q] = q;
    for (std::size_t t = 0; t < p.ancilla.size(); ++t)
      map[p.ancilla[t]] = offset + static_cast<int>(t);
    offset += static_cast<int>(p.ancilla.size());
    for (int t = 0; t < p.w.depth(); ++t)
      for (const Gate& g : p.w.layers[t].gates) {
        if (map[g.a] < 0 || map[g.b] < 0) throw Error("patch gate outside its patch");
        out.layers[t].gates.push_back(Gate{map[g.a], map[g.b], g.u, g.tag});
      }
  }
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  Circuit inv = v.dagger().relabeled(id, total);
  inv.geometry.reset();
  out.append(inv);
  out.validate();
  return out;
}

Learned2DState learn_2d_state(const StateSource& src, const GeometryGraph& lattice,
                              const StateLearningOptions& opt, int w_b, int w_a,
                              const PatchOptions& popt) {
  const int d = opt.depth;
  if (w_b <= 0) w_b = 5 * d;
  if (w_a <= 0) w_a = 5 * d;
  if (w_b < 2 * d + 1) throw Error("strip width must be at least 2d+1");
  if (w_a < 2 * d) throw Error("patch width must be at least 2d");
  const StripLayout layout = strip_layout(lattice, w_a, w_b);
  const auto gateset = gates::gateset(opt.gateset);
  const int height = popt.window_height > 0 ? popt.window_height : 16 * d;
  const int overlap = popt.window_overlap > 0 ? popt.window_overlap : 4 * d;
  const int rows = lattice.dims()[0];

  auto attempt = [&](const MeasurementDataset& ds) {
    Learned2DState out;
    out.strip_width = w_b;
    out.patch_width = w_a;
    std::vector<QubitSet> windows;
    for (const auto& s : layout.strips)
      for (int q : s) windows.push_back(lightcone(lattice, {q}, d));
    const RdmProvider strip_rdm = window_rdm_provider(learn_windows(ds, windows, opt.exactify));
    out.disentangled = disentangle_2d(strip_rdm, lattice, layout, opt);

    // Patch windows of V|psi>, each read from the RDM of psi on the
    // window plus V's backward lightcone.
    std::vector<std::vector<QubitSet>> patch_win(layout.patches.size());
    std::vector<QubitSet> psi_windows;
    const Circuit& v = out.disentangled.v;
    for (std::size_t i = 0; i < layout.patches.size(); ++i) {
      patch_win[i] = patch_windows(lattice, layout.patches[i], std::min(height, rows),
                                   std::min(overlap, std::max(0, std::min(height, rows) - 1)));
      for (const QubitSet& w : patch_win[i]) {
        auto in = membership(v.n, w);
        for (int t = v.depth() - 1; t >= 0; --t)
          for (const Gate& g : v.layers[t].gates)
            if (in[g.a] || in[g.b]) in[g.a] = in[g.b] = 1;
        QubitSet qs;
        for (int q = 0; q < v.n; ++q)
          if (in[q]) qs.push_back(q);
        psi_windows.push_back(qs);
      }
    }
    const RdmProvider patch_rdm =
        window_rdm_provider(learn_windows(ds, psi_windows, opt.exactify));
    out.patches.resize(layout.patches.size());
    out.patch_lambda_max.assign(layout.patches.size(), 1.0);
    parallel_for(layout.patches.size(), opt.jobs, [&](std::size_t i) {
      std::vector<DenseOperator> targets;
      for (const QubitSet& w : patch_win[i]) {
        targets.push_back(disentangled_rdm(patch_rdm, v, w));
        Eigen::SelfAdjointEigenSolver<Mat> es(targets.back().matrix, Eigen::EigenvaluesOnly);
        out.patch_lambda_max[i] = std::min(out.patch_lambda_max[i], es.eigenvalues().maxCoeff());
      }
      out.patches[i] = learn_patch_circuit(targets, lattice, layout.patches[i], d, gateset, popt);
    });
    out.prep = assemble_state_preparation(v, out.patches);
    return out;
  };
  return with_retries<Learned2DState>(src, opt, attempt);
}

std::vector<QubitSet> chain_blocks(const QubitSet& region, int block) {
  if (block < 1) throw Error("block length must be positive");
  std::vector<QubitSet> out;
  for (std::size_t s = 0; s < region.size(); s += block)
    out.emplace_back(region.begin() + s,
                     region.begin() + std::min(region.size(), s + block));
  if (out.size() % 2 == 0) {
    out[out.size() - 2].insert(out[out.size() - 2].end(), out.back().begin(), out.back().end());
    out.pop_back();
  }
  return out;
}

std::vector<QubitSet> no_ancilla_windows(const QubitSet& region, int d,
                                         const NoAncillaOptions& opt) {
  const auto blocks = chain_blocks(region, opt.block > 0 ? opt.block : 2 * d);
  std::vector<QubitSet> out;
  if (blocks.size() == 1) return {normalized(blocks[0])};
  // A B A triples, then B A B triples.
  for (std::size_t first : {std::size_t{0}, std::size_t{1}})
    for (std::size_t b = first; b + 2 < blocks.size(); b += 2) {
      QubitSet w = blocks[b];
      w.insert(w.end(), blocks[b + 1].begin(), blocks[b + 1].end());
      w.insert(w.end(), blocks[b + 2].begin(), blocks[b + 2].end());
      out.push_back(normalized(w));
    }
  return out;
}

double correlation_defect(const RdmProvider& rdm, const QubitSet& a, const QubitSet& b) {
  QubitSet ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  const Mat rho = rdm(ab);
  const Mat prod = kron(partial_trace(rho, ab, a), partial_trace(rho, ab, b));
  return trace_norm_hermitian(rho - prod);
}

Learned1DNoAncilla learn_1d_state_no_ancilla(const RdmProvider& rdm, const QubitSet& region,
                                             int d, const std::vector<Mat4>& gateset,
                                             const NoAncillaOptions& opt) {
  if (region.empty()) throw Error("empty region");
  const int n = *std::max_element(region.begin(), region.end()) + 1;
  Learned1DNoAncilla out;
  out.blocks = chain_blocks(region, opt.block > 0 ? opt.block : 2 * d);
  const auto& blocks = out.blocks;
  const std::size_t L = (blocks.size() + 1) / 2;  // A blocks

  for (std::size_t b = 1; b + 1 < blocks.size(); b += 2)
    if (correlation_defect(rdm, blocks[b - 1], blocks[b + 1]) > 1e-6)
      throw LearningFailure("correlation length check failed around block " +
                            std::to_string(b + 1));

  // Disentangler U_B and split for each B block: product across the cut
  // (A B^L | B^R C), ties broken by the larger product of purities.
  struct Split {
    Mat u;  // on the B block, chain order
    Circuit c;
    std::size_t m = 0;
  };
  std::vector<Split> splits(L - 1);
  for (std::size_t i = 0; i + 1 < L; ++i) {
    const QubitSet& A = blocks[2 * i];
    const QubitSet& B = blocks[2 * i + 1];
    const QubitSet& C = blocks[2 * i + 2];
    QubitSet abc = A;
    abc.insert(abc.end(), B.begin(), B.end());
    abc.insert(abc.end(), C.begin(), C.end());
    const Mat rho = rdm(abc);
    const int k = static_cast<int>(abc.size());
    const int nb = static_cast<int>(B.size());

    SlotLayout net;
    net.n = n;
    net.alphabets = {gateset};
    for (int t = 0; t < opt.net_depth; ++t) {
      std::vector<Edge> es;
      for (int j = t % 2; j + 1 < nb; j += 2) es.push_back({B[j], B[j + 1]});
      net.layers.push_back(es);
      net.alphabet.push_back(0);
    }
    std::vector<int> all(net.slot_count());
    std::iota(all.begin(), all.end(), 0);
    std::vector<int> choice(all.size(), -1);
    double best_defect = std::numeric_limits<double>::infinity(), best_purity = -1;
    bool found = false;
    while (true) {
      Mat sigma = rho;
      // sigma = U^dag rho U with U the net circuit.
      for (std::size_t s = all.size(); s-- > 0;) {
        if (choice[s] < 0) continue;
        auto [a, b] = net.slot_edge(all[s]);
        conjugate_inplace(sigma, k, index_in(abc, a), index_in(abc, b),
                          net.gate(all[s], choice[s]).adjoint());
      }
      for (int m = 0; m <= nb; ++m) {
        QubitSet x(abc.begin(), abc.begin() + A.size() + m);
        QubitSet y(abc.begin() + A.size() + m, abc.end());
        const Mat sx = partial_trace(sigma, abc, x);
        const Mat sy = y.empty() ? Mat::Ones(1, 1) : partial_trace(sigma, abc, y);
        const double defect = (sigma - kron(sx, sy)).norm();
        const double purity = (sx * sx).trace().real() * (sy * sy).trace().real();
        const bool product = defect <= opt.tol;
        const bool better = product ? (!found || best_defect > opt.tol ||
                                       purity > best_purity + 1e-12)
                                    : (!found || defect < best_defect);
        if (better && (product || best_defect > opt.tol)) {
          found = true;
          best_defect = defect;
          best_purity = purity;
          splits[i].c = net.circuit(all, choice);
          splits[i].m = static_cast<std::size_t>(m);
        }
      }
      std::size_t t = 0;
      for (; t < choice.size(); ++t) {
        if (choice[t] + 1 < static_cast<int>(gateset.size())) {
          ++choice[t];
          break;
        }
        choice[t] = -1;
      }
      if (t == choice.size()) break;
    }
    out.product_defects.push_back(best_defect);
    if (best_defect > opt.tol)
      throw LearningFailure("no disentangler found for block " + std::to_string(2 * i + 2));
  }

  // Regions R_i = B_{i-1}^R A_i B_i^L hold pure states after the
  // disentanglers are undone.
  Circuit prep_states(n), disentanglers(n);
  std::vector<Circuit> region_preps;
  out.fidelity_estimate = 1.0;
  int prep_depth = 0;
  for (std::size_t i = 0; i < L; ++i) {
    QubitSet window, r;
    Circuit undo(n);
    if (i > 0) {
      const QubitSet& B = blocks[2 * i - 1];
      window.insert(window.end(), B.begin(), B.end());
      r.insert(r.end(), B.begin() + splits[i - 1].m, B.end());
      undo.append(splits[i - 1].c.dagger());
    }
    const QubitSet& A = blocks[2 * i];
    window.insert(window.end(), A.begin(), A.end());
    r.insert(r.end(), A.begin(), A.end());
    if (i + 1 < L) {
      const QubitSet& B = blocks[2 * i + 1];
      window.insert(window.end(), B.begin(), B.end());
      r.insert(r.end(), B.begin(), B.begin() + splits[i].m);
      Circuit u = splits[i].c.dagger();
      // Run alongside the left disentangler: both start at time zero.
      if (undo.depth() < u.depth()) undo.layers.resize(u.depth());
      for (int t = 0; t < u.depth(); ++t)
        for (const Gate& g : u.layers[t].gates) undo.layers[t].gates.push_back(g);
    }
    Mat sigma = rdm(window);
    const int k = static_cast<int>(window.size());
    for (const Layer& l : undo.layers)
      for (const Gate& g : l.gates)
        conjugate_inplace(sigma, k, index_in(window, g.a), index_in(window, g.b), g.u);
    const QubitSet rs = normalized(r);
    const Mat sr = partial_trace(sigma, window, rs);
    Eigen::SelfAdjointEigenSolver<Mat> es(sr);
    const Eigen::Index top_i = es.eigenvalues().size() - 1;
    const double top = es.eigenvalues()(top_i);
    out.fidelity_estimate *= top;
    if (top < 1.0 - 1e-6)
      throw LearningFailure("region " + std::to_string(i + 1) + " is not pure");
    // Any unitary whose first column is the top eigenvector.
    Mat basis = Mat::Identity(sr.rows(), sr.rows());
    basis.col(0) = es.eigenvectors().col(top_i);
    const Mat q = Eigen::HouseholderQR<Mat>(basis).householderQ();
    const Circuit pc = synthesize_unitary(DenseOperator(rs, q), nullptr, opt.k_max, n);
    prep_depth = std::max(prep_depth, pc.depth());
    region_preps.push_back(pc);
  }
  prep_states.layers.resize(prep_depth);
  for (const Circuit& pc : region_preps)
    for (int t = 0; t < pc.depth(); ++t)
      for (const Gate& g : pc.layers[t].gates) prep_states.layers[t].gates.push_back(g);
  disentanglers.layers.resize(opt.net_depth);
  for (const Split& s : splits)
    for (int t = 0; t < s.c.depth(); ++t)
      for (const Gate& g : s.c.layers[t].gates) disentanglers.layers[t].gates.push_back(g);
  out.prep = prep_states;
  out.prep.append(disentanglers);
  out.prep = out.prep.compacted();
  return out;
}

ErrorBudget error_budget(double eps, double delta, int n, int L, double eps0) {
  if (eps < 0 || delta < 0 || n < 0 || L < 0 || eps0 < 0)
    throw Error("error budget arguments must be nonnegative");
  ErrorBudget b;
  b.local_consistency = 13.0 * n * std::pow(eps, 1.0 / 16) + 4.0 * n * std::pow(delta, 0.25);
  b.approx_disentangle = std::sqrt(2 * eps + L * delta);
  b.final_bound = 6.0 * std::pow(n, 25.0 / 32) * std::pow(eps0, 1.0 / 32);
  b.required_eps0 = n == 0 ? 0.0 : std::pow(eps / (6.0 * std::pow(n, 25.0 / 32)), 32.0);
  return b;
}

nlohmann::json error_budget_to_json(const ErrorBudget& b) {
  return {{"local_consistency", b.local_consistency},
          {"approx_disentangle", b.approx_disentangle},
          {"final_bound", b.final_bound},
          {"required_eps0", b.required_eps0}};
}

}  // namespace scl
