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


#include "scl/unitary_learning.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "scl/coloring.hpp"
#include "scl/epsnet.hpp"
#include "scl/gates.hpp"
#include "scl/observable_learning.hpp"
#include "scl/sewing.hpp"

namespace scl {
namespace {

constexpr std::array<char, 3> kLetters = {'X', 'Y', 'Z'};

QubitSet circuit_support(const Circuit& c, QubitSet base) {
  for (const auto& l : c.layers)
    for (const auto& g : l.gates) base = set_union(base, {g.a, g.b});
  return base;
}

std::vector<int> lattice_dims(const GeometryGraph& g) {
  if (g.kind() == "line") return {g.vertex_count()};
  if (g.kind() == "lattice") return g.dims();
  throw Error("lattice-optimized learning needs a line or lattice geometry");
}

}  // namespace

std::string strategy_name(UnitaryStrategy s) {
  switch (s) {
    case UnitaryStrategy::General: return "general";
    case UnitaryStrategy::Geo: return "geo";
    case UnitaryStrategy::LatticeOptimized: return "lattice-optimized";
  }
  return "";
}

UnitaryStrategy strategy_from_name(const std::string& name) {
  if (name == "general") return UnitaryStrategy::General;
  if (name == "geo") return UnitaryStrategy::Geo;
  if (name == "lattice-optimized") return UnitaryStrategy::LatticeOptimized;
  throw Error("unknown strategy '" + name + "'");
}

DenseOperator clip_to_unit_ball(const DenseOperator& o) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (o.matrix + o.matrix.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues().cwiseMax(-1.0).cwiseMin(1.0);
  DenseOperator out(o.support,
                    es.eigenvectors() * ev.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint());
  out.hermitian = true;
  return out;
}

LearnedUnitary learn_unitary(const MeasurementDataset& ds, const UnitaryLearningOptions& opt) {
  if (ds.mode != DatasetMode::Unitary) throw Error("learn_unitary: dataset is not in unitary mode");
  if (ds.size() == 0) throw Error("learn_unitary: empty dataset");
  if (opt.depth < 1) throw Error("learn_unitary: depth must be positive");
  const int n = ds.n;
  const bool general = opt.strategy == UnitaryStrategy::General;
  if (!general && !opt.geometry) throw Error("learn_unitary: strategy needs a geometry");
  if (opt.geometry && opt.geometry->vertex_count() != n)
    throw Error("learn_unitary: geometry size does not match the dataset");
  const GeometryGraph* g = general ? nullptr : &*opt.geometry;
  std::vector<Mat4> gs;
  if (!opt.gateset.empty()) gs = gates::gateset(opt.gateset);
  const bool finite = !gs.empty() && g != nullptr;

  LearnedUnitary out;
  out.n = n;
  out.strategy = strategy_name(opt.strategy);
  out.gateset = opt.gateset;
  out.depth = opt.depth;
  out.circuit_digest = ds.circuit_digest;
  out.observables.resize(3 * n);

  parallel_for(out.observables.size(), opt.jobs, [&](std::size_t t) {
    const int i = static_cast<int>(t / 3);
    const char p = kLetters[t % 3];
    LearnedObservable& lo = out.observables[t];
    lo.qubit = i;
    lo.pauli = p;
    const auto pairs = derive_pauli_dataset(ds, PauliString::single(i, p));
    if (general) {
      ObservableLearningOptions lopt;
      const int k = 1 << std::min(opt.depth, 4);
      lopt.max_k = std::max(lopt.max_k, k);
      lopt.max_n = std::max(lopt.max_n, n);
      lo.estimate = learn_observable_unknown_support(pairs, k, opt.eps, lopt);
    } else {
      const QubitSet region = lightcone(*g, {i}, opt.depth);
      if (static_cast<int>(region.size()) > opt.k_max)
        throw Error("learn_unitary: lightcone exceeds k_max");
      lo.estimate = learn_observable_known_support(pairs, region);
    }
    if (finite) {
      const QubitSet region = lightcone(*g, {i}, opt.depth);
      const auto cands = enumerate_gateset_heisenberg_candidates(gs, opt.depth, *g, region, i, p);
      if (cands.empty()) throw LearningFailure("learn_unitary: no candidate observables");
      const double gap =
          cands.size() > 1 ? candidate_min_gap(cands) : std::numeric_limits<double>::infinity();
      const SnapResult r = snap_observable_to_candidates(
          lo.estimate, cands, gap, SnapOptions{SnapMetric::Frobenius, false, true});
      lo.used = r.op;
      lo.snapped = true;
      lo.low_confidence = r.low_confidence;
      lo.snap_distance = r.distance;
    } else {
      QubitSet s = lo.estimate.term_support();
      if (s.empty()) s = {i};
      lo.used = clip_to_unit_ball(DenseOperator(s, lo.estimate.matrix_on(s)));
    }
  });

  auto triple = [&](int i) {
    return std::array<DenseOperator, 3>{out.observables[3 * i].used,
                                        out.observables[3 * i + 1].used,
                                        out.observables[3 * i + 2].used};
  };
  std::vector<SewBlock> blocks;
  std::vector<std::vector<std::size_t>> layers;
  if (opt.strategy == UnitaryStrategy::LatticeOptimized) {
    const std::vector<int> dims = lattice_dims(*g);
    const RegionColoring col =
        lattice_region_coloring(static_cast<int>(dims.size()), dims, 3 * opt.depth);
    for (const auto& region : col.regions) {
      std::vector<std::array<DenseOperator, 3>> obs;
      for (int j : region) obs.push_back(triple(j));
      blocks.push_back(build_region_block(region, obs, n, opt.k_max));
    }
    layers.assign(static_cast<std::size_t>(dims.size()) + 1, {});
    for (std::size_t r = 0; r < col.regions.size(); ++r) layers[col.colors[r]].push_back(r);
    layers.erase(std::remove_if(layers.begin(), layers.end(), [](const auto& l) { return l.empty(); }),
                 layers.end());
  } else {
    for (int i = 0; i < n; ++i) blocks.push_back(build_sew_block(i, triple(i), n, opt.k_max));
  }

  const bool try_net = opt.strategy == UnitaryStrategy::LatticeOptimized && opt.net_eps > 0;
  if (g && (finite || try_net)) {
    parallel_for(blocks.size(), opt.jobs, [&](std::size_t t) {
      ShallowSource src;
      if (finite) {
        src.gateset = &gs;
      } else {
        src.eps = opt.net_eps;
      }
      std::optional<Circuit> c;
      try {
        c = compile_block_to_shallow(blocks[t], opt.depth, *g, src);
      } catch (const Error&) {
        c.reset();  // net larger than its cap: fall back to synthesis
      }
      if (c) {
        blocks[t].support = circuit_support(*c, blocks[t].support);
        blocks[t].circuit = std::move(c);
        blocks[t].path = "shallow";
      }
    });
  }
  if (layers.empty()) layers = order_blocks_by_coloring(blocks);

  SewOptions sopt;
  sopt.geometry = g;
  sopt.k_max = opt.k_max;
  sopt.jobs = opt.jobs;
  out.sewn = sew(blocks, layers, n, sopt);
  if (!opt.gateset.empty()) out.sewn.gateset = opt.gateset;
  for (const auto& b : blocks) {
    out.block_regions.push_back(b.region);
    out.block_paths.push_back(b.path);
  }
  return out;
}

nlohmann::json learned_unitary_to_json(const LearnedUnitary& l) {
  nlohmann::json obs = nlohmann::json::array();
  for (const auto& o : l.observables)
    obs.push_back({{"qubit", o.qubit},
                   {"pauli", std::string(1, o.pauli)},
                   {"estimate", observable_to_json(o.estimate)},
                   {"used", observable_to_json(pauli_decompose(o.used.matrix, o.used.support))},
                   {"snapped", o.snapped},
                   {"low_confidence", o.low_confidence},
                   {"snap_distance", o.snap_distance}});
  nlohmann::json blocks = nlohmann::json::array();
  for (std::size_t b = 0; b < l.block_regions.size(); ++b)
    blocks.push_back({{"region", l.block_regions[b]}, {"path", l.block_paths[b]}});
  return {{"format_version", kFormatVersion},
          {"kind", "learned_unitary"},
          {"n", l.n},
          {"strategy", l.strategy},
          {"gateset", l.gateset},
          {"depth", l.depth},
          {"circuit_digest", l.circuit_digest},
          {"sewn", circuit_to_json(l.sewn)},
          {"observables", obs},
          {"blocks", blocks}};
}

LearnedUnitary learned_unitary_from_json(const nlohmann::json& j) {
  if (j.value("format_version", -1) != kFormatVersion)
    throw Error("learned circuit: unsupported format_version");
  if (j.value("kind", "") != "learned_unitary") throw Error("learned circuit: wrong kind");
  LearnedUnitary l;
  l.n = j.at("n").get<int>();
  l.strategy = j.at("strategy").get<std::string>();
  l.gateset = j.at("gateset").get<std::string>();
  l.depth = j.at("depth").get<int>();
  l.circuit_digest = j.at("circuit_digest").get<std::string>();
  l.sewn = circuit_from_json(j.at("sewn"));
  if (l.sewn.n != 2 * l.n) throw Error("learned circuit: sewn register is not 2n");
  for (const auto& o : j.at("observables")) {
    LearnedObservable lo;
    lo.qubit = o.at("qubit").get<int>();
    lo.pauli = o.at("pauli").get<std::string>().at(0);
    lo.estimate = observable_from_json(o.at("estimate"));
    const PauliObservable used = observable_from_json(o.at("used"));
    lo.used = DenseOperator(used.declared_support, used.matrix());
    lo.snapped = o.at("snapped").get<bool>();
    lo.low_confidence = o.at("low_confidence").get<bool>();
    lo.snap_distance = o.at("snap_distance").get<double>();
    l.observables.push_back(std::move(lo));
  }
  for (const auto& b : j.at("blocks")) {
    l.block_regions.push_back(b.at("region").get<QubitSet>());
    l.block_paths.push_back(b.at("path").get<std::string>());
  }
  return l;
}

}  // namespace scl
