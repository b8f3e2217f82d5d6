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

#include "scl/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "scl/circuit.hpp"
#include "scl/dataset.hpp"
#include "scl/distance.hpp"
#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/landscape.hpp"
#include "scl/observable_learning.hpp"
#include "scl/sewing.hpp"
#include "scl/state_learning.hpp"
#include "scl/unitary_learning.hpp"
#include "scl/verification.hpp"

namespace scl::cli {

namespace {

using nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

struct GeometryFlags {
  std::string kind;
  int n = 0;
  std::string dims;

  std::optional<GeometryGraph> build() const {
    if (kind.empty()) return std::nullopt;
    if (kind == "line") {
      if (n < 1) throw UsageError("--geometry line needs --n");
      return GeometryGraph::line(n);
    }
    if (kind == "lattice") {
      std::vector<int> d;
      std::stringstream ss(dims);
      std::string part;
      while (std::getline(ss, part, 'x')) d.push_back(std::stoi(part));
      if (d.empty()) throw UsageError("--geometry lattice needs --dims like 3x7");
      return GeometryGraph::lattice(d);
    }
    throw UsageError("unknown geometry '" + kind + "'");
  }

  void attach(CLI::App* app) {
    app->add_option("--geometry", kind, "line or lattice");
    app->add_option("--n", n, "qubits (line)");
    app->add_option("--dims", dims, "lattice dimensions, e.g. 3x7");
  }
};

json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (j.value("format_version", -1) != kFormatVersion)
    throw UsageError(path + ": unsupported format_version");
  return j;
}

Circuit read_circuit(const std::string& path) { return circuit_from_json(read_json(path)); }

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << text;
}

void emit_json(const std::string& path, const json& j, std::ostream& out) {
  emit(path, j.dump(2) + "\n", out);
}

std::optional<GeometryGraph> device_geometry(const MeasurementDataset& ds) {
  if (ds.device.is_object() && ds.device.contains("geometry"))
    return geometry_from_json(ds.device.at("geometry"));
  return std::nullopt;
}

// The oracle circuit named on the command line or recorded by `sample`,
// when its digest matches the dataset.
std::optional<Circuit> dataset_oracle(const MeasurementDataset& ds, const std::string& flag) {
  std::string path = flag;
  if (path.empty() && ds.device.is_object()) path = ds.device.value("circuit_file", "");
  if (path.empty()) return std::nullopt;
  Circuit c = read_circuit(path);
  if (circuit_digest(c) != ds.circuit_digest) {
    if (!flag.empty()) throw UsageError("oracle circuit does not match the dataset digest");
    return std::nullopt;
  }
  return c;
}

int cmd_gen_circuit(const GeometryFlags& gf, int depth, const std::string& gateset,
                    std::uint64_t seed, const std::string& out_path, std::ostream& out) {
  const auto g = gf.build();
  if (!g) throw UsageError("gen-circuit needs --geometry");
  if (depth < 1) throw UsageError("--depth must be positive");
  const Circuit c = gateset == "su4" ? random_su4_circuit(*g, depth, seed)
                                     : random_gateset_circuit(*g, depth, gateset, seed);
  emit_json(out_path, circuit_to_json(c), out);
  return kExitOk;
}

int cmd_sample(const std::string& circuit_path, const std::string& mode, std::size_t N,
               std::uint64_t seed, int jobs, const std::string& out_path, std::ostream& out) {
  const Circuit c = read_circuit(circuit_path);
  MeasurementDataset ds;
  if (mode == "unitary")
    ds = sample_unitary_dataset(c, N, seed, jobs);
  else if (mode == "state")
    ds = sample_state_dataset(c, N, seed, jobs);
  else
    throw UsageError("--mode must be unitary or state");
  ds.device["circuit_file"] = circuit_path;
  std::ostringstream s;
  write_dataset(ds, s);
  emit(out_path, s.str(), out);
  return kExitOk;
}

json oracle_report(const LearnedUnitary& l, const Circuit& u) {
  json r;
  double sum = 0;
  for (const auto& o : l.observables) {
    const auto ex = heisenberg_observable_exact(u, o.qubit, o.pauli);
    const auto s = set_union(ex.support, o.used.support);
    sum += spectral_norm(embed(ex.matrix, ex.support, s) - embed(o.used.matrix, o.used.support, s));
  }
  r["observable_error_sum"] = sum;
  r["sewing_bound"] = 3 * sum;
  try {
    const double dist = phase_min_spectral_distance(l.sewn, tensor_with_dagger(u));
    r["diamond_proxy"] = {{"lower", dist}, {"upper", 2 * dist}};
  } catch (const Error& e) {
    r["diamond_proxy"] = {{"skipped", e.what()}};
  }
  return r;
}

struct LearnUnitaryFlags {
  std::string data, strategy, gateset, oracle, out;
  GeometryFlags geometry;
  int depth = 0;
  double eps = 0.1, net_eps = 0.0;
  int k_max = kDefaultKMax;
  bool gateset_set = false;
};

int cmd_learn_unitary(const LearnUnitaryFlags& f, int jobs, std::ostream& out) {
  const MeasurementDataset ds = load_dataset(f.data);
  if (ds.mode != DatasetMode::Unitary) throw UsageError("learn-unitary needs a unitary dataset");
  UnitaryLearningOptions opt;
  opt.geometry = f.geometry.build();
  if (!opt.geometry) opt.geometry = device_geometry(ds);
  opt.depth = f.depth;
  if (opt.depth < 1 && ds.device.is_object()) opt.depth = ds.device.value("depth", 0);
  if (opt.depth < 1) throw UsageError("--depth is required");
  opt.gateset = f.gateset_set ? f.gateset
                              : (ds.device.is_object() ? ds.device.value("gateset", "") : "");
  if (opt.gateset == "su4") opt.gateset.clear();
  opt.strategy = f.strategy.empty()
                     ? (opt.geometry ? UnitaryStrategy::Geo : UnitaryStrategy::General)
                     : strategy_from_name(f.strategy);
  opt.eps = f.eps;
  opt.net_eps = f.net_eps;
  opt.k_max = f.k_max;
  opt.jobs = jobs;
  const LearnedUnitary l = learn_unitary(ds, opt);
  json j = learned_unitary_to_json(l);
  json report = {{"sewn_depth", l.sewn.depth()}, {"observables", l.observables.size()}};
  int snapped = 0, low = 0;
  for (const auto& o : l.observables) snapped += o.snapped, low += o.low_confidence;
  report["snapped"] = snapped;
  report["low_confidence"] = low;
  if (const auto u = dataset_oracle(ds, f.oracle)) report["oracle"] = oracle_report(l, *u);
  j["report"] = report;
  emit_json(f.out, j, out);
  return kExitOk;
}

struct LearnStateFlags {
  std::string mode = "1d", data, circuit, out, gateset = "clifford2";
  GeometryFlags geometry;
  int depth = 0, strip_width = 0, patch_width = 0, region_size = 0, retries = 3;
  std::size_t N = 40000;
  std::uint64_t seed = 1;
  bool raw_rdms = false;
};

int cmd_learn_state(const LearnStateFlags& f, int jobs, std::ostream& out) {
  std::optional<MeasurementDataset> data;
  std::optional<Circuit> oracle;
  if (!f.data.empty()) {
    data = load_dataset(f.data);
    if (data->mode != DatasetMode::State) throw UsageError("learn-state needs a state dataset");
    oracle = dataset_oracle(*data, f.circuit);
  } else if (!f.circuit.empty()) {
    oracle = read_circuit(f.circuit);
  } else {
    throw UsageError("learn-state needs --data or --circuit");
  }
  std::optional<GeometryGraph> g = f.geometry.build();
  if (!g && data) g = device_geometry(*data);
  if (!g && oracle && oracle->geometry) g = oracle->geometry;
  if (!g) throw UsageError("learn-state needs a geometry");

  StateLearningOptions opt;
  opt.gateset = f.gateset;
  opt.depth = f.depth;
  if (opt.depth < 1 && data && data->device.is_object()) opt.depth = data->device.value("depth", 0);
  if (opt.depth < 1 && oracle) opt.depth = oracle->depth();
  if (opt.depth < 1) throw UsageError("--depth is required");
  opt.samples = f.N;
  opt.seed = f.seed;
  opt.retries = data ? 0 : f.retries;
  opt.exactify = !f.raw_rdms;
  opt.region_size = f.region_size;
  opt.jobs = jobs;
  StateSource src;
  if (data) {
    src.n = data->n;
    src.sample = [&](std::size_t, std::uint64_t) { return *data; };
  } else {
    src = circuit_state_source(*oracle, jobs);
  }

  json j = {{"format_version", kFormatVersion}, {"kind", "learned_state"}, {"mode", f.mode},
            {"depth", opt.depth}, {"gateset", opt.gateset}};
  Circuit prep;
  if (f.mode == "1d") {
    const auto r = learn_1d_state(src, *g, opt);
    prep = r.v.dagger();
    j["inverter"] = circuit_to_json(r.v);
    j["diagnostics"] = {{"score", r.score}, {"candidate_counts", r.candidate_counts}};
    j["samples"] = r.samples;
    j["attempts"] = r.attempts;
    if (oracle) {
      Circuit c = *oracle;
      c.geometry.reset();
      Circuit v = r.v;
      v.geometry.reset();
      c.append(v);
      QubitSet all(g->vertex_count());
      for (int q = 0; q < g->vertex_count(); ++q) all[q] = q;
      j["diagnostics"]["zero_return"] = zero_return_probability(c, all);
    }
  } else if (f.mode == "2d") {
    const int sw = f.strip_width > 0 ? f.strip_width : 5 * opt.depth;
    const int pw = f.patch_width > 0 ? f.patch_width : 5 * opt.depth;
    const auto r = learn_2d_state(src, *g, opt, sw, pw);
    prep = r.prep;
    j["widths"] = {{"strip", r.strip_width}, {"patch", r.patch_width}, {"ancilla", 2 * opt.depth}};
    j["diagnostics"] = {{"strip_zero_bound", r.disentangled.diagnostic},
                        {"patch_lambda_max", r.patch_lambda_max}};
    j["samples"] = r.samples;
    j["attempts"] = r.attempts;
  } else if (f.mode == "no-ancilla") {
    if (!data) data = src.sample(opt.samples, opt.seed);
    QubitSet region(g->vertex_count());
    for (int q = 0; q < g->vertex_count(); ++q) region[q] = q;
    const auto windows = no_ancilla_windows(region, opt.depth);
    auto rdms = learn_reduced_density_matrices(*data, windows);
    for (auto& r : rdms) {
      if (opt.exactify) {
        auto s = exactify_stabilizer_rdm(r);
        if (!s) throw LearningFailure("RDM exactification failed");
        r = *s;
      } else {
        r.matrix = project_psd(r.matrix);
      }
    }
    const auto r = learn_1d_state_no_ancilla(window_rdm_provider(rdms), region, opt.depth,
                                             gates::gateset(opt.gateset));
    prep = r.prep;
    j["diagnostics"] = {{"product_defects", r.product_defects},
                        {"fidelity_estimate", r.fidelity_estimate}};
    j["samples"] = data->size();
    j["attempts"] = 1;
  } else {
    throw UsageError("--mode must be 1d, 2d or no-ancilla");
  }
  j["circuit"] = circuit_to_json(prep);
  j["prep_depth"] = prep.depth();
  if (oracle) j["diagnostics"]["final_fidelity"] = preparation_fidelity(prep, *oracle);
  emit_json(f.out, j, out);
  return kExitOk;
}

int cmd_verify(const std::string& data, const std::string& learned, double eps, int jobs,
               const std::string& out_path, std::ostream& out) {
  const MeasurementDataset ds = load_dataset(data);
  if (ds.mode != DatasetMode::Unitary) throw UsageError("verify needs a unitary dataset");
  const LearnedUnitary l = learned_unitary_from_json(read_json(learned));
  VerificationOptions opt;
  opt.jobs = jobs;
  const auto o = estimate_local_deviations(ds, l.sewn, opt);
  emit_json(out_path, verification_to_json(verify(o, eps)), out);
  return kExitOk;
}

int cmd_distance(const std::string& a, const std::string& b, const std::string& out_path,
                 std::ostream& out) {
  const Circuit ca = read_circuit(a), cb = read_circuit(b);
  if (ca.n != cb.n) throw UsageError("circuits act on different qubit counts");
  check_dense_cap(ca.n, "distance");
  const Mat ua = circuit_unitary(ca), ub = circuit_unitary(cb);
  const auto d = unitary_diamond_proxy(ua, ub);
  emit_json(out_path,
            {{"format_version", kFormatVersion},
             {"average_gate_distance", average_gate_distance(ua, ub)},
             {"diamond_lower", d.lower},
             {"diamond_upper", d.upper}},
            out);
  return kExitOk;
}

int cmd_landscape(int n, const std::string& subset, double radius, std::size_t trials,
                  std::size_t mc, std::uint64_t seed, int jobs, const std::string& out_path,
                  std::ostream& out) {
  std::vector<int> s;
  std::stringstream ss(subset);
  std::string part;
  while (std::getline(ss, part, ','))
    if (!part.empty()) s.push_back(std::stoi(part));
  if (s.size() > 20) throw UsageError("--S too large");
  std::ostringstream csv;
  csv << std::setprecision(12);
  csv << "x,popcount,exact_cost,probed_min";
  if (mc > 0) csv << ",mc_cost,mc_stderr";
  csv << "\n";
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << s.size()); ++x) {
    const auto theta = local_minimum_point(x, s, n);
    const auto probe = probe_neighborhood(theta, s, radius, trials, seed + x, jobs);
    csv << x << "," << std::popcount(x) << "," << local_cost_exact(theta, s) << ","
        << probe.min_cost;
    if (mc > 0) {
      const auto e = local_cost_monte_carlo(theta, s, mc, seed + x);
      csv << "," << e.value << "," << e.stderr_;
    }
    csv << "\n";
  }
  emit(out_path, csv.str(), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Learning shallow quantum circuits from randomized measurements", "scl"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  std::function<int()> action;

  GeometryFlags gen_geo;
  int gen_depth = 1;
  std::string gen_gateset = "su4", gen_out;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen-circuit", "random brickwork circuit");
  gen_geo.attach(gen);
  gen->add_option("--depth", gen_depth);
  gen->add_option("--gateset", gen_gateset, "su4 or a named finite gate set");
  gen->add_option("--seed", gen_seed);
  gen->add_option("--out", gen_out);
  gen->callback([&] {
    action = [&] { return cmd_gen_circuit(gen_geo, gen_depth, gen_gateset, gen_seed, gen_out, out); };
  });

  std::string smp_circuit, smp_mode = "unitary", smp_out;
  std::size_t smp_N = 1000;
  std::uint64_t smp_seed = 1;
  auto* smp = app.add_subcommand("sample", "randomized measurement dataset");
  smp->add_option("--circuit", smp_circuit)->required();
  smp->add_option("--mode", smp_mode, "unitary or state");
  smp->add_option("--N", smp_N);
  smp->add_option("--seed", smp_seed);
  smp->add_option("--out", smp_out);
  smp->callback([&] {
    action = [&] { return cmd_sample(smp_circuit, smp_mode, smp_N, smp_seed, jobs, smp_out, out); };
  });

  LearnUnitaryFlags lu;
  auto* lus = app.add_subcommand("learn-unitary", "learn and sew a shallow circuit");
  lus->add_option("--data", lu.data)->required();
  lus->add_option("--strategy", lu.strategy, "general, geo or lattice-optimized");
  lu.geometry.attach(lus);
  lus->add_option("--depth", lu.depth);
  auto* gs_opt = lus->add_option("--gateset", lu.gateset);
  lus->add_option("--eps", lu.eps);
  lus->add_option("--net-eps", lu.net_eps);
  lus->add_option("--k-max", lu.k_max);
  lus->add_option("--circuit", lu.oracle, "oracle circuit for the report");
  lus->add_option("--out", lu.out);
  lus->callback([&] {
    lu.gateset_set = gs_opt->count() > 0;
    action = [&] { return cmd_learn_unitary(lu, jobs, out); };
  });

  LearnStateFlags ls;
  auto* lss = app.add_subcommand("learn-state", "learn a shallow-circuit state");
  lss->add_option("--mode", ls.mode, "1d, 2d or no-ancilla");
  lss->add_option("--data", ls.data);
  lss->add_option("--circuit", ls.circuit, "state circuit: sampled on demand, also the oracle");
  ls.geometry.attach(lss);
  lss->add_option("--depth", ls.depth);
  lss->add_option("--gateset", ls.gateset);
  lss->add_option("--N", ls.N);
  lss->add_option("--seed", ls.seed);
  lss->add_option("--retries", ls.retries);
  lss->add_option("--strip-width", ls.strip_width);
  lss->add_option("--patch-width", ls.patch_width);
  lss->add_option("--region-size", ls.region_size);
  lss->add_flag("--raw-rdms", ls.raw_rdms, "skip stabilizer exactification");
  lss->add_option("--out", ls.out);
  lss->callback([&] { action = [&] { return cmd_learn_state(ls, jobs, out); }; });

  std::string ver_data, ver_learned, ver_out;
  double ver_eps = 0.2;
  auto* ver = app.add_subcommand("verify", "PASS/FAIL check of a learned circuit");
  ver->add_option("--data", ver_data)->required();
  ver->add_option("--learned", ver_learned)->required();
  ver->add_option("--eps", ver_eps);
  ver->add_option("--out", ver_out);
  ver->callback([&] {
    action = [&] { return cmd_verify(ver_data, ver_learned, ver_eps, jobs, ver_out, out); };
  });

  std::string dist_a, dist_b, dist_out;
  auto* dist = app.add_subcommand("distance", "distances between two circuits");
  dist->add_option("--a", dist_a)->required();
  dist->add_option("--b", dist_b)->required();
  dist->add_option("--out", dist_out);
  dist->callback([&] { action = [&] { return cmd_distance(dist_a, dist_b, dist_out, out); }; });

  int land_n = 8;
  std::string land_s = "0,1", land_out;
  double land_radius = std::numbers::pi / 4 - 0.01;
  std::size_t land_trials = 2000, land_mc = 0;
  std::uint64_t land_seed = 1;
  auto* land = app.add_subcommand("landscape", "SWAP-ansatz local minima study (CSV)");
  land->add_option("--n", land_n);
  land->add_option("--S", land_s, "comma-separated block indices");
  land->add_option("--radius", land_radius);
  land->add_option("--trials", land_trials);
  land->add_option("--mc", land_mc, "Monte Carlo samples per point, 0 to skip");
  land->add_option("--seed", land_seed);
  land->add_option("--out", land_out);
  land->callback([&] {
    action = [&] {
      return cmd_landscape(land_n, land_s, land_radius, land_trials, land_mc, land_seed, jobs,
                           land_out, out);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const LearningFailure& e) {
    err << "learning failure: " << e.what() << "\n";
    return kExitLearningFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace scl::cli
