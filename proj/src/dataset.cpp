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


#include "scl/dataset.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "json.hpp"
#include "scl/gates.hpp"
#include "scl/rng.hpp"
#include "scl/stabilizer.hpp"
#include "scl/statevector.hpp"

namespace scl {

namespace {

nlohmann::json device_json(const Circuit& c) {
  nlohmann::json d = {{"depth", c.depth()}, {"gateset", c.gateset}};
  if (c.geometry) d["geometry"] = geometry_to_json(*c.geometry);
  return d;
}

struct Component {
  QubitSet qubits;
  Circuit local;  // relabelled to 0..m-1
};

std::vector<Component> split_components(const Circuit& c) {
  std::vector<Component> out;
  for (const QubitSet& qs : gate_components(c)) {
    std::vector<int> map(c.n, -1);
    for (std::size_t t = 0; t < qs.size(); ++t) map[qs[t]] = static_cast<int>(t);
    Circuit local(static_cast<int>(qs.size()));
    for (const Layer& layer : c.layers) {
      Layer l;
      for (const Gate& g : layer.gates)
        if (map[g.a] >= 0) l.gates.push_back(Gate{map[g.a], map[g.b], g.u, g.tag});
      if (!l.gates.empty()) local.layers.push_back(std::move(l));
    }
    check_dense_cap(local.n, "dataset sampling");
    out.push_back({qs, std::move(local)});
  }
  return out;
}

// Rotations taking the X, Y, Z eigenbases to the computational basis.
const Mat2& basis_change(int basis) {
  static const Mat2 kX = gates::H();
  static const Mat2 kY = gates::H() * gates::S().adjoint();
  static const Mat2 kZ = gates::I2();
  return basis == 0 ? kX : (basis == 1 ? kY : kZ);
}

constexpr char kOutcomeChar[3][2] = {{'+', '-'}, {'r', 'l'}, {'0', '1'}};

// Measures every qubit of `psi` (component qubits `qs`, first qubit most
// significant) and writes labels into `label`. Consumes `psi`.
void measure_component(Vec psi, const QubitSet& qs, int n, std::size_t sample,
                       const CounterRng& basis_rng, const CounterRng& outcome_rng,
                       std::string& label) {
  Eigen::Index len = psi.size();
  Eigen::Index offset = 0;  // collapsed vector lives in psi[offset, offset + len)
  for (int q : qs) {
    const std::uint64_t slot = sample * static_cast<std::uint64_t>(n) + q;
    const int basis = static_cast<int>(basis_rng.below(slot, 3));
    const Eigen::Index half = len / 2;
    const Mat2& r = basis_change(basis);
    double p0 = 0.0, total = 0.0;
    for (Eigen::Index i = 0; i < half; ++i) {
      const cplx a = psi(offset + i), b = psi(offset + half + i);
      const cplx a2 = r(0, 0) * a + r(0, 1) * b, b2 = r(1, 0) * a + r(1, 1) * b;
      psi(offset + i) = a2;
      psi(offset + half + i) = b2;
      p0 += std::norm(a2);
      total += std::norm(a2) + std::norm(b2);
    }
    const int bit = outcome_rng.uniform(slot) * total < p0 ? 0 : 1;
    label[q] = kOutcomeChar[basis][bit];
    if (bit == 1) offset += half;
    len = half;
  }
}

Eigen::Vector2cd input_state(char c) { return stab_vector(stab_from_char(c)); }

}  // namespace

std::vector<QubitSet> gate_components(const Circuit& c) {
  std::vector<int> parent(c.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Layer& layer : c.layers)
    for (const Gate& g : layer.gates) parent[find(g.a)] = find(g.b);
  std::vector<QubitSet> groups(c.n);
  for (int q = 0; q < c.n; ++q) groups[find(q)].push_back(q);
  std::vector<QubitSet> out;
  for (auto& g : groups)
    if (!g.empty()) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

MeasurementDataset sample_unitary_dataset(const Circuit& c, std::size_t N, std::uint64_t seed,
                                          int jobs) {
  c.validate(1e-10);
  const auto comps = split_components(c);
  MeasurementDataset ds;
  ds.mode = DatasetMode::Unitary;
  ds.n = c.n;
  ds.seed = seed;
  ds.circuit_digest = circuit_digest(c);
  ds.device = device_json(c);
  ds.inputs.assign(N, std::string(c.n, '0'));
  ds.outcomes.assign(N, std::string(c.n, '0'));
  const CounterRng in_rng(seed, kStreamInput), basis_rng(seed, kStreamBasis),
      out_rng(seed, kStreamOutcome);
  parallel_for(N, jobs, [&](std::size_t l) {
    std::string& in = ds.inputs[l];
    for (int q = 0; q < c.n; ++q)
      in[q] = kStabChars[in_rng.below(l * static_cast<std::uint64_t>(c.n) + q, 6)];
    for (const Component& comp : comps) {
      std::vector<Eigen::Vector2cd> qs;
      for (int q : comp.qubits) qs.push_back(input_state(in[q]));
      Vec psi = StateVector::product(qs).amps;
      apply_circuit_inplace(psi, comp.local);
      measure_component(std::move(psi), comp.qubits, c.n, l, basis_rng, out_rng,
                        ds.outcomes[l]);
    }
  });
  return ds;
}

MeasurementDataset sample_state_dataset(const Circuit& c, std::size_t N, std::uint64_t seed,
                                        int jobs) {
  c.validate(1e-10);
  const auto comps = split_components(c);
  std::vector<Vec> states;
  for (const Component& comp : comps) {
    Vec psi = StateVector::zero(comp.local.n).amps;
    apply_circuit_inplace(psi, comp.local);
    states.push_back(std::move(psi));
  }
  MeasurementDataset ds;
  ds.mode = DatasetMode::State;
  ds.n = c.n;
  ds.seed = seed;
  ds.circuit_digest = circuit_digest(c);
  ds.device = device_json(c);
  ds.outcomes.assign(N, std::string(c.n, '0'));
  const CounterRng basis_rng(seed, kStreamBasis), out_rng(seed, kStreamOutcome);
  parallel_for(N, jobs, [&](std::size_t l) {
    for (std::size_t k = 0; k < comps.size(); ++k)
      measure_component(states[k], comps[k].qubits, c.n, l, basis_rng, out_rng, ds.outcomes[l]);
  });
  return ds;
}

std::vector<ObservableSamplePair> derive_pauli_dataset(const MeasurementDataset& ds,
                                                       const PauliString& target) {
  if (ds.mode != DatasetMode::Unitary) throw Error("derive_pauli_dataset needs a unitary dataset");
  if (target.weight() < 1) throw Error("target Pauli must have weight at least 1");
  for (const auto& [q, p] : target.letters)
    if (q < 0 || q >= ds.n) throw Error("target Pauli outside the register");
  const double scale = std::pow(3.0, target.weight());
  std::vector<ObservableSamplePair> out;
  out.reserve(ds.size());
  for (std::size_t l = 0; l < ds.size(); ++l) {
    int sign = 1;
    for (const auto& [q, p] : target.letters) {
      sign *= stab_pauli_sign(stab_from_char(ds.outcomes[l][q]), p);
      if (sign == 0) break;
    }
    out.push_back({ds.inputs[l], scale * sign});
  }
  return out;
}

void write_dataset(const MeasurementDataset& ds, std::ostream& out) {
  nlohmann::json header = {{"mode", ds.mode == DatasetMode::Unitary ? "unitary" : "state"},
                           {"n", ds.n},
                           {"N", ds.size()},
                           {"seed", ds.seed},
                           {"circuit_digest", ds.circuit_digest},
                           {"format_version", kFormatVersion}};
  if (!ds.device.is_null()) header["device"] = ds.device;
  out << header.dump() << '\n';
  for (std::size_t l = 0; l < ds.size(); ++l) {
    nlohmann::json line;
    if (ds.mode == DatasetMode::Unitary) line["in"] = ds.inputs[l];
    line["out"] = ds.outcomes[l];
    out << line.dump() << '\n';
  }
}

MeasurementDataset read_dataset(std::istream& in) {
  std::string text;
  if (!std::getline(in, text)) throw Error("dataset: missing header");
  const auto header = nlohmann::json::parse(text);
  if (header.value("format_version", -1) != kFormatVersion)
    throw Error("dataset: unsupported format_version");
  MeasurementDataset ds;
  const std::string mode = header.at("mode");
  if (mode != "unitary" && mode != "state") throw Error("dataset: unknown mode " + mode);
  ds.mode = mode == "unitary" ? DatasetMode::Unitary : DatasetMode::State;
  ds.n = header.at("n");
  ds.seed = header.at("seed");
  ds.circuit_digest = header.at("circuit_digest");
  if (header.contains("device")) ds.device = header.at("device");
  const std::size_t N = header.at("N");
  auto check = [&](const std::string& s) {
    if (static_cast<int>(s.size()) != ds.n) throw Error("dataset: label length mismatch");
    for (char ch : s) stab_from_char(ch);
    return s;
  };
  while (std::getline(in, text)) {
    if (text.empty()) continue;
    const auto line = nlohmann::json::parse(text);
    if (ds.mode == DatasetMode::Unitary) ds.inputs.push_back(check(line.at("in")));
    ds.outcomes.push_back(check(line.at("out")));
  }
  if (ds.size() != N) throw Error("dataset: sample count does not match header");
  return ds;
}

void save_dataset(const MeasurementDataset& ds, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_dataset(ds, out);
}

MeasurementDataset load_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  return read_dataset(in);
}

}  // namespace scl
