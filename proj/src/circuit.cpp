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

#include "scl/circuit.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <set>

#include "scl/gates.hpp"
#include "scl/rng.hpp"
#include "scl/statevector.hpp"

namespace scl {

int Circuit::gate_count() const {
  int c = 0;
  for (const auto& l : layers) c += static_cast<int>(l.gates.size());
  return c;
}

void Circuit::validate(double tol) const {
  if (n <= 0) throw Error("circuit needs at least one qubit");
  if (geometry && geometry->vertex_count() != n)
    throw Error("geometry vertex count differs from circuit width");
  for (size_t li = 0; li < layers.size(); ++li) {
    std::set<int> used;
    for (const auto& g : layers[li].gates) {
      if (g.a < 0 || g.b < 0 || g.a >= n || g.b >= n || g.a == g.b)
        throw Error("gate has invalid qubits in layer " + std::to_string(li));
      if (!used.insert(g.a).second || !used.insert(g.b).second)
        throw Error("qubit used twice in layer " + std::to_string(li));
      const double dev =
          (g.u.adjoint() * g.u - Mat4::Identity()).cwiseAbs().maxCoeff();
      if (dev > tol)
        throw Error("non-unitary gate in layer " + std::to_string(li));
      if (geometry && !geometry->has_edge(g.a, g.b))
        throw Error("gate (" + std::to_string(g.a) + "," + std::to_string(g.b) +
                    ") is not an edge of the geometry");
    }
  }
}

Circuit Circuit::dagger() const {
  Circuit out = *this;
  std::reverse(out.layers.begin(), out.layers.end());
  for (auto& l : out.layers)
    for (auto& g : l.gates) g.u = Mat4(g.u.adjoint());
  return out;
}

void Circuit::append(const Circuit& other) {
  if (other.n != n) throw Error("cannot append circuits of different width");
  layers.insert(layers.end(), other.layers.begin(), other.layers.end());
}

Circuit Circuit::compacted() const {
  Circuit out = *this;
  out.layers.clear();
  for (const auto& l : layers)
    if (!l.gates.empty()) out.layers.push_back(l);
  return out;
}

Circuit Circuit::relabeled(const std::vector<int>& map, int new_n) const {
  Circuit out(new_n);
  out.gateset = gateset;
  for (const auto& l : layers) {
    Layer nl;
    nl.role = l.role;
    for (auto g : l.gates) {
      g.a = map.at(g.a);
      g.b = map.at(g.b);
      nl.gates.push_back(g);
    }
    out.layers.push_back(nl);
  }
  return out;
}

Mat circuit_unitary(const Circuit& c) {
  check_dense_cap(c.n, "circuit unitary");
  Mat m = Mat::Identity(Eigen::Index{1} << c.n, Eigen::Index{1} << c.n);
  // Gates act on row indices; applying them to the identity builds U.
  for (const auto& l : c.layers)
    for (const auto& g : l.gates) apply_gate_inplace(m, c.n, g.a, g.b, g.u);
  return m;
}

Mat circuit_unitary_on(const Circuit& c, const QubitSet& support) {
  std::vector<int> map(c.n, -1);
  for (size_t k = 0; k < support.size(); ++k) map[support[k]] = static_cast<int>(k);
  Circuit local(static_cast<int>(support.size()));
  for (const auto& l : c.layers) {
    Layer nl;
    for (auto g : l.gates) {
      if (map[g.a] < 0 || map[g.b] < 0)
        throw Error("gate acts outside the requested support");
      g.a = map[g.a];
      g.b = map[g.b];
      nl.gates.push_back(g);
    }
    local.layers.push_back(nl);
  }
  return circuit_unitary(local);
}

nlohmann::json geometry_to_json(const GeometryGraph& g) {
  nlohmann::json j;
  j["kind"] = g.kind();
  if (g.kind() == "custom") {
    j["n"] = g.vertex_count();
    nlohmann::json e = nlohmann::json::array();
    for (auto [a, b] : g.edges()) e.push_back({a, b});
    j["edges"] = e;
  } else {
    j["dims"] = g.dims();
  }
  return j;
}

GeometryGraph geometry_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "line") return GeometryGraph::line(j.at("dims").at(0).get<int>());
  if (kind == "lattice")
    return GeometryGraph::lattice(j.at("dims").get<std::vector<int>>());
  if (kind == "custom") {
    std::vector<Edge> e;
    for (const auto& x : j.at("edges")) e.push_back({x.at(0), x.at(1)});
    return GeometryGraph::custom(j.at("n").get<int>(), e);
  }
  throw Error("unknown geometry kind '" + kind + "'");
}

nlohmann::json circuit_to_json(const Circuit& c) {
  nlohmann::json j;
  j["format_version"] = kFormatVersion;
  j["n"] = c.n;
  if (c.geometry) j["geometry"] = geometry_to_json(*c.geometry);
  if (!c.gateset.empty()) j["gateset"] = c.gateset;
  nlohmann::json layers = nlohmann::json::array();
  nlohmann::json roles = nlohmann::json::array();
  bool any_role = false;
  for (const auto& l : c.layers) {
    nlohmann::json lj = nlohmann::json::array();
    for (const auto& g : l.gates) {
      nlohmann::json u = nlohmann::json::array();
      for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < 4; ++k)
          row.push_back({g.u(r, k).real(), g.u(r, k).imag()});
        u.push_back(row);
      }
      nlohmann::json gj = {{"q", {g.a, g.b}}, {"u", u}};
      if (g.tag >= 0) gj["tag"] = g.tag;
      lj.push_back(gj);
    }
    layers.push_back(lj);
    roles.push_back(l.role);
    any_role = any_role || !l.role.empty();
  }
  j["layers"] = layers;
  if (any_role) j["roles"] = roles;
  return j;
}

Circuit circuit_from_json(const nlohmann::json& j) {
  if (j.contains("format_version") && j.at("format_version") != kFormatVersion)
    throw Error("unsupported circuit format_version");
  Circuit c(j.at("n").get<int>());
  if (j.contains("geometry")) c.geometry = geometry_from_json(j.at("geometry"));
  if (j.contains("gateset")) c.gateset = j.at("gateset").get<std::string>();
  const auto& layers = j.at("layers");
  for (size_t li = 0; li < layers.size(); ++li) {
    Layer l;
    if (j.contains("roles")) l.role = j.at("roles").at(li).get<std::string>();
    for (const auto& gj : layers[li]) {
      Gate g;
      g.a = gj.at("q").at(0).get<int>();
      g.b = gj.at("q").at(1).get<int>();
      for (int r = 0; r < 4; ++r)
        for (int k = 0; k < 4; ++k) {
          const auto& e = gj.at("u").at(r).at(k);
          g.u(r, k) = cplx(e.at(0).get<double>(), e.at(1).get<double>());
        }
      if (gj.contains("tag")) g.tag = gj.at("tag").get<int>();
      l.gates.push_back(g);
    }
    c.layers.push_back(l);
  }
  c.validate(1e-10);
  return c;
}

std::string circuit_digest(const Circuit& c) {
  // FNV-1a over the canonical serialization.
  const std::string s = circuit_to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::vector<Edge>> brickwork_classes(const GeometryGraph& g) {
  std::vector<std::vector<Edge>> classes;
  if (g.kind() == "line" || g.kind() == "lattice") {
    const auto& dims = g.dims();
    // For each axis, edges whose lower endpoint has an even / odd
    // coordinate along that axis.
    for (int parity = 0; parity < 2; ++parity) {
      for (size_t axis = 0; axis < dims.size(); ++axis) {
        std::vector<Edge> cls;
        for (auto [a, b] : g.edges()) {
          const auto ca = g.coords(a), cb = g.coords(b);
          if (ca[axis] == cb[axis]) continue;
          if (ca[axis] % 2 == parity) cls.push_back({a, b});
        }
        if (!cls.empty()) classes.push_back(cls);
      }
    }
    return classes;
  }
  // Greedy proper edge coloring for custom graphs.
  std::vector<std::set<int>> used;
  for (auto e : g.edges()) {
    size_t k = 0;
    while (k < used.size() && (used[k].count(e.first) || used[k].count(e.second)))
      ++k;
    if (k == used.size()) {
      used.emplace_back();
      classes.emplace_back();
    }
    used[k].insert(e.first);
    used[k].insert(e.second);
    classes[k].push_back(e);
  }
  return classes;
}

namespace {

Circuit brickwork_circuit(const GeometryGraph& g, int depth,
                          const std::function<bool(Gate&)>& fill) {
  Circuit c(g.vertex_count());
  c.geometry = g;
  const auto classes = brickwork_classes(g);
  for (int t = 0; t < depth; ++t) {
    Layer l;
    if (!classes.empty()) {
      for (auto [a, b] : classes[t % classes.size()]) {
        Gate gate;
        gate.a = a;
        gate.b = b;
        if (fill(gate)) l.gates.push_back(gate);
      }
    }
    c.layers.push_back(l);
  }
  return c;
}

}  // namespace

Circuit random_su4_circuit(const GeometryGraph& g, int depth,
                           std::uint64_t seed) {
  SeqRng rng(seed, 0x5f4a11ULL);
  return brickwork_circuit(g, depth, [&](Gate& gate) {
    gate.u = gates::random_su4(rng);
    return true;
  });
}

Circuit random_gateset_circuit(const GeometryGraph& g, int depth,
                               const std::string& gateset,
                               std::uint64_t seed) {
  const auto set = gates::gateset(gateset);
  SeqRng rng(seed, 0x6a7e5e7ULL);
  Circuit c = brickwork_circuit(g, depth, [&](Gate& gate) {
    const auto k = rng.below(set.size() + 1);
    if (k == set.size()) return false;
    gate.tag = static_cast<int>(k);
    gate.u = set[k];
    return true;
  });
  c.gateset = gateset;
  return c;
}

}  // namespace scl
