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

#include "scl/geometry.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace scl {

GeometryGraph::GeometryGraph(int n, std::vector<Edge> edges, std::string kind,
                             std::vector<int> dims)
    : n_(n), kind_(std::move(kind)), dims_(std::move(dims)) {
  if (n <= 0) throw Error("geometry needs at least one vertex");
  std::set<Edge> seen;
  for (auto& [a, b] : edges) {
    if (a == b) throw Error("self-loop edge (" + std::to_string(a) + "," +
                            std::to_string(b) + ")");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw Error("edge endpoint out of range");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw Error("duplicate edge (" + std::to_string(a) + "," +
                  std::to_string(b) + ")");
  }
  edges_.assign(seen.begin(), seen.end());
  adj_.assign(n, {});
  for (auto [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& v : adj_) {
    std::sort(v.begin(), v.end());
    kappa_ = std::max<int>(kappa_, static_cast<int>(v.size()));
  }
}

GeometryGraph GeometryGraph::line(int n) {
  std::vector<Edge> e;
  for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return GeometryGraph(n, e, "line", {n});
}

GeometryGraph GeometryGraph::lattice(const std::vector<int>& dims) {
  if (dims.empty()) throw Error("lattice needs at least one dimension");
  int n = 1;
  for (int d : dims) {
    if (d <= 0) throw Error("lattice dimensions must be positive");
    n *= d;
  }
  std::vector<int> stride(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    stride[k] = stride[k + 1] * dims[k + 1];
  std::vector<Edge> e;
  for (int q = 0; q < n; ++q) {
    for (size_t k = 0; k < dims.size(); ++k) {
      const int c = (q / stride[k]) % dims[k];
      if (c + 1 < dims[k]) e.push_back({q, q + stride[k]});
    }
  }
  return GeometryGraph(n, e, "lattice", dims);
}

GeometryGraph GeometryGraph::custom(int n, const std::vector<Edge>& edges) {
  return GeometryGraph(n, edges, "custom", {});
}

bool GeometryGraph::has_edge(int a, int b) const {
  if (a < 0 || a >= n_) return false;
  return std::binary_search(adj_[a].begin(), adj_[a].end(), b);
}

std::vector<int> GeometryGraph::distances_from(const QubitSet& seeds) const {
  std::vector<int> dist(n_, -1);
  std::deque<int> queue;
  for (int s : seeds) {
    if (s < 0 || s >= n_) throw Error("seed out of range");
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : adj_[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

GeometryGraph GeometryGraph::induced(const QubitSet& support) const {
  std::vector<Edge> e;
  for (auto [a, b] : edges_) {
    const int ia = index_in(support, a), ib = index_in(support, b);
    if (ia >= 0 && ib >= 0) e.push_back({ia, ib});
  }
  return GeometryGraph(static_cast<int>(support.size()), e, "custom", {});
}

bool GeometryGraph::connected() const {
  const auto d = distances_from({0});
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

std::vector<int> GeometryGraph::coords(int q) const {
  std::vector<int> c(dims_.size());
  for (int k = static_cast<int>(dims_.size()) - 1; k >= 0; --k) {
    c[k] = q % dims_[k];
    q /= dims_[k];
  }
  return c;
}

int GeometryGraph::vertex_at(const std::vector<int>& c) const {
  int q = 0;
  for (size_t k = 0; k < dims_.size(); ++k) q = q * dims_[k] + c[k];
  return q;
}

QubitSet lightcone(const GeometryGraph& g, const QubitSet& seeds, int d) {
  if (d < 0) throw Error("lightcone depth must be nonnegative");
  const auto dist = g.distances_from(seeds);
  QubitSet out;
  for (int q = 0; q < g.vertex_count(); ++q)
    if (dist[q] >= 0 && dist[q] <= d) out.push_back(q);
  return out;
}

}  // namespace scl
