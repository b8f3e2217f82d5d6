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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "scl/common.hpp"

namespace scl {

using Edge = std::pair<int, int>;

// Bounded-degree connectivity over qubits. Edges are stored with
// first < second, sorted.
class GeometryGraph {
 public:
  static GeometryGraph line(int n);
  // Nearest-neighbour grid; dims are row-major (dims[0] slowest).
  static GeometryGraph lattice(const std::vector<int>& dims);
  static GeometryGraph custom(int n, const std::vector<Edge>& edges);

  int vertex_count() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int degree_bound() const { return kappa_; }
  const std::string& kind() const { return kind_; }
  const std::vector<int>& dims() const { return dims_; }
  const std::vector<int>& neighbors(int q) const { return adj_.at(q); }
  bool has_edge(int a, int b) const;

  // Graph distance from every vertex to the nearest seed (-1 if unreachable).
  std::vector<int> distances_from(const QubitSet& seeds) const;
  // Subgraph induced on `support`, relabelled to 0..|support|-1.
  GeometryGraph induced(const QubitSet& support) const;
  bool connected() const;

  // Lattice coordinates of a vertex (lattice kind only).
  std::vector<int> coords(int q) const;
  int vertex_at(const std::vector<int>& coords) const;

 private:
  GeometryGraph(int n, std::vector<Edge> edges, std::string kind,
                std::vector<int> dims);
  int n_ = 0;
  int kappa_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::string kind_;
  std::vector<int> dims_;
};

// All qubits within graph distance d of some seed.
QubitSet lightcone(const GeometryGraph& g, const QubitSet& seeds, int d);

}  // namespace scl
