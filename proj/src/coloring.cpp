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


#include "scl/coloring.hpp"

#include <algorithm>
#include <queue>

namespace scl {

int RegionColoring::color_count() const {
  std::vector<int> c = colors;
  std::sort(c.begin(), c.end());
  return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
}

RegionColoring lattice_region_coloring(int k, const std::vector<int>& dims, int R) {
  if (k < 1 || k > 3) throw Error("lattice_region_coloring: k must be 1, 2 or 3");
  if (static_cast<int>(dims.size()) != k) throw Error("lattice_region_coloring: need k dims");
  if (R < 1) throw Error("lattice_region_coloring: R must be positive");
  const int period = 2 * k * R;
  for (int d : dims)
    if (d < period) throw Error("lattice_region_coloring: lattice smaller than one period");
  const GeometryGraph g = k == 1 ? GeometryGraph::line(dims[0]) : GeometryGraph::lattice(dims);
  const int n = g.vertex_count();

  // Along one axis, a slab of width w centred on the cell boundaries.
  auto in_slab = [&](int x, int w) {
    const int shifted = ((x + w / 2) % period + period) % period;
    return shifted < w;
  };
  std::vector<int> color(n);
  for (int q = 0; q < n; ++q) {
    const std::vector<int> x = k == 1 ? std::vector<int>{q} : g.coords(q);
    color[q] = k;
    for (int t = 0; t < k; ++t) {
      // Near a t-cell: within (k - t) R / 2 of the boundary planes on at
      // least k - t axes.
      int near = 0;
      for (int a = 0; a < k; ++a) near += in_slab(x[a], (k - t) * R) ? 1 : 0;
      if (near >= k - t) {
        color[q] = t;
        break;
      }
    }
  }

  RegionColoring out;
  out.separation = R;
  std::vector<int> comp(n, -1);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.regions.size());
    QubitSet region;
    std::queue<int> bfs;
    bfs.push(s);
    comp[s] = id;
    while (!bfs.empty()) {
      const int q = bfs.front();
      bfs.pop();
      region.push_back(q);
      for (int r : g.neighbors(q))
        if (comp[r] < 0 && color[r] == color[s]) {
          comp[r] = id;
          bfs.push(r);
        }
    }
    out.regions.push_back(normalized(region));
    out.colors.push_back(color[s]);
  }
  return out;
}

int set_distance(const GeometryGraph& g, const QubitSet& a, const QubitSet& b) {
  const std::vector<int> dist = g.distances_from(a);
  int best = -1;
  for (int q : b)
    if (dist[q] >= 0 && (best < 0 || dist[q] < best)) best = dist[q];
  return best;
}

}  // namespace scl
