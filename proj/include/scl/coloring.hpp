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

#include <vector>

#include "scl/common.hpp"
#include "scl/geometry.hpp"

namespace scl {

// Partition of a k-dimensional lattice into regions with k+1 colors;
// same-colored regions are at graph distance >= separation.
struct RegionColoring {
  std::vector<QubitSet> regions;
  std::vector<int> colors;  // 0..k, one per region
  int separation = 0;
  int color_count() const;
};

// Fattened-cell coloring with period 2kR per axis: cells of dimension t
// are thickened to (k - t) R and get color t; the open k-cells take color
// k. Regions are the connected components of each color class, in order
// of their smallest vertex.
RegionColoring lattice_region_coloring(int k, const std::vector<int>& dims, int R);

// Smallest graph distance between two vertex sets.
int set_distance(const GeometryGraph& g, const QubitSet& a, const QubitSet& b);

}  // namespace scl
