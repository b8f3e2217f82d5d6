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

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scl/circuit.hpp"
#include "scl/dataset.hpp"
#include "scl/geometry.hpp"
#include "scl/pauli.hpp"

namespace scl {

enum class UnitaryStrategy {
  General,           // unknown supports, exact synthesis of every block
  Geo,               // lightcone supports on a known geometry
  LatticeOptimized,  // region coloring, depth-(2d+1) blocks
};
std::string strategy_name(UnitaryStrategy s);
UnitaryStrategy strategy_from_name(const std::string& name);

struct UnitaryLearningOptions {
  UnitaryStrategy strategy = UnitaryStrategy::Geo;
  int depth = 1;
  double eps = 0.1;  // support threshold for the general strategy
  std::optional<GeometryGraph> geometry;
  std::string gateset;  // named finite gate set; empty for SU(4)
  double net_eps = 0.0;  // SU(4) lattice blocks: try an eps-net first when > 0
  int k_max = kDefaultKMax;
  int jobs = 1;
};

struct LearnedObservable {
  int qubit = 0;
  char pauli = 'X';
  PauliObservable estimate;
  DenseOperator used;  // snapped candidate or the clipped estimate
  bool snapped = false;
  bool low_confidence = false;
  double snap_distance = 0.0;
};

struct LearnedUnitary {
  int n = 0;
  std::string strategy;
  std::string gateset;
  int depth = 0;
  std::string circuit_digest;  // of the dataset's circuit
  Circuit sewn;                // on 2n qubits
  std::vector<LearnedObservable> observables;  // qubit-major, X Y Z
  std::vector<QubitSet> block_regions;
  std::vector<std::string> block_paths;
};

// Learns the sewn 2n-qubit circuit for the dataset's unknown unitary.
// Throws LearningFailure when a stage cannot produce a consistent answer.
LearnedUnitary learn_unitary(const MeasurementDataset& ds, const UnitaryLearningOptions& opt);

// Eigenvalues clipped to [-1, 1].
DenseOperator clip_to_unit_ball(const DenseOperator& o);

nlohmann::json learned_unitary_to_json(const LearnedUnitary& l);
LearnedUnitary learned_unitary_from_json(const nlohmann::json& j);

}  // namespace scl
