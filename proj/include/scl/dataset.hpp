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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "scl/circuit.hpp"
#include "scl/pauli.hpp"

namespace scl {

enum class DatasetMode { Unitary, State };

// Labels are strings over "01+-rl", one character per qubit.
struct MeasurementDataset {
  DatasetMode mode = DatasetMode::Unitary;
  int n = 0;
  std::uint64_t seed = 0;
  std::string circuit_digest;
  // Public architecture of the sampled circuit (geometry, depth, gate set);
  // null when unknown.
  nlohmann::json device;
  std::vector<std::string> inputs;  // empty in state mode
  std::vector<std::string> outcomes;

  std::size_t size() const { return outcomes.size(); }
};

struct ObservableSamplePair {
  std::string input;
  double v = 0.0;
};

// RNG streams: every draw is keyed by (seed, stream, sample * n + qubit).
inline constexpr std::uint64_t kStreamInput = 1;
inline constexpr std::uint64_t kStreamBasis = 2;
inline constexpr std::uint64_t kStreamOutcome = 3;

// Random product stabilizer inputs, the circuit applied, every qubit
// measured in a uniformly random Pauli basis with sequential Born sampling.
// The circuit is simulated per connected component of its gates.
MeasurementDataset sample_unitary_dataset(const Circuit& c, std::size_t N, std::uint64_t seed,
                                          int jobs = 1);
// Same with the fixed input |0^n>; only outcomes are recorded.
MeasurementDataset sample_state_dataset(const Circuit& c, std::size_t N, std::uint64_t seed,
                                        int jobs = 1);

// v = 3^w prod_{i in supp} <phi_i|P_i|phi_i> per sample.
std::vector<ObservableSamplePair> derive_pauli_dataset(const MeasurementDataset& ds,
                                                       const PauliString& target);

void write_dataset(const MeasurementDataset& ds, std::ostream& out);
MeasurementDataset read_dataset(std::istream& in);
void save_dataset(const MeasurementDataset& ds, const std::string& path);
MeasurementDataset load_dataset(const std::string& path);

// Qubit groups connected by the circuit's gates, each sorted ascending.
std::vector<QubitSet> gate_components(const Circuit& c);

}  // namespace scl
