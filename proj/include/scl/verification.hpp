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

#include <array>
#include <vector>

#include "json.hpp"
#include "scl/circuit.hpp"
#include "scl/dataset.hpp"
#include "scl/dense.hpp"

namespace scl {

// (1/2) sum_P ||U^dag P_i U - P_i||_inf for a unitary on U.support.
double strong_local_deviation(const DenseOperator& u, int i);
// Pauli weight of U on strings acting nontrivially on qubit i; equals
// (3/2) D_ave of the reduced single-qubit channel against the identity.
double pauli_influence(const DenseOperator& u, int i);

// <0_anc| sewn (P_i (x) I) sewn^dag |0_anc> for P = X, Y, Z: the
// Heisenberg images of the inverse learned channel, identity factors
// trimmed.
std::vector<std::array<DenseOperator, 3>> inverse_channel_observables(const Circuit& sewn);

struct VerificationOptions {
  int max_support = 8;  // cap on |S_i|
  int jobs = 1;
};

// o_i = D_ave of the single-qubit reduced channel of (learned^dag after
// the unknown channel) on qubit i, with the unknown channel's transfer
// coefficients estimated from the dataset.
std::vector<double> estimate_local_deviations(const MeasurementDataset& ds, const Circuit& sewn,
                                              const VerificationOptions& opt = {});

struct VerificationReport {
  std::vector<double> o;
  double score = 0.0;      // (3/2) sum o_i
  double threshold = 0.0;  // eps / 2
  bool pass = false;
};
VerificationReport verify(const std::vector<double>& o, double eps);
nlohmann::json verification_to_json(const VerificationReport& r);

}  // namespace scl
