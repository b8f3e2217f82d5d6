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

#include "scl/dataset.hpp"
#include "scl/dense.hpp"
#include "scl/geometry.hpp"
#include "scl/pauli.hpp"

namespace scl {

struct ObservableLearningOptions {
  int max_n = 16;
  int max_k = 4;
};

// Keeps every Pauli P with 1 <= |P| <= k whose estimate
// (3^|P| / N) sum_l v_l <psi_l|P|psi_l> has magnitude at least
// 0.5 eps / (2 sqrt 2)^k; the support is the union of kept terms.
PauliObservable learn_observable_unknown_support(const std::vector<ObservableSamplePair>& pairs,
                                                 int k, double eps,
                                                 const ObservableLearningOptions& opt = {});

// Estimates every non-identity Pauli on S without thresholding.
PauliObservable learn_observable_known_support(const std::vector<ObservableSamplePair>& pairs,
                                               const QubitSet& s);

// Raw estimates on S as a base-4 coefficient vector (identity included).
std::vector<double> estimate_pauli_coefficients(const std::vector<ObservableSamplePair>& pairs,
                                                const QubitSet& s);

struct SnapResult {
  DenseOperator op;
  std::size_t index = 0;
  double distance = 0.0;
  bool low_confidence = false;
};

// Smallest pairwise spectral distance within a candidate family.
double candidate_min_gap(const std::vector<DenseOperator>& candidates);

enum class SnapMetric {
  Spectral,   // ||candidate - O||_inf
  Frobenius,  // ||candidate - O||_F, reported distance still spectral
};

struct SnapOptions {
  SnapMetric metric = SnapMetric::Spectral;
  // Project the estimate onto the Pauli strings occurring in some
  // candidate before comparing.
  bool restrict_to_span = false;
  // Skip the pairwise gap verification (caller verified the family).
  bool gap_verified = false;
};

// argmin over candidates of the chosen distance to O (first minimum
// wins). Throws if the family's gap is below min_gap. The low-confidence
// flag is raised when the spectral distance exceeds min_gap / 3.
SnapResult snap_observable_to_candidates(const PauliObservable& estimate,
                                         const std::vector<DenseOperator>& candidates,
                                         double min_gap, const SnapOptions& opt = {});

// All distinct U^dag P_i U over depth-d circuits on `region` whose gates
// come from `gateset` (applied to graph edges, lower endpoint first) or
// are idle. Enumeration order: architectures and gate indices
// lexicographic per layer.
std::vector<DenseOperator> enumerate_gateset_heisenberg_candidates(
    const std::vector<Mat4>& gateset, int d, const GeometryGraph& g, const QubitSet& region,
    int qubit, char pauli, std::size_t cap = 1000000);

struct RdmOptions {
  bool psd_projection = false;
  int max_region = 9;
};

// sigma = 2^-|R| sum_P beta_P P with beta_P the empirical mean of
// 3^|P| prod <o|P|o>, one per region.
std::vector<DenseOperator> learn_reduced_density_matrices(const MeasurementDataset& ds,
                                                          const std::vector<QubitSet>& regions,
                                                          const RdmOptions& opt = {});

// Clips negative eigenvalues and renormalizes the trace.
Mat project_psd(const Mat& m);

// Rounds the Pauli coefficients 2^k Tr(P sigma)/2^k of an estimated
// stabilizer-state RDM to {-1, 0, 1}; returns the rounded operator only
// when it is a valid density matrix proportional to a projector.
std::optional<DenseOperator> exactify_stabilizer_rdm(const DenseOperator& sigma);

}  // namespace scl
