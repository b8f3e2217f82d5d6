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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "scl/circuit.hpp"
#include "scl/dataset.hpp"
#include "scl/dense.hpp"
#include "scl/geometry.hpp"

namespace scl {

// Gate slots of a fixed-architecture circuit: layer t may hold one gate
// from alphabets[alphabet[t]] on each edge of layers[t], or stay idle.
// Slot ids are flat, layer by layer.
struct SlotLayout {
  int n = 0;
  std::vector<std::vector<Edge>> layers;
  std::vector<int> alphabet;
  std::vector<std::vector<Mat4>> alphabets;

  int depth() const { return static_cast<int>(layers.size()); }
  int slot_count() const;
  int slot_layer(int slot) const;
  Edge slot_edge(int slot) const;
  const Mat4& gate(int slot, int choice) const;
  // Slots in the backward lightcone of `seeds` (ascending) and the qubits
  // they touch together with the seeds (ascending).
  std::vector<int> cone_slots(const QubitSet& seeds, QubitSet* qubits = nullptr) const;
  // Circuit on n qubits; choices[i] is the alphabet index for slots[i] or -1.
  Circuit circuit(const std::vector<int>& slots, const std::vector<int>& choices) const;
};

// Depth-d inverse of a brickwork circuit: layer t uses the edge class of
// layer d-1-t and the conjugate-transposed gate set.
SlotLayout inversion_layout(const GeometryGraph& g, int d, const std::vector<Mat4>& gateset);
// Depth-2d circuit U then V restricted to `vertices`: d brickwork layers
// from the gate set followed by the d layers of inversion_layout.
SlotLayout patch_layout(const GeometryGraph& g, int d, const std::vector<Mat4>& gateset,
                        const QubitSet& vertices);

// Reduced density matrix on a requested qubit set, in the set's order.
using RdmProvider = std::function<Mat(const QubitSet&)>;
// Partial traces of the smallest window containing the request.
RdmProvider window_rdm_provider(std::vector<DenseOperator> windows);

struct CandidateList {
  QubitSet region;
  QubitSet footprint;
  std::vector<int> slots;
  std::vector<std::vector<int>> choices;  // per candidate, per slot
  std::vector<Circuit> circuits;
  std::vector<double> scores;
  std::size_t size() const { return choices.size(); }
};

struct EnumerationLimits {
  std::size_t max_candidates = 200000;
  std::size_t max_nodes = 20000000;
};

// Assignments of the region's cone slots with score
// 1 - sum_q (1 - <0_q| V rho V^dag |0_q>) >= fid.
CandidateList enumerate_local_inversions(const RdmProvider& rdm, const SlotLayout& layout,
                                         const QubitSet& region, double fid,
                                         const EnumerationLimits& lim = {});
CandidateList enumerate_local_inversions(const DenseOperator& rdm, const SlotLayout& layout,
                                         const QubitSet& region, double fid,
                                         const EnumerationLimits& lim = {});
// Assignments of the window's cone slots whose output from |0...0>
// reproduces target on the window within tol (max entry deviation).
CandidateList enumerate_local_preparations(const DenseOperator& target, const SlotLayout& layout,
                                           double tol = 1e-8, const EnumerationLimits& lim = {});

using ConsistencyPredicate = std::function<bool(const CandidateList&, std::size_t,
                                                const CandidateList&, std::size_t)>;
// Equal choices on every shared slot.
bool slot_consistent(const CandidateList& a, std::size_t i, const CandidateList& b,
                     std::size_t j);

struct ChainAssignment {
  bool satisfiable = false;
  std::size_t blocking_position = 0;  // 1-based region index when unsatisfiable
  std::vector<std::size_t> chosen;
  std::vector<Circuit> parts;
  Circuit merged;
};

ChainAssignment solve_chain_csp(const std::vector<CandidateList>& lists,
                                const ConsistencyPredicate& consistent = slot_consistent);
Circuit merge_assignment(const ChainAssignment& assignment);

// Probability that `qubits` read 0 after running c on |0...0>, computed
// per connected component of the gate graph.
double zero_return_probability(const Circuit& c, const QubitSet& qubits);
// |<psi| Tr_anc(prep |0><0| prep^dag) |psi>| with psi = target|0^n>; the
// system qubits are the first target.n qubits of prep.
double preparation_fidelity(const Circuit& prep, const Circuit& target);

struct StateSource {
  int n = 0;
  std::function<MeasurementDataset(std::size_t, std::uint64_t)> sample;
};
StateSource circuit_state_source(const Circuit& c, int jobs = 1);

struct StateLearningOptions {
  std::string gateset = "clifford2";
  int depth = 1;
  std::size_t samples = 40000;
  int retries = 3;  // extra attempts, each doubling the sample count
  std::uint64_t seed = 1;
  bool exactify = true;
  double fid = 1.0 - 1e-6;
  int region_size = 0;  // chain region length, 0 means 3d
  EnumerationLimits limits;
  int jobs = 1;
};

struct Learned1DState {
  Circuit v;
  std::vector<QubitSet> regions;
  std::vector<std::size_t> candidate_counts;
  ChainAssignment assignment;
  double score = 0.0;  // union bound on <0^n| V rho V^dag |0^n> from the RDMs
  std::size_t samples = 0;
  int attempts = 0;
};

// Line geometry only. Throws LearningFailure when a region has no
// candidate or the chain is unsatisfiable.
Learned1DState learn_1d_state(const MeasurementDataset& ds, const GeometryGraph& g,
                              const StateLearningOptions& opt);
Learned1DState learn_1d_state(const StateSource& src, const GeometryGraph& g,
                              const StateLearningOptions& opt);

struct StripLayout {
  std::vector<QubitSet> strips;   // B regions
  std::vector<QubitSet> patches;  // A regions
  std::vector<std::vector<int>> strip_columns;
  std::vector<std::vector<int>> patch_columns;
};
// Alternating column bands A, B, A, ..., A of widths w_a and w_b on a 2D
// lattice; the last A band takes the remainder.
StripLayout strip_layout(const GeometryGraph& lattice, int w_a, int w_b);

struct Disentangled2D {
  Circuit v;
  StripLayout layout;
  std::vector<ChainAssignment> strips;
  double diagnostic = 0.0;  // union bound on <0_B| Tr_A(V psi V^dag) |0_B>
};

Disentangled2D disentangle_2d(const RdmProvider& rdm, const GeometryGraph& lattice,
                              const StripLayout& layout, const StateLearningOptions& opt);

struct PatchCircuit {
  Circuit w;  // on the lattice register; ancilla positions reuse B vertices
  QubitSet system;
  QubitSet ancilla;
};

struct PatchOptions {
  int window_height = 0;   // rows per window, 0 means 16d
  int window_overlap = 0;  // 0 means 4d
  double tol = 1e-8;
  EnumerationLimits limits;
};

// Vertices within distance 2d of the patch outside it: the ancilla columns.
QubitSet patch_ancilla_positions(const GeometryGraph& lattice, const QubitSet& patch, int d);
// Row windows of a patch: consecutive row bands with the given overlap.
std::vector<QubitSet> patch_windows(const GeometryGraph& lattice, const QubitSet& patch,
                                    int height, int overlap);
// targets are the window RDMs of the disentangled state on the patch.
PatchCircuit learn_patch_circuit(const std::vector<DenseOperator>& targets,
                                 const GeometryGraph& lattice, const QubitSet& patch, int d,
                                 const std::vector<Mat4>& gateset, const PatchOptions& opt = {});
// RDM of V|psi> on `window`, from the RDM of psi on the window plus the
// qubits reached by V's backward lightcone.
DenseOperator disentangled_rdm(const RdmProvider& rdm, const Circuit& v, const QubitSet& window);

// W_i in parallel on fresh ancilla registers, then V^dag. Ancillas are
// numbered after the system qubits, patch by patch.
Circuit assemble_state_preparation(const Circuit& v, const std::vector<PatchCircuit>& patches);

struct Learned2DState {
  Circuit prep;
  Disentangled2D disentangled;
  std::vector<PatchCircuit> patches;
  std::vector<double> patch_lambda_max;  // smallest over each patch's windows
  int strip_width = 0;
  int patch_width = 0;
  std::size_t samples = 0;
  int attempts = 0;
};

Learned2DState learn_2d_state(const StateSource& src, const GeometryGraph& lattice,
                              const StateLearningOptions& opt, int w_b = 0, int w_a = 0,
                              const PatchOptions& popt = {});

struct NoAncillaOptions {
  int block = 0;      // block length, 0 means 2d
  int net_depth = 2;  // depth of gate-set circuits searched on each B block
  double tol = 1e-8;
  int k_max = kDefaultKMax;
};

struct Learned1DNoAncilla {
  Circuit prep;
  std::vector<QubitSet> blocks;
  std::vector<double> product_defects;
  double fidelity_estimate = 0.0;  // product of the region purities' top eigenvalues
};

// Prepares the state of the ordered 1D region on the region itself.
Learned1DNoAncilla learn_1d_state_no_ancilla(const RdmProvider& rdm, const QubitSet& region,
                                             int d, const std::vector<Mat4>& gateset,
                                             const NoAncillaOptions& opt = {});
// Chain blocks A, B, A, ..., A of the given length; a trailing B joins the
// preceding A.
std::vector<QubitSet> chain_blocks(const QubitSet& region, int block);
// Windows whose RDMs learn_1d_state_no_ancilla reads: consecutive block
// triples.
std::vector<QubitSet> no_ancilla_windows(const QubitSet& region, int d,
                                         const NoAncillaOptions& opt = {});
// ||rho_AB - rho_A (x) rho_B||_1.
double correlation_defect(const RdmProvider& rdm, const QubitSet& a, const QubitSet& b);

struct ErrorBudget {
  double local_consistency = 0.0;  // 13 n eps^(1/16) + 4 n delta^(1/4)
  double approx_disentangle = 0.0;  // sqrt(2 eps + L delta)
  double final_bound = 0.0;        // 6 n^(25/32) eps0^(1/32)
  double required_eps0 = 0.0;      // eps0 with final_bound = eps
};
ErrorBudget error_budget(double eps, double delta, int n, int L, double eps0);

nlohmann::json error_budget_to_json(const ErrorBudget& b);

}  // namespace scl
