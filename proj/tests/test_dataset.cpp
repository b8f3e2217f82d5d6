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


#include <cmath>
#include <map>
#include <sstream>

#include "catch_amalgamated.hpp"
#include "scl/dataset.hpp"
#include "scl/gates.hpp"
#include "scl/heisenberg.hpp"
#include "scl/stabilizer.hpp"
#include "scl/statevector.hpp"

using namespace scl;

namespace {

std::string dump(const MeasurementDataset& ds) {
  std::ostringstream out;
  write_dataset(ds, out);
  return out.str();
}

Circuit bell_circuit(int n) {
  Circuit c(n);
  // CNOT (H (x) I) on (0,1) prepares a Bell pair from |00>.
  c.layers.push_back({{Gate{0, 1, gates::CNOT() * gates::kron2(gates::H(), gates::I2()), -1}}, ""});
  return c;
}

}  // namespace

TEST_CASE("identity circuit preserves eigenstates") {
  const Circuit id(3);
  const auto ds = sample_unitary_dataset(id, 3000, 4);
  int z_hits = 0, x_hits = 0, x_zero = 0;
  for (std::size_t l = 0; l < ds.size(); ++l)
    for (int q = 0; q < 3; ++q) {
      const char in = ds.inputs[l][q], out = ds.outcomes[l][q];
      const Stab so = stab_from_char(out);
      if (in == '0' && stab_basis(so) == 2) {
        ++z_hits;
        REQUIRE(out == '0');
      }
      if (in == '+' && stab_basis(so) == 2) {
        ++x_hits;
        x_zero += out == '0';
      }
      if (stab_basis(stab_from_char(in)) == stab_basis(so)) REQUIRE(in == out);
    }
  REQUIRE(z_hits > 100);
  const double freq = static_cast<double>(x_zero) / x_hits;
  REQUIRE(std::abs(freq - 0.5) < 0.05);
}

TEST_CASE("datasets are deterministic and serialize exactly") {
  const auto c = random_su4_circuit(GeometryGraph::line(5), 2, 3);
  const auto a = sample_unitary_dataset(c, 500, 77);
  const auto b = sample_unitary_dataset(c, 500, 77, 3);
  REQUIRE(dump(a) == dump(b));
  REQUIRE(dump(a) != dump(sample_unitary_dataset(c, 500, 78)));
  std::istringstream in(dump(a));
  const auto back = read_dataset(in);
  REQUIRE(dump(back) == dump(a));
  const auto s1 = sample_state_dataset(c, 300, 5), s2 = sample_state_dataset(c, 300, 5, 2);
  REQUIRE(dump(s1) == dump(s2));
  std::istringstream bad("{\"mode\":\"state\",\"n\":1,\"N\":0,\"seed\":1,"
                         "\"circuit_digest\":\"x\",\"format_version\":2}\n");
  REQUIRE_THROWS_AS(read_dataset(bad), Error);
}

TEST_CASE("state datasets") {
  const auto id = sample_state_dataset(Circuit(4), 500, 1);
  for (const auto& out : id.outcomes)
    for (char ch : out)
      if (stab_basis(stab_from_char(ch)) == 2) REQUIRE(ch == '0');
  const auto bell = sample_state_dataset(bell_circuit(3), 2000, 2);
  int both_z = 0;
  for (const auto& out : bell.outcomes) {
    const Stab a = stab_from_char(out[0]), b = stab_from_char(out[1]);
    if (stab_basis(a) == 2 && stab_basis(b) == 2) {
      ++both_z;
      REQUIRE(out[0] == out[1]);
    }
  }
  REQUIRE(both_z > 100);
}

TEST_CASE("derived pauli values") {
  const auto c = random_su4_circuit(GeometryGraph::line(4), 1, 8);
  const auto ds = sample_unitary_dataset(c, 2000, 3);
  for (const auto& p : derive_pauli_dataset(ds, PauliString::parse("X1")))
    REQUIRE((p.v == 3.0 || p.v == -3.0 || p.v == 0.0));
  for (const auto& p : derive_pauli_dataset(ds, PauliString::parse("X1Z2")))
    REQUIRE((p.v == 9.0 || p.v == -9.0 || p.v == 0.0));
  const auto id = sample_unitary_dataset(Circuit(4), 6000, 9);
  double sum = 0;
  int count = 0;
  for (const auto& p : derive_pauli_dataset(id, PauliString::parse("Z0")))
    if (p.input[0] == '0') sum += p.v, ++count;
  REQUIRE(count > 500);
  REQUIRE(std::abs(sum / count - 1.0) < 0.1);
  auto state = sample_state_dataset(c, 10, 1);
  REQUIRE_THROWS_AS(derive_pauli_dataset(state, PauliString::parse("Z0")), Error);
  REQUIRE_THROWS_AS(derive_pauli_dataset(ds, PauliString()), Error);
}

TEST_CASE("derived values are unbiased per input") {
  const auto c = random_su4_circuit(GeometryGraph::line(4), 1, 21);
  const auto ds = sample_unitary_dataset(c, 20000, 5);
  const PauliString target = PauliString::parse("Z1");
  const auto op = heisenberg_observable_exact(c, 1, 'Z');
  std::map<std::string, std::pair<double, double>> acc;  // sum, sum of squares
  std::map<std::string, int> counts;
  for (const auto& p : derive_pauli_dataset(ds, target)) {
    // Only the qubits in the observable's support matter.
    std::string key;
    for (int q : op.support) key.push_back(p.input[q]);
    acc[key].first += p.v;
    acc[key].second += p.v * p.v;
    ++counts[key];
  }
  for (const auto& [key, sums] : acc) {
    const int m = counts[key];
    if (m < 30) continue;
    std::vector<Eigen::Vector2cd> qs;
    for (char ch : key) qs.push_back(stab_vector(stab_from_char(ch)));
    QubitSet local;
    for (std::size_t t = 0; t < key.size(); ++t) local.push_back(static_cast<int>(t));
    const double exact = std::real(expectation(StateVector::product(qs), op.matrix, local));
    const double mean = sums.first / m;
    const double var = sums.second / m - mean * mean;
    const double stderr_ = std::sqrt(std::max(var, 1e-12) / m);
    REQUIRE(std::abs(mean - exact) <= 4.0 * stderr_ + 1e-12);
  }
}

TEST_CASE("measurement bases are uniform") {
  const auto c = random_su4_circuit(GeometryGraph::line(3), 2, 1);
  const auto ds = sample_unitary_dataset(c, 10000, 12);
  for (int q = 0; q < 3; ++q) {
    double counts[3] = {0, 0, 0};
    for (const auto& out : ds.outcomes) counts[stab_basis(stab_from_char(out[q]))] += 1;
    double chi2 = 0;
    for (double k : counts) chi2 += (k - 10000.0 / 3) * (k - 10000.0 / 3) / (10000.0 / 3);
    // chi-square with 2 dof: P(chi2 > 13.8) = 0.001.
    REQUIRE(chi2 < 13.8);
  }
}
