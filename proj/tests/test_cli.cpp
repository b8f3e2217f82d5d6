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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "scl/cli.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Runs the installed binary when SCL_CLI is set, else the in-process entry.
int run_cli(const std::string& args, const fs::path& dir) {
  if (const char* bin = std::getenv("SCL_CLI")) {
    const std::string cmd = "cd '" + dir.string() + "' && '" + bin + "' " + args + " >stdout.txt 2>stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::vector<std::string> argv;
  std::istringstream in(args);
  for (std::string a; in >> a;) argv.push_back(a);
  const fs::path cwd = fs::current_path();
  fs::current_path(dir);
  std::ofstream out("stdout.txt"), err("stderr.txt");
  const int code = scl::cli::run(argv, out, err);
  fs::current_path(cwd);
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

json load(const fs::path& p) { return json::parse(slurp(p)); }

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("scl_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("gen-circuit is deterministic") {
  const fs::path d = scratch_dir("gen");
  REQUIRE(run_cli("gen-circuit --geometry line --n 8 --depth 2 --gateset clifford2 --seed 7 --out c.json", d) == 0);
  REQUIRE(run_cli("gen-circuit --geometry line --n 8 --depth 2 --gateset clifford2 --seed 7 --out c2.json", d) == 0);
  CHECK(slurp(d / "c.json") == slurp(d / "c2.json"));
  const json c = load(d / "c.json");
  CHECK(c.at("format_version") == 1);
  CHECK(c.at("n") == 8);
  REQUIRE(run_cli("gen-circuit --geometry lattice --dims 3x4 --depth 1 --seed 1 --out l.json", d) == 0);
  CHECK(load(d / "l.json").at("n") == 12);
}

TEST_CASE("unitary pipeline end to end") {
  const fs::path d = scratch_dir("unitary");
  REQUIRE(run_cli("gen-circuit --geometry line --n 4 --depth 1 --gateset clifford2 --seed 3 --out c.json", d) == 0);
  REQUIRE(run_cli("sample --circuit c.json --mode unitary --N 4000 --seed 9 --out d.jsonl", d) == 0);
  REQUIRE(run_cli("learn-unitary --data d.jsonl --strategy geo --eps 0.1 --out learned.json", d) == 0);
  const json l = load(d / "learned.json");
  const json& oracle = l.at("report").at("oracle");
  const double lower = oracle.at("diamond_proxy").at("lower");
  CHECK(lower <= 1e-8);
  CHECK(oracle.at("diamond_proxy").at("upper").get<double>() <= 3 * oracle.at("observable_error_sum").get<double>() + 2e-8);

  REQUIRE(run_cli("verify --data d.jsonl --learned learned.json --eps 0.2 --out v.json", d) == 0);
  CHECK(load(d / "v.json").at("verdict") == "PASS");

  REQUIRE(run_cli("distance --a c.json --b c.json --out dist.json", d) == 0);
  CHECK(load(d / "dist.json").at("average_gate_distance").get<double>() < 1e-12);

  // Same arguments, same bytes.
  REQUIRE(run_cli("sample --circuit c.json --mode unitary --N 4000 --seed 9 --out d2.jsonl", d) == 0);
  CHECK(slurp(d / "d.jsonl") == slurp(d / "d2.jsonl"));
}

TEST_CASE("state learning subcommands") {
  const fs::path d = scratch_dir("state");
  REQUIRE(run_cli("gen-circuit --geometry line --n 8 --depth 2 --gateset clifford2 --seed 5 --out s.json", d) == 0);
  REQUIRE(run_cli("learn-state --mode 1d --circuit s.json --N 40000 --seed 2 --out ls.json", d) == 0);
  const json r = load(d / "ls.json");
  CHECK(r.at("diagnostics").at("final_fidelity").get<double>() >= 1 - 1e-9);
  CHECK(r.at("circuit").at("n") == 8);

  REQUIRE(run_cli("gen-circuit --geometry line --n 9 --depth 1 --gateset clifford2 --seed 5 --out s1.json", d) == 0);
  REQUIRE(run_cli("sample --circuit s1.json --mode state --N 40000 --seed 4 --out sd.jsonl", d) == 0);
  REQUIRE(run_cli("learn-state --mode no-ancilla --data sd.jsonl --out na.json", d) == 0);
  CHECK(load(d / "na.json").at("diagnostics").at("final_fidelity").get<double>() >= 1 - 1e-6);

  // Haar gates have no stabilizer RDMs to snap to.
  REQUIRE(run_cli("gen-circuit --geometry line --n 6 --depth 1 --seed 5 --out h.json", d) == 0);
  CHECK(run_cli("learn-state --mode 1d --circuit h.json --depth 1 --N 2000 --retries 0 --out x.json", d) == 2);
}

TEST_CASE("landscape CSV") {
  const fs::path d = scratch_dir("landscape");
  REQUIRE(run_cli("landscape --n 8 --S 0,1 --trials 20 --out l.csv", d) == 0);
  std::istringstream csv(slurp(d / "l.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "x,popcount,exact_cost,probed_min");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("usage errors and format checks") {
  const fs::path d = scratch_dir("usage");
  CHECK(run_cli("", d) == 1);
  CHECK(run_cli("gen-circuit --bogus 1", d) == 1);
  CHECK(run_cli("frobnicate", d) == 1);
  CHECK(run_cli("learn-unitary --data missing.jsonl", d) == 1);
  CHECK(run_cli("--help", d) == 0);

  REQUIRE(run_cli("gen-circuit --geometry line --n 3 --depth 1 --seed 1 --out c.json", d) == 0);
  json c = load(d / "c.json");
  c["format_version"] = 99;
  std::ofstream(d / "bad.json") << c.dump();
  CHECK(run_cli("distance --a c.json --b bad.json", d) == 1);
  CHECK(run_cli("sample --circuit bad.json --out x.jsonl", d) == 1);
}
