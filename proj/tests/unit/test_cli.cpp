// Copyright 2026 The antsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <antsel/eval.hpp>
#include <antsel/ising.hpp>
#include <antsel_cli/cli.hpp>

#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace antsel;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::initializer_list<std::string> args) {
  std::vector<std::string> storage{"antsel"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : storage) argv.push_back(s.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() / ("antsel_cli_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("usage errors and help") {
    CHECK(invoke({}).code == cli::kExitUsage);
    CHECK(invoke({"bogus"}).code == cli::kExitUsage);
    CHECK(invoke({"--help"}).code == cli::kExitOk);
    CHECK(invoke({"snr", "--dims", "2,2"}).code == cli::kExitUsage);
    CHECK(invoke({"snr", "--schemes", "sa", "--trials", "1", "--out", "/nonexistent/x"}).code == cli::kExitUsage);
    CHECK(invoke({"snr", "--lambda-sweep", "0.9:0.1:0.1"}).code == cli::kExitUsage);
    CHECK(invoke({"capacity", "--snr-backend", "quantum"}).code == cli::kExitUsage);
    CHECK(invoke({"snr", "--trials", "many"}).code == cli::kExitUsage);
  }

  TEST_CASE("snr: outputs, sweep rows, byte-identical reruns") {
    TempDir tmp("snr");
    const auto root = tmp.path.string();
    auto run = [&](const std::string& name, const std::string& threads) {
      return invoke({"snr", "--dims", "2,2,2", "--schemes", "es,rs,cim", "--trials", "6", "--seed", "1",
                  "--lambda-sweep", "0.1:0.9:0.4", "--anneals", "5", "--steps", "200", "--out", root,
                  "--name", name, "--threads", threads});
    };
    REQUIRE(run("a", "1").code == cli::kExitOk);
    REQUIRE(run("b", "2").code == cli::kExitOk);
    const fs::path a = tmp.path / "a", b = tmp.path / "b";
    for (const char* f : {"trials.csv", "summary.json", "lambda_sweep.csv", "cdf_es.csv", "cdf_rs.csv"}) {
      CHECK(fs::exists(a / f));
    }
    CHECK(slurp(a / "trials.csv") == slurp(b / "trials.csv"));
    CHECK(slurp(a / "lambda_sweep.csv") == slurp(b / "lambda_sweep.csv"));
    CHECK(fs::exists(a / "timing.csv"));

    std::istringstream sweep(slurp(a / "lambda_sweep.csv"));
    std::string line;
    std::getline(sweep, line);
    CHECK(line == "scheme,lambda,e_rho,p_c");
    int rows = 0;
    while (std::getline(sweep, line)) ++rows;
    CHECK(rows == 2 * 3);  // cim_best and cim_avg at 0.1, 0.5, 0.9
  }

  TEST_CASE("capacity: evaluation table and config file") {
    TempDir tmp("cap");
    const fs::path ini = tmp.path / "run.ini";
    std::ofstream(ini) << "[capacity]\ndims = 2,2,3\nschemes = es,des,pt\ntrials = 3\npower-db = 0\n";
    const auto r = invoke({"--config", ini.string(), "capacity", "--seed", "7", "--out", tmp.path.string()});
    REQUIRE(r.code == cli::kExitOk);
    const auto dir = tmp.path / "capacity";
    const std::string table = slurp(dir / "evaluations.csv");
    CHECK(table.find("es,2x2x3,81") != std::string::npos);
    CHECK(table.find("des,2x2x3,18") != std::string::npos);
    CHECK(table.find("pt,2x2x3,80000") != std::string::npos);
    CHECK(fs::exists(dir / "cdf_pt.csv"));
    CHECK(slurp(dir / "summary.json").find("\"power_db\": 0") != std::string::npos);
  }

  TEST_CASE("output directory from the environment") {
    TempDir tmp("env");
    ::setenv("ANTSEL_OUT", tmp.path.string().c_str(), 1);
    const auto r = invoke({"snr", "--schemes", "es", "--trials", "2"});
    ::unsetenv("ANTSEL_OUT");
    REQUIRE(r.code == cli::kExitOk);
    CHECK(fs::exists(tmp.path / "snr" / "trials.csv"));
  }

  TEST_CASE("qubo-export: size, determinism, round trip") {
    TempDir tmp("qubo");
    const auto root = tmp.path.string();
    REQUIRE(invoke({"qubo-export", "--dims", "2,2,2", "--lambda", "0.8", "--seed", "3", "--out", root, "--name", "x"})
                .code == cli::kExitOk);
    REQUIRE(invoke({"qubo-export", "--dims", "2,2,2", "--lambda", "0.8", "--seed", "3", "--out", root, "--name", "y"})
                .code == cli::kExitOk);
    const std::string text = slurp(tmp.path / "x" / "qubo.txt");
    CHECK(text == slurp(tmp.path / "y" / "qubo.txt"));
    CHECK(text.rfind("qubo 8 ", 0) == 0);

    Rng rng(derive_seed(3, 0));
    const SystemDims d(2, 2, 2);
    const auto ch = sample_channel(d, rng);
    const auto expected = build_qubo(build_objective(ch), build_constraint(d), 0.8);
    const auto parsed = parse_qubo(text);
    const RMatrix folded = expected.w + expected.w.transpose();
    for (Eigen::Index i = 0; i < 8; ++i) {
      CHECK(parsed.w(i, i) == expected.w(i, i));
      for (Eigen::Index j = i + 1; j < 8; ++j) CHECK(parsed.w(i, j) + parsed.w(j, i) == folded(i, j));
    }
    const std::string sidecar = slurp(tmp.path / "x" / "qubo.json");
    CHECK(sidecar.find("\"channel_checksum\"") != std::string::npos);
    CHECK(sidecar.find("\"sense\": \"minimize\"") != std::string::npos);
  }

  TEST_CASE("cim-trace: rows and determinism") {
    TempDir tmp("trace");
    const auto root = tmp.path.string();
    for (const char* name : {"p", "q"}) {
      REQUIRE(invoke({"cim-trace", "--dims", "2,2,2", "--steps", "40", "--anneals", "4", "--seed", "2", "--out", root,
                   "--name", name})
                  .code == cli::kExitOk);
    }
    const std::string csv = slurp(tmp.path / "p" / "trace.csv");
    CHECK(csv == slurp(tmp.path / "q" / "trace.csv"));
    CHECK(csv.rfind("step,e_rho,p_c\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 41);
  }

  TEST_CASE("unwritable output is an I/O failure") {
    TempDir tmp("io");
    const fs::path blocker = tmp.path / "file";
    std::ofstream(blocker) << "x";
    const auto r = invoke({"qubo-export", "--out", blocker.string()});
    CHECK(r.code == cli::kExitIo);
    CHECK_FALSE(r.err.empty());
  }
}
