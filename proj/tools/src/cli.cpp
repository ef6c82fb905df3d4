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

#include <antsel_cli/cli.hpp>

#include <antsel/eval.hpp>
#include <antsel/ising.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace antsel::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Raised for unusable configuration values; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised for file-system failures; maps to exit code 1.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid " + what + ": '" + text + "'");
  }
}

SystemDims parse_dims(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw UsageError("--dims expects n_t,n_r,n (got '" + text + "')");
  int v[3];
  for (int i = 0; i < 3; ++i) {
    const double d = parse_number(parts[i], "--dims entry");
    if (d != std::floor(d) || d < 1 || d > 64) throw UsageError("--dims entries must be integers in [1, 64]");
    v[i] = static_cast<int>(d);
  }
  try {
    return SystemDims(v[0], v[1], v[2]);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

std::vector<Scheme> parse_schemes(const std::string& text) {
  std::vector<Scheme> schemes;
  for (const auto& name : split(text, ',')) {
    const auto s = parse_scheme(name);
    if (!s) throw UsageError("unknown scheme '" + name + "'");
    schemes.push_back(*s);
  }
  if (schemes.empty()) throw UsageError("--schemes must name at least one scheme");
  return schemes;
}

// "a:b:step" -> a, a+step, ..., up to b inclusive.
std::vector<double> parse_sweep(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("--lambda-sweep expects start:stop:step");
  const double a = parse_number(parts[0], "sweep start");
  const double b = parse_number(parts[1], "sweep stop");
  const double step = parse_number(parts[2], "sweep step");
  if (!(step > 0.0) || b < a) throw UsageError("--lambda-sweep needs step > 0 and stop >= start");
  std::vector<double> values;
  for (long k = 0;; ++k) {
    const double v = a + static_cast<double>(k) * step;
    if (v > b + 1e-9 * step) break;
    // Snap to 12 decimals so 0.1:0.9:0.1 yields 0.3 rather than 0.30000000000000004.
    values.push_back(std::round(v * 1e12) / 1e12);
    if (values.size() > 10000) throw UsageError("--lambda-sweep produces too many values");
  }
  return values;
}

SnrBackend parse_backend(const std::string& text) {
  for (auto b : {SnrBackend::kCim, SnrBackend::kQuboSa, SnrBackend::kBrute}) {
    if (to_string(b) == text) return b;
  }
  throw UsageError("unknown SNR backend '" + text + "' (cim, qubo_sa, brute)");
}

void write_file(const fs::path& path, const std::string& contents) {
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << contents;
  if (!f) throw IoError("write failed for " + path.string());
}

void persist(const fs::path& dir, const ExperimentOutput& output) {
  try {
    persist_experiment(dir, output);
  } catch (const fs::filesystem_error& e) {
    throw IoError(e.what());
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// FNV-1a over the real/imaginary parts of G in column-major order.
std::uint64_t channel_checksum(const FullChannel& ch) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  };
  const auto& g = ch.g();
  for (Eigen::Index c = 0; c < g.cols(); ++c) {
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      mix(g(r, c).real());
      mix(g(r, c).imag());
    }
  }
  return h;
}

std::string join(const std::vector<std::string>& parts) {
  std::string text;
  for (std::size_t i = 0; i < parts.size(); ++i) text += (i ? "," : "") + parts[i];
  return text;
}

// List-valued flags accept "a,b,c" on the command line and in the config file alike.
using List = std::vector<std::string>;

struct Common {
  std::string out = "results";
  std::string name;
  List dims;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_dims) {
  c.dims = split(default_dims, ',');
  cmd->add_option("--dims", c.dims, "n_t,n_r,n")->delimiter(',')->capture_default_str();
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", c.out, "output root directory")->envname("ANTSEL_OUT")->capture_default_str();
  cmd->add_option("--name", c.name, "experiment name (output sub-directory)");
  cmd->add_option("--threads", c.threads, "worker threads (0 = all cores); results do not depend on it");
}

struct SnrArgs {
  Common common;
  List schemes{"es", "nsa", "rs"};
  std::size_t trials = 100;
  std::string sweep;
  double lambda = CimParams{}.lambda;
  int anneals = 200;
  int steps = CimParams{}.steps;
  int substeps = CimParams{}.substeps;
  double qubo_lambda = 0.8;
  int qubo_reads = 200;
  int qubo_sweeps = 100;
};

struct CapacityArgs {
  Common common;
  List schemes{"es", "sa", "pt"};
  std::size_t trials = 100;
  double power_db = 10.0;
  std::string backend = "brute";
  double snr_lambda = CimParams{}.lambda;
  int snr_anneals = 200;
};

struct QuboArgs {
  Common common;
  double lambda = 0.8;
};

struct TraceArgs {
  Common common;
  double lambda = CimParams{}.lambda;
  int anneals = 100;
  int steps = CimParams{}.steps;
  int substeps = CimParams{}.substeps;
};

fs::path target_dir(const Common& c, const std::string& fallback_name) {
  return fs::path(c.out) / (c.name.empty() ? fallback_name : c.name);
}

void run_snr(const SnrArgs& a, std::ostream& out) {
  SnrExperimentConfig cfg;
  cfg.name = a.common.name.empty() ? "snr" : a.common.name;
  cfg.dims = parse_dims(join(a.common.dims));
  cfg.schemes = parse_schemes(join(a.schemes));
  if (!a.sweep.empty()) cfg.lambdas = parse_sweep(a.sweep);
  cfg.cim.lambda = a.lambda;
  cfg.cim.anneals = a.anneals;
  cfg.cim.steps = a.steps;
  cfg.cim.substeps = a.substeps;
  cfg.qubo_lambda = a.qubo_lambda;
  cfg.qubo_sa.reads = a.qubo_reads;
  cfg.qubo_sa.sweeps = a.qubo_sweeps;
  cfg.trials = a.trials;
  cfg.master_seed = a.common.seed;
  cfg.threads = a.common.threads;

  ExperimentOutput result;
  try {
    result = run_snr_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const fs::path dir = target_dir(a.common, cfg.name);
  persist(dir, result);

  std::ostringstream sweep;
  sweep << "scheme,lambda,e_rho,p_c\n";
  for (const auto& s : result.summaries) {
    if (!s.lambda) continue;
    sweep << s.scheme << ',' << format_double(*s.lambda) << ',' << format_double(s.e_rho) << ','
          << format_double(s.p_c) << '\n';
  }
  write_file(dir / "lambda_sweep.csv", sweep.str());

  for (const auto& s : result.summaries) {
    out << s.scheme;
    if (s.lambda) out << " (lambda " << format_double(*s.lambda) << ")";
    out << ": E_rho " << s.e_rho << ", P_c " << s.p_c << '\n';
  }
  out << "wrote " << dir.string() << '\n';
}

void run_capacity(const CapacityArgs& a, std::ostream& out) {
  CapacityExperimentConfig cfg;
  cfg.name = a.common.name.empty() ? "capacity" : a.common.name;
  cfg.dims = parse_dims(join(a.common.dims));
  cfg.schemes = parse_schemes(join(a.schemes));
  cfg.power_db = a.power_db;
  cfg.snr_backend = parse_backend(a.backend);
  cfg.snr_params.cim.lambda = a.snr_lambda;
  cfg.snr_params.cim.anneals = a.snr_anneals;
  cfg.trials = a.trials;
  cfg.master_seed = a.common.seed;
  cfg.threads = a.common.threads;

  ExperimentOutput result;
  try {
    result = run_capacity_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const fs::path dir = target_dir(a.common, cfg.name);
  persist(dir, result);

  std::ostringstream table;
  table << "scheme,dims,mean_evaluations\n";
  for (const auto& s : result.summaries) {
    table << s.scheme << ',' << cfg.dims.n_t() << 'x' << cfg.dims.n_r() << 'x' << cfg.dims.n() << ','
          << format_double(s.mean_evaluations) << '\n';
  }
  write_file(dir / "evaluations.csv", table.str());

  out << "P/N_T = " << cfg.p_over_nt() << " (linear)\n";
  for (const auto& s : result.summaries) {
    out << s.scheme << ": mean capacity " << s.e_rho << " bit/s/Hz, evaluations " << s.mean_evaluations
        << '\n';
  }
  out << "wrote " << dir.string() << '\n';
}

void run_qubo_export(const QuboArgs& a, std::ostream& out) {
  const SystemDims dims = parse_dims(join(a.common.dims));
  if (!(a.lambda >= 0.0 && a.lambda <= 1.0)) throw UsageError("--lambda must lie in [0, 1]");
  Rng rng(derive_seed(a.common.seed, 0));
  const FullChannel ch = sample_channel(dims, rng);
  const QuboProblem qubo = build_qubo(build_objective(ch), build_constraint(dims), a.lambda);
  const std::string text = serialize_qubo(qubo);

  const fs::path dir = target_dir(a.common, "qubo");
  write_file(dir / "qubo.txt", text);
  json sidecar{{"dims", {{"n_t", dims.n_t()}, {"n_r", dims.n_r()}, {"n", dims.n()}}},
               {"lambda", a.lambda},
               {"seed", a.common.seed},
               {"sense", "minimize"},
               {"variables", qubo.size()},
               {"channel_checksum", hex64(channel_checksum(ch))}};
  write_file(dir / "qubo.json", sidecar.dump(2) + "\n");
  out << "wrote " << (dir / "qubo.txt").string() << " (" << qubo.size() << " variables)\n";
}

void run_cim_trace(const TraceArgs& a, std::ostream& out) {
  const SystemDims dims = parse_dims(join(a.common.dims));
  CimParams params;
  params.lambda = a.lambda;
  params.anneals = a.anneals;
  params.steps = a.steps;
  params.substeps = a.substeps;
  try {
    params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Rng channel_rng(derive_seed(a.common.seed, 0));
  const FullChannel ch = sample_channel(dims, channel_rng);
  Rng rng(derive_seed(a.common.seed, 1));
  const auto trace = cim_trace(ch, params, rng);

  std::ostringstream csv;
  csv << "step,e_rho,p_c\n";
  for (const auto& p : trace) {
    csv << p.step << ',' << format_double(p.e_rho) << ',' << format_double(p.p_c) << '\n';
  }
  const fs::path dir = target_dir(a.common, "cim_trace");
  write_file(dir / "trace.csv", csv.str());
  json echo{{"dims", {{"n_t", dims.n_t()}, {"n_r", dims.n_r()}, {"n", dims.n()}}},
            {"seed", a.common.seed},
            {"lambda", params.lambda},
            {"anneals", params.anneals},
            {"steps", params.steps},
            {"substeps", params.substeps},
            {"dt", params.dt},
            {"es_optimum", es_select(ch, ObjectiveKind::kSnr, 0.0).objective}};
  write_file(dir / "trace.json", echo.dump(2) + "\n");
  out << "final step: E_rho " << trace.back().e_rho << ", P_c " << trace.back().p_c << '\n';
  out << "wrote " << (dir / "trace.csv").string() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"antsel: antenna-configuration selection experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI configuration file; command-line flags take precedence");

  SnrArgs snr;
  auto* snr_cmd = app.add_subcommand("snr", "SNR experiment: ES, NSA, RS, CIM, QUBO-SA");
  add_common(snr_cmd, snr.common, "2,2,2");
  snr_cmd->add_option("--schemes", snr.schemes, "comma list of es,nsa,rs,cim,qubo_sa")
      ->delimiter(',')
      ->capture_default_str();
  snr_cmd->add_option("--trials", snr.trials, "channel realisations")->capture_default_str();
  snr_cmd->add_option("--lambda-sweep", snr.sweep, "start:stop:step penalty sweep for cim/qubo_sa");
  snr_cmd->add_option("--lambda", snr.lambda, "CIM penalty weight")->capture_default_str();
  snr_cmd->add_option("--anneals", snr.anneals, "CIM anneals per channel")->capture_default_str();
  snr_cmd->add_option("--steps", snr.steps, "CIM time-steps per anneal")->capture_default_str();
  snr_cmd->add_option("--substeps", snr.substeps, "Euler sub-steps per CIM time-step")->capture_default_str();
  snr_cmd->add_option("--qubo-lambda", snr.qubo_lambda, "QUBO penalty weight")->capture_default_str();
  snr_cmd->add_option("--qubo-reads", snr.qubo_reads, "QUBO-SA reads per channel")->capture_default_str();
  snr_cmd->add_option("--qubo-sweeps", snr.qubo_sweeps, "QUBO-SA sweeps per read")->capture_default_str();

  CapacityArgs cap;
  auto* cap_cmd = app.add_subcommand("capacity", "capacity experiment: ES, SA, PT, SE, DES, NSA, RS, SNR");
  add_common(cap_cmd, cap.common, "3,3,5");
  cap_cmd->add_option("--schemes", cap.schemes, "comma list of es,sa,pt,se,des,nsa,rs,snr")
      ->delimiter(',')
      ->capture_default_str();
  cap_cmd->add_option("--trials", cap.trials, "channel realisations")->capture_default_str();
  cap_cmd->add_option("--power-db", cap.power_db, "P/N_T in dB")->capture_default_str();
  cap_cmd->add_option("--snr-backend", cap.backend, "solver behind 'snr': brute, cim, qubo_sa")->capture_default_str();
  cap_cmd->add_option("--snr-lambda", cap.snr_lambda, "CIM penalty weight for the cim backend")->capture_default_str();
  cap_cmd->add_option("--snr-anneals", cap.snr_anneals, "CIM anneals for the cim backend")->capture_default_str();

  QuboArgs qubo;
  auto* qubo_cmd = app.add_subcommand("qubo-export", "write the QUBO of one seeded channel");
  add_common(qubo_cmd, qubo.common, "2,2,2");
  qubo_cmd->add_option("--lambda", qubo.lambda, "QUBO penalty weight")->capture_default_str();

  TraceArgs trace;
  auto* trace_cmd = app.add_subcommand("cim-trace", "per-time-step CIM E_rho / P_c on one seeded channel");
  add_common(trace_cmd, trace.common, "3,3,3");
  trace_cmd->add_option("--lambda", trace.lambda, "CIM penalty weight")->capture_default_str();
  trace_cmd->add_option("--anneals", trace.anneals, "anneals averaged per step")->capture_default_str();
  trace_cmd->add_option("--steps", trace.steps, "time-steps")->capture_default_str();
  trace_cmd->add_option("--substeps", trace.substeps, "Euler sub-steps per time-step")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*snr_cmd) {
      run_snr(snr, out);
    } else if (*cap_cmd) {
      run_capacity(cap, out);
    } else if (*qubo_cmd) {
      run_qubo_export(qubo, out);
    } else if (*trace_cmd) {
      run_cim_trace(trace, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace antsel::cli
