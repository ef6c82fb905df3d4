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

#pragma once

#include <antsel/annealing.hpp>
#include <antsel/channel.hpp>
#include <antsel/cim.hpp>
#include <antsel/heuristics.hpp>
#include <antsel/solver_result.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <span>
#include <string_view>
#include <vector>

namespace antsel {

enum class Scheme {
  kEs,
  kNsa,
  kRs,
  kCim,        // SNR experiment: simulated CIM (best and average records)
  kQuboSa,     // SNR experiment: SA over the QUBO form
  kSa,
  kPt,
  kSe,
  kDecoupledEs,
  kSnrBased,   // capacity experiment: SNR-surrogate selection
};

std::string_view to_string(Scheme scheme) noexcept;
/// Accepts the names produced by to_string ("es", "nsa", "rs", "cim",
/// "qubo_sa", "sa", "pt", "se", "des", "snr").
std::optional<Scheme> parse_scheme(std::string_view name);

struct TrialRecord {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  std::string scheme;  // "cim_best" / "cim_avg" for the two CIM readouts
  ObjectiveKind objective = ObjectiveKind::kSnr;
  std::optional<double> lambda;
  double value = 0.0;
  bool feasible = true;
  double feasible_rate = 1.0;
  std::uint64_t evaluations = 0;
  double wall_time_s = 0.0;
  std::string flags;  // e.g. "fallback" or an error message
};

/// Strict-inequality empirical distribution F(x) = P(X < x).
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values);

  double operator()(double x) const;
  // P(X <= x)
  double at_or_below(double x) const;
  std::size_t size() const noexcept { return sorted_.size(); }
  const std::vector<double>& sorted() const noexcept { return sorted_; }

  struct Point {
    double x;
    double below;     // F(x) = P(X < x)
    double at_or_below;  // F(x+) = P(X <= x)
  };
  // One point per distinct sample value, ascending.
  std::vector<Point> breakpoints() const;

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> values);

/// sup_x |F_a(x) - F_b(x)|.
double kolmogorov_distance(const EmpiricalCdf& a, const EmpiricalCdf& b);

struct OccurrenceSample {
  Configuration config;
  double q0 = 0.0;
  bool feasible = false;
};

struct OccurrenceEntry {
  Configuration config;
  double q0 = 0.0;
  double probability = 0.0;
};

struct OccurrenceTable {
  std::vector<OccurrenceEntry> ranks;  // descending q0, ties lexicographic
  double infeasible_mass = 0.0;        // 1 - feasibility probability
};

/// Groups feasible samples by configuration and ranks them by descending Q0.
/// Probabilities are relative to all samples, feasible or not.
OccurrenceTable occurrence_ranking(std::span<const OccurrenceSample> samples);

struct MetricsSummary {
  std::string scheme;
  ObjectiveKind objective = ObjectiveKind::kSnr;
  std::optional<double> lambda;
  std::size_t trials = 0;
  double e_rho = 0.0;              // mean objective value over channels
  double p_c = 0.0;                // mean feasibility rate
  double mean_evaluations = 0.0;
  std::vector<double> p_oc;        // rank-wise occurrence probability, averaged over channels
  double p_oc_infeasible = 0.0;
  std::vector<double> values;      // per-trial values (trial order), CDF source
};

struct SnrExperimentConfig {
  std::string name = "snr";
  SystemDims dims{2, 2, 2};
  std::vector<Scheme> schemes{Scheme::kEs, Scheme::kNsa, Scheme::kRs};
  // Sweep for the lambda-dependent schemes; empty means cim.lambda / qubo_lambda.
  std::vector<double> lambdas;
  CimParams cim;
  double qubo_lambda = 0.8;
  QuboSaParams qubo_sa{.reads = 200, .sweeps = 100};
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct CapacityExperimentConfig {
  std::string name = "capacity";
  SystemDims dims{3, 3, 5};
  std::vector<Scheme> schemes{Scheme::kEs, Scheme::kSa, Scheme::kPt};
  double power_db = 10.0;  // P / n_t in dB
  SaParams sa;
  PtParams pt;
  SnrBackend snr_backend = SnrBackend::kBrute;
  SnrBackendParams snr_params;
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;
  unsigned threads = 0;

  double p_over_nt() const;
};

struct ExperimentOutput {
  std::vector<TrialRecord> records;       // trial order, then scheme order
  std::vector<MetricsSummary> summaries;  // one per (scheme, lambda)
  std::string config_json;                // echo of the configuration
};

ExperimentOutput run_snr_experiment(const SnrExperimentConfig& config);
ExperimentOutput run_capacity_experiment(const CapacityExperimentConfig& config);

/// Joint (per-configuration power allocation) versus configuration-based
/// exhaustive search, for both objectives.
struct DecouplingResult {
  std::vector<double> snr_joint, snr_config;
  std::vector<double> capacity_joint, capacity_config;
  double ks_snr = 0.0;
  double ks_capacity = 0.0;
};
DecouplingResult run_decoupling_experiment(const SystemDims& dims, double total_power_db,
                                           std::size_t trials, std::uint64_t master_seed,
                                           unsigned threads = 0);

double db_to_linear(double db);

/// Seed of trial i, derived by counter from the master seed.
std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index);

/// trials.csv: trial,seed,scheme,objective,lambda,value,feasible,feasible_rate,evaluations,flags
void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records);
/// timing.csv: trial,scheme,lambda,wall_time_s (not reproducible by nature)
void write_timing_csv(std::ostream& out, std::span<const TrialRecord> records);
/// cdf_<scheme>.csv: x,below,at_or_below
void write_cdf_csv(std::ostream& out, const EmpiricalCdf& cdf);
std::string summary_json(const ExperimentOutput& output);

/// Writes <dir>/{trials.csv, timing.csv, summary.json, cdf_<key>.csv}.
void persist_experiment(const std::filesystem::path& dir, const ExperimentOutput& output);

/// Shortest round-trip decimal text for a double.
std::string format_double(double v);

}  // namespace antsel
