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

#include <antsel/errors.hpp>
#include <antsel/eval.hpp>
#include <antsel/ising.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace antsel {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kChannelStream = 0;

std::uint64_t scheme_stream(Scheme scheme, std::size_t lambda_index) {
  return 1 + static_cast<std::uint64_t>(scheme) * 1000 + lambda_index;
}

template <class Fn>
auto parallel_trials(std::size_t trials, unsigned threads, Fn fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out(trials);
  unsigned workers = threads ? threads : std::max(1U, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(trials, 1)));

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials) return;
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::string sanitize(std::string text) {
  for (char& c : text) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ';';
  }
  return text;
}

std::string key_of(const std::string& scheme, const std::optional<double>& lambda) {
  return lambda ? scheme + "_lambda" + format_double(*lambda) : scheme;
}

struct TrialOutput {
  std::vector<TrialRecord> records;
  // Occurrence tables keyed like summaries; only sampling solvers fill these.
  std::vector<std::pair<std::string, OccurrenceTable>> occurrences;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

TrialRecord make_record(std::uint64_t trial, std::uint64_t seed, std::string scheme,
                        ObjectiveKind kind, std::optional<double> lambda) {
  TrialRecord r;
  r.trial_index = trial;
  r.seed = seed;
  r.scheme = std::move(scheme);
  r.objective = kind;
  r.lambda = lambda;
  return r;
}

TrialRecord failed_record(TrialRecord r, const std::exception& e) {
  r.value = std::nan("");
  r.feasible = false;
  r.feasible_rate = 0.0;
  r.flags = sanitize(std::string("error: ") + e.what());
  return r;
}

std::vector<MetricsSummary> summarize(const std::vector<TrialOutput>& trials) {
  std::vector<MetricsSummary> summaries;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::size_t> occurrence_counts;
  for (const auto& trial : trials) {
    for (const auto& r : trial.records) {
      const std::string key = key_of(r.scheme, r.lambda);
      auto [it, inserted] = index.try_emplace(key, summaries.size());
      if (inserted) {
        MetricsSummary s;
        s.scheme = r.scheme;
        s.objective = r.objective;
        s.lambda = r.lambda;
        summaries.push_back(std::move(s));
      }
      auto& s = summaries[it->second];
      s.values.push_back(r.value);
      s.p_c += r.feasible_rate;
      s.mean_evaluations += static_cast<double>(r.evaluations);
      ++s.trials;
    }
    for (const auto& [key, table] : trial.occurrences) {
      auto& s = summaries.at(index.at(key));
      if (s.p_oc.size() < table.ranks.size()) s.p_oc.resize(table.ranks.size(), 0.0);
      for (std::size_t r = 0; r < table.ranks.size(); ++r) s.p_oc[r] += table.ranks[r].probability;
      s.p_oc_infeasible += table.infeasible_mass;
      ++occurrence_counts[key];
    }
  }
  for (auto& s : summaries) {
    double sum = 0.0;
    std::size_t finite = 0;
    for (double v : s.values) {
      if (std::isfinite(v)) {
        sum += v;
        ++finite;
      }
    }
    s.e_rho = finite ? sum / static_cast<double>(finite) : std::nan("");
    s.p_c /= static_cast<double>(s.trials);
    s.mean_evaluations /= static_cast<double>(s.trials);
    const auto oc = occurrence_counts.find(key_of(s.scheme, s.lambda));
    if (oc != occurrence_counts.end()) {
      const double count = static_cast<double>(oc->second);
      for (double& p : s.p_oc) p /= count;
      s.p_oc_infeasible /= count;
    }
  }
  return summaries;
}

ExperimentOutput assemble(std::vector<TrialOutput> trials, std::string config_json) {
  ExperimentOutput out;
  out.summaries = summarize(trials);
  for (auto& t : trials) {
    for (auto& r : t.records) out.records.push_back(std::move(r));
  }
  out.config_json = std::move(config_json);
  return out;
}

json dims_json(const SystemDims& d) { return json{{"n_t", d.n_t()}, {"n_r", d.n_r()}, {"n", d.n()}}; }

json cim_json(const CimParams& p) {
  return json{{"pump", p.pump},       {"beta", p.beta},
              {"a", p.target_amplitude}, {"gamma", p.coupling_slope},
              {"dt", p.dt},           {"steps", p.steps}, {"substeps", p.substeps},
              {"anneals", p.anneals}, {"lambda", p.lambda},
              {"init_amplitude", p.init_amplitude}, {"e_floor", p.e_floor}};
}

json qubo_sa_json(const QuboSaParams& p) {
  return json{{"reads", p.reads}, {"sweeps", p.sweeps}, {"t_hot", p.t_hot}, {"t_cold", p.t_cold}};
}

json schemes_json(const std::vector<Scheme>& schemes) {
  json arr = json::array();
  for (auto s : schemes) arr.push_back(std::string(to_string(s)));
  return arr;
}

void check_trials(std::size_t trials, const std::vector<Scheme>& schemes) {
  if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");
  if (schemes.empty()) throw std::invalid_argument("experiment needs at least one scheme");
}

}  // namespace

std::string_view to_string(Scheme scheme) noexcept {
  switch (scheme) {
    case Scheme::kEs: return "es";
    case Scheme::kNsa: return "nsa";
    case Scheme::kRs: return "rs";
    case Scheme::kCim: return "cim";
    case Scheme::kQuboSa: return "qubo_sa";
    case Scheme::kSa: return "sa";
    case Scheme::kPt: return "pt";
    case Scheme::kSe: return "se";
    case Scheme::kDecoupledEs: return "des";
    case Scheme::kSnrBased: return "snr";
  }
  return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  for (int i = 0; i <= static_cast<int>(Scheme::kSnrBased); ++i) {
    const auto s = static_cast<Scheme>(i);
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, end);
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) {
  return derive_seed(master_seed, trial_index);
}

double CapacityExperimentConfig::p_over_nt() const { return db_to_linear(power_db); }

EmpiricalCdf::EmpiricalCdf(std::vector<double> values) : sorted_(std::move(values)) {
  if (sorted_.empty()) throw std::invalid_argument("empirical CDF of an empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto below = std::lower_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(below) / static_cast<double>(sorted_.size());
}

double EmpiricalCdf::at_or_below(double x) const {
  const auto upto = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(upto) / static_cast<double>(sorted_.size());
}

std::vector<EmpiricalCdf::Point> EmpiricalCdf::breakpoints() const {
  std::vector<Point> points;
  for (std::size_t i = 0; i < sorted_.size();) {
    std::size_t j = i;
    while (j < sorted_.size() && sorted_[j] == sorted_[i]) ++j;
    const double n = static_cast<double>(sorted_.size());
    points.push_back(Point{sorted_[i], static_cast<double>(i) / n, static_cast<double>(j) / n});
    i = j;
  }
  return points;
}

EmpiricalCdf empirical_cdf(std::vector<double> values) { return EmpiricalCdf(std::move(values)); }

double kolmogorov_distance(const EmpiricalCdf& a, const EmpiricalCdf& b) {
  double d = 0.0;
  for (const auto* cdf : {&a, &b}) {
    for (double x : cdf->sorted()) {
      d = std::max(d, std::abs(a(x) - b(x)));
      d = std::max(d, std::abs(a.at_or_below(x) - b.at_or_below(x)));
    }
  }
  return d;
}

OccurrenceTable occurrence_ranking(std::span<const OccurrenceSample> samples) {
  OccurrenceTable table;
  if (samples.empty()) return table;
  struct Tally {
    double q0 = 0.0;
    std::size_t count = 0;
  };
  std::map<Configuration, Tally> groups;
  std::size_t infeasible = 0;
  for (const auto& s : samples) {
    if (!s.feasible) {
      ++infeasible;
      continue;
    }
    auto& t = groups[s.config];
    t.q0 = s.q0;
    ++t.count;
  }
  const double total = static_cast<double>(samples.size());
  for (const auto& [cfg, tally] : groups) {
    table.ranks.push_back(OccurrenceEntry{cfg, tally.q0, static_cast<double>(tally.count) / total});
  }
  // groups is already in lexicographic order; a stable sort keeps it for ties.
  std::stable_sort(table.ranks.begin(), table.ranks.end(),
                   [](const OccurrenceEntry& x, const OccurrenceEntry& y) { return x.q0 > y.q0; });
  table.infeasible_mass = static_cast<double>(infeasible) / total;
  return table;
}

ExperimentOutput run_snr_experiment(const SnrExperimentConfig& config) {
  check_trials(config.trials, config.schemes);
  config.cim.validate();
  config.qubo_sa.validate();
  for (Scheme s : config.schemes) {
    if (s != Scheme::kEs && s != Scheme::kNsa && s != Scheme::kRs && s != Scheme::kCim &&
        s != Scheme::kQuboSa) {
      throw std::invalid_argument("scheme '" + std::string(to_string(s)) +
                                  "' is not an SNR-experiment scheme");
    }
  }
  for (double l : config.lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw std::invalid_argument("lambda values must lie in [0, 1]");
  }
  const std::vector<double> cim_lambdas =
      config.lambdas.empty() ? std::vector<double>{config.cim.lambda} : config.lambdas;
  const std::vector<double> qubo_lambdas =
      config.lambdas.empty() ? std::vector<double>{config.qubo_lambda} : config.lambdas;
  const auto& dims = config.dims;

  auto run_trial = [&](std::size_t t) {
    TrialOutput out;
    const std::uint64_t seed = trial_seed(config.master_seed, t);
    Rng channel_rng(derive_seed(seed, kChannelStream));
    const FullChannel ch = sample_channel(dims, channel_rng);

    for (Scheme scheme : config.schemes) {
      const std::string name(to_string(scheme));
      switch (scheme) {
        case Scheme::kEs:
        case Scheme::kNsa:
        case Scheme::kRs: {
          Rng rng(derive_seed(seed, scheme_stream(scheme, 0)));
          TrialRecord r = make_record(t, seed, name, ObjectiveKind::kSnr, std::nullopt);
          Stopwatch clock;
          try {
            if (scheme == Scheme::kEs) {
              const SolverResult res = es_select(ch, ObjectiveKind::kSnr, 0.0);
              r.value = res.objective;
              r.evaluations = res.evaluations;
            } else {
              const Configuration cfg = scheme == Scheme::kNsa ? nsa_select(ch) : rs_select(dims, rng);
              r.value = snr_objective(ch, cfg);
            }
          } catch (const std::exception& e) {
            r = failed_record(std::move(r), e);
          }
          r.wall_time_s = clock.seconds();
          out.records.push_back(std::move(r));
          break;
        }
        case Scheme::kCim:
          for (std::size_t li = 0; li < cim_lambdas.size(); ++li) {
            const double lambda = cim_lambdas[li];
            Rng rng(derive_seed(seed, scheme_stream(scheme, li)));
            TrialRecord best = make_record(t, seed, "cim_best", ObjectiveKind::kSnr, lambda);
            TrialRecord avg = make_record(t, seed, "cim_avg", ObjectiveKind::kSnr, lambda);
            Stopwatch clock;
            try {
              CimParams params = config.cim;
              params.lambda = lambda;
              const CimSolveResult res = cim_select(ch, params, rng);
              best.value = res.best_q0;
              best.feasible = !res.best_is_fallback;
              best.feasible_rate = res.feasible_fraction;
              best.evaluations = static_cast<std::uint64_t>(params.anneals);
              if (res.best_is_fallback) best.flags = "fallback";
              avg.value = res.average_q0;
              avg.feasible = res.feasible_fraction > 0.0;
              avg.feasible_rate = res.feasible_fraction;
              avg.evaluations = best.evaluations;

              std::vector<OccurrenceSample> samples;
              samples.reserve(res.per_anneal.size());
              for (const auto& a : res.per_anneal) samples.push_back({a.config, a.q0, a.feasible});
              const OccurrenceTable table = occurrence_ranking(samples);
              out.occurrences.emplace_back(key_of(best.scheme, lambda), table);
              out.occurrences.emplace_back(key_of(avg.scheme, lambda), table);
            } catch (const std::exception& e) {
              best = failed_record(std::move(best), e);
              avg = failed_record(std::move(avg), e);
            }
            best.wall_time_s = avg.wall_time_s = clock.seconds();
            out.records.push_back(std::move(best));
            out.records.push_back(std::move(avg));
          }
          break;
        case Scheme::kQuboSa:
          for (std::size_t li = 0; li < qubo_lambdas.size(); ++li) {
            const double lambda = qubo_lambdas[li];
            Rng rng(derive_seed(seed, scheme_stream(scheme, li)));
            TrialRecord r = make_record(t, seed, name, ObjectiveKind::kSnr, lambda);
            Stopwatch clock;
            try {
              const auto reads = qubo_sample(ch, lambda, config.qubo_sa, rng);
              std::vector<OccurrenceSample> samples;
              std::optional<std::size_t> best;
              for (const auto& read : reads) {
                OccurrenceSample s;
                if (read) {
                  s.config = *read;
                  s.q0 = snr_objective(ch, *read);
                  s.feasible = true;
                  if (!best || s.q0 > samples[*best].q0) best = samples.size();
                }
                samples.push_back(std::move(s));
              }
              const OccurrenceTable table = occurrence_ranking(samples);
              r.evaluations = reads.size();
              r.feasible_rate = 1.0 - table.infeasible_mass;
              if (best) {
                r.value = samples[*best].q0;
              } else {
                r.value = snr_objective(ch, random_configuration(dims, rng));
                r.feasible = false;
                r.flags = "fallback";
              }
              out.occurrences.emplace_back(key_of(name, lambda), table);
            } catch (const std::exception& e) {
              r = failed_record(std::move(r), e);
            }
            r.wall_time_s = clock.seconds();
            out.records.push_back(std::move(r));
          }
          break;
        default:
          break;
      }
    }
    return out;
  };

  json cfg{{"experiment", "snr"},
           {"name", config.name},
           {"dims", dims_json(dims)},
           {"schemes", schemes_json(config.schemes)},
           {"lambdas", config.lambdas},
           {"cim", cim_json(config.cim)},
           {"qubo_lambda", config.qubo_lambda},
           {"qubo_sa", qubo_sa_json(config.qubo_sa)},
           {"trials", config.trials},
           {"master_seed", config.master_seed}};
  return assemble(parallel_trials(config.trials, config.threads, run_trial), cfg.dump());
}

ExperimentOutput run_capacity_experiment(const CapacityExperimentConfig& config) {
  check_trials(config.trials, config.schemes);
  for (Scheme s : config.schemes) {
    if (s == Scheme::kCim || s == Scheme::kQuboSa) {
      throw std::invalid_argument("scheme '" + std::string(to_string(s)) +
                                  "' is not a capacity-experiment scheme (use 'snr')");
    }
  }
  config.sa.validate();
  config.pt.validate();
  const double p = config.p_over_nt();
  const auto& dims = config.dims;

  auto run_trial = [&](std::size_t t) {
    TrialOutput out;
    const std::uint64_t seed = trial_seed(config.master_seed, t);
    Rng channel_rng(derive_seed(seed, kChannelStream));
    const FullChannel ch = sample_channel(dims, channel_rng);

    for (Scheme scheme : config.schemes) {
      Rng rng(derive_seed(seed, scheme_stream(scheme, 0)));
      TrialRecord r = make_record(t, seed, std::string(to_string(scheme)), ObjectiveKind::kCapacity,
                                  std::nullopt);
      Stopwatch clock;
      try {
        SolverResult res;
        switch (scheme) {
          case Scheme::kEs: res = es_select(ch, ObjectiveKind::kCapacity, p); break;
          case Scheme::kSa: res = sa_select(ch, p, config.sa, rng); break;
          case Scheme::kPt: res = pt_select(ch, p, config.pt, rng); break;
          case Scheme::kSe: res = se_select(ch, p); break;
          case Scheme::kDecoupledEs: res = decoupled_es_select(ch, p); break;
          case Scheme::kSnrBased: {
            res = snr_based_select(ch, config.snr_backend, config.snr_params, rng);
            res.objective = capacity_objective(ch, res.config, p);
            break;
          }
          case Scheme::kNsa:
            res.config = nsa_select(ch);
            res.objective = capacity_objective(ch, res.config, p);
            break;
          case Scheme::kRs:
            res.config = rs_select(dims, rng);
            res.objective = capacity_objective(ch, res.config, p);
            break;
          default: break;
        }
        r.value = res.objective;
        r.evaluations = res.evaluations;
        r.feasible_rate = res.feasible_rate;
        if (res.fallback) r.flags = "fallback";
      } catch (const std::exception& e) {
        r = failed_record(std::move(r), e);
      }
      r.wall_time_s = clock.seconds();
      out.records.push_back(std::move(r));
    }
    return out;
  };

  json cfg{{"experiment", "capacity"},
           {"name", config.name},
           {"dims", dims_json(dims)},
           {"schemes", schemes_json(config.schemes)},
           {"power_db", config.power_db},
           {"p_over_nt", p},
           {"sa",
            {{"tau", config.sa.tau},
             {"alpha", config.sa.alpha},
             {"eps", config.sa.eps},
             {"k_steps", config.sa.stage_length(dims)}}},
           {"pt",
            {{"taus", config.pt.taus},
             {"steps_per_epoch", config.pt.steps_per_epoch},
             {"epochs", config.pt.epochs}}},
           {"snr_backend", std::string(to_string(config.snr_backend))},
           {"snr_cim", cim_json(config.snr_params.cim)},
           {"snr_qubo_lambda", config.snr_params.qubo_lambda},
           {"snr_qubo_sa", qubo_sa_json(config.snr_params.qubo_sa)},
           {"trials", config.trials},
           {"master_seed", config.master_seed}};
  return assemble(parallel_trials(config.trials, config.threads, run_trial), cfg.dump());
}

DecouplingResult run_decoupling_experiment(const SystemDims& dims, double total_power_db,
                                           std::size_t trials, std::uint64_t master_seed,
                                           unsigned threads) {
  if (trials < 1) throw std::invalid_argument("experiment needs at least one trial");
  const double total_power = db_to_linear(total_power_db);
  struct Row {
    double snr_joint, snr_config, cap_joint, cap_config;
  };
  const auto rows = parallel_trials(trials, threads, [&](std::size_t t) {
    Rng rng(derive_seed(trial_seed(master_seed, t), kChannelStream));
    const FullChannel ch = sample_channel(dims, rng);
    return Row{joint_es_select(ch, ObjectiveKind::kSnr, total_power).objective,
               es_then_power_select(ch, ObjectiveKind::kSnr, total_power).objective,
               joint_es_select(ch, ObjectiveKind::kCapacity, total_power).objective,
               es_then_power_select(ch, ObjectiveKind::kCapacity, total_power).objective};
  });
  DecouplingResult out;
  for (const auto& r : rows) {
    out.snr_joint.push_back(r.snr_joint);
    out.snr_config.push_back(r.snr_config);
    out.capacity_joint.push_back(r.cap_joint);
    out.capacity_config.push_back(r.cap_config);
  }
  out.ks_snr = kolmogorov_distance(EmpiricalCdf(out.snr_joint), EmpiricalCdf(out.snr_config));
  out.ks_capacity =
      kolmogorov_distance(EmpiricalCdf(out.capacity_joint), EmpiricalCdf(out.capacity_config));
  return out;
}

void write_trials_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << "trial,seed,scheme,objective,lambda,value,feasible,feasible_rate,evaluations,flags\n";
  for (const auto& r : records) {
    out << r.trial_index << ',' << r.seed << ',' << r.scheme << ',' << to_string(r.objective) << ','
        << (r.lambda ? format_double(*r.lambda) : std::string()) << ',' << format_double(r.value) << ','
        << (r.feasible ? 1 : 0) << ',' << format_double(r.feasible_rate) << ',' << r.evaluations << ','
        << r.flags << '\n';
  }
}

void write_timing_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << "trial,scheme,lambda,wall_time_s\n";
  for (const auto& r : records) {
    out << r.trial_index << ',' << r.scheme << ','
        << (r.lambda ? format_double(*r.lambda) : std::string()) << ',' << format_double(r.wall_time_s)
        << '\n';
  }
}

void write_cdf_csv(std::ostream& out, const EmpiricalCdf& cdf) {
  out << "x,below,at_or_below\n";
  for (const auto& p : cdf.breakpoints()) {
    out << format_double(p.x) << ',' << format_double(p.below) << ',' << format_double(p.at_or_below)
        << '\n';
  }
}

std::string summary_json(const ExperimentOutput& output) {
  json doc;
  doc["config"] = output.config_json.empty() ? json::object() : json::parse(output.config_json);
  json summaries = json::array();
  for (const auto& s : output.summaries) {
    json entry{{"scheme", s.scheme},
               {"objective", std::string(to_string(s.objective))},
               {"trials", s.trials},
               {"e_rho", s.e_rho},
               {"p_c", s.p_c},
               {"mean_evaluations", s.mean_evaluations}};
    entry["lambda"] = s.lambda ? json(*s.lambda) : json(nullptr);
    if (!s.p_oc.empty() || s.p_oc_infeasible > 0.0) {
      entry["p_oc"] = s.p_oc;
      entry["p_oc_infeasible"] = s.p_oc_infeasible;
    }
    summaries.push_back(std::move(entry));
  }
  doc["summaries"] = std::move(summaries);
  return doc.dump(2) + "\n";
}

void persist_experiment(const std::filesystem::path& dir, const ExperimentOutput& output) {
  std::filesystem::create_directories(dir);
  auto open = [&](const std::string& file) {
    std::ofstream f(dir / file, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + (dir / file).string() + " for writing");
    return f;
  };
  {
    auto f = open("trials.csv");
    write_trials_csv(f, output.records);
  }
  {
    auto f = open("timing.csv");
    write_timing_csv(f, output.records);
  }
  {
    auto f = open("summary.json");
    f << summary_json(output);
  }
  for (const auto& s : output.summaries) {
    std::vector<double> finite;
    for (double v : s.values) {
      if (std::isfinite(v)) finite.push_back(v);
    }
    if (finite.empty()) continue;
    auto f = open("cdf_" + key_of(s.scheme, s.lambda) + ".csv");
    write_cdf_csv(f, EmpiricalCdf(std::move(finite)));
  }
}

}  // namespace antsel
