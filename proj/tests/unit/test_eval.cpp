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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace antsel;

namespace {

std::string trials_csv(const ExperimentOutput& out) {
  std::ostringstream os;
  write_trials_csv(os, out.records);
  return os.str();
}

const MetricsSummary& summary_for(const ExperimentOutput& out, std::string_view scheme,
                                  std::optional<double> lambda = std::nullopt) {
  for (const auto& s : out.summaries) {
    if (s.scheme == scheme && s.lambda == lambda) return s;
  }
  throw std::runtime_error("no summary for " + std::string(scheme));
}

}  // namespace

TEST_SUITE("eval") {
  TEST_CASE("empirical CDF conventions") {
    const EmpiricalCdf ones({1.0, 1.0, 1.0});
    CHECK(ones(1.0) == 0.0);
    CHECK(ones.at_or_below(1.0) == 1.0);
    CHECK(ones(std::nextafter(1.0, 2.0)) == 1.0);
    const EmpiricalCdf two({2.0, 1.0});
    CHECK(two(1.5) == 0.5);
    CHECK(two(0.0) == 0.0);
    CHECK(two(3.0) == 1.0);
    CHECK_THROWS_AS(EmpiricalCdf({}), std::invalid_argument);

    Rng rng(91);
    std::vector<double> values(100);
    for (auto& v : values) v = std::round(rng.normal(0.0, 3.0));
    const auto cdf = empirical_cdf(values);
    for (double x = -12.0; x <= 12.0; x += 0.5) {
      const auto below = std::count_if(values.begin(), values.end(), [x](double v) { return v < x; });
      const auto at = std::count_if(values.begin(), values.end(), [x](double v) { return v <= x; });
      CHECK(cdf(x) == doctest::Approx(below / 100.0));
      CHECK(cdf.at_or_below(x) == doctest::Approx(at / 100.0));
    }
    const auto points = cdf.breakpoints();
    for (std::size_t i = 0; i < points.size(); ++i) {
      CHECK(points[i].below <= points[i].at_or_below);
      if (i) {
        CHECK(points[i - 1].x < points[i].x);
        CHECK(points[i - 1].at_or_below == doctest::Approx(points[i].below));
      }
    }
    CHECK(points.back().at_or_below == doctest::Approx(1.0));
  }

  TEST_CASE("Kolmogorov distance") {
    const EmpiricalCdf a({1.0, 2.0, 3.0, 4.0});
    CHECK(kolmogorov_distance(a, a) == 0.0);
    CHECK(kolmogorov_distance(a, EmpiricalCdf({10.0})) == 1.0);
    CHECK(kolmogorov_distance(a, EmpiricalCdf({1.5, 2.5, 3.5, 4.5})) == doctest::Approx(0.25));
    const EmpiricalCdf b({2.0, 2.0});
    CHECK(kolmogorov_distance(a, b) == kolmogorov_distance(b, a));
    CHECK(kolmogorov_distance(a, b) == doctest::Approx(0.5));
  }

  TEST_CASE("occurrence ranking") {
    const Configuration x{{0}, {1}}, y{{1}, {0}}, z{{1}, {1}};
    const std::vector<OccurrenceSample> same(4, OccurrenceSample{x, 2.0, true});
    auto t = occurrence_ranking(same);
    REQUIRE(t.ranks.size() == 1);
    CHECK(t.ranks[0].probability == 1.0);
    CHECK(t.infeasible_mass == 0.0);

    std::vector<OccurrenceSample> mixed;
    for (int i = 0; i < 5; ++i) mixed.push_back({z, 1.0, true});
    for (int i = 0; i < 2; ++i) mixed.push_back({y, 3.0, true});
    for (int i = 0; i < 1; ++i) mixed.push_back({x, 3.0, true});
    for (int i = 0; i < 2; ++i) mixed.push_back({x, 9.0, false});
    t = occurrence_ranking(mixed);
    REQUIRE(t.ranks.size() == 3);
    CHECK(t.ranks[0].config == x);  // tie on q0, lexicographic
    CHECK(t.ranks[1].config == y);
    CHECK(t.ranks[2].config == z);
    CHECK(t.ranks[0].probability == doctest::Approx(0.1));
    CHECK(t.ranks[1].probability == doctest::Approx(0.2));
    CHECK(t.ranks[2].probability == doctest::Approx(0.5));
    CHECK(t.infeasible_mass == doctest::Approx(0.2));
    double total = t.infeasible_mass;
    for (const auto& r : t.ranks) total += r.probability;
    CHECK(std::abs(total - 1.0) <= 1e-12);
    CHECK(occurrence_ranking(std::vector<OccurrenceSample>{}).ranks.empty());
  }

  TEST_CASE("scheme names and number formatting") {
    for (Scheme s : {Scheme::kEs, Scheme::kNsa, Scheme::kRs, Scheme::kCim, Scheme::kQuboSa, Scheme::kSa,
                     Scheme::kPt, Scheme::kSe, Scheme::kDecoupledEs, Scheme::kSnrBased}) {
      CHECK(parse_scheme(to_string(s)) == s);
    }
    CHECK_FALSE(parse_scheme("bogus").has_value());
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(0.0) == 1.0);
    CapacityExperimentConfig c;
    c.power_db = 0.0;
    CHECK(c.p_over_nt() == 1.0);
    CHECK(trial_seed(1, 0) != trial_seed(1, 1));
    CHECK(trial_seed(1, 0) != trial_seed(2, 0));
  }

  TEST_CASE("SNR experiment: dominance, occurrence mass, determinism across threads") {
    SnrExperimentConfig config;
    config.dims = SystemDims(2, 2, 2);
    config.schemes = {Scheme::kEs, Scheme::kNsa, Scheme::kRs, Scheme::kCim, Scheme::kQuboSa};
    config.lambdas = {0.2, 0.8};
    config.cim.anneals = 10;
    config.cim.steps = 300;
    config.qubo_sa.reads = 20;
    config.trials = 12;
    config.master_seed = 5;
    config.threads = 1;
    const auto serial = run_snr_experiment(config);
    config.threads = 3;
    const auto threaded = run_snr_experiment(config);
    CHECK(trials_csv(serial) == trials_csv(threaded));
    CHECK(summary_json(serial) == summary_json(threaded));

    // 12 trials x (es, nsa, rs, 2 x cim_best, 2 x cim_avg, 2 x qubo_sa)
    CHECK(serial.records.size() == 12 * 9);
    const double es = summary_for(serial, "es").e_rho;
    for (const auto& s : serial.summaries) {
      CHECK(s.trials == 12);
      CHECK(s.e_rho <= es + 1e-12);
      if (!s.p_oc.empty()) {
        double mass = s.p_oc_infeasible;
        for (double p : s.p_oc) mass += p;
        CHECK(std::abs(mass - 1.0) <= 1e-12);
      }
    }
    for (std::size_t t = 0; t < 12; ++t) {
      const auto& rec = serial.records[t * 9];
      CHECK(rec.scheme == "es");
      CHECK(rec.trial_index == t);
      CHECK(rec.seed == trial_seed(5, t));
    }
    const auto& q = summary_for(serial, "qubo_sa", 0.8);
    REQUIRE_FALSE(q.p_oc.empty());
    CHECK(q.p_oc[0] == *std::max_element(q.p_oc.begin(), q.p_oc.end()));
    CHECK(summary_for(serial, "cim_avg", 0.2).p_c <= summary_for(serial, "cim_avg", 0.8).p_c);

    const auto json = summary_json(serial);
    CHECK(json.find("\"master_seed\": 5") != std::string::npos);

    config.schemes = {Scheme::kSa};
    CHECK_THROWS_AS(run_snr_experiment(config), std::invalid_argument);
    config.schemes = {Scheme::kCim};
    config.lambdas = {1.5};
    CHECK_THROWS_AS(run_snr_experiment(config), std::invalid_argument);
  }

  TEST_CASE("SNR experiment: guard violations are recorded per trial") {
    SnrExperimentConfig config;
    config.dims = SystemDims(4, 4, 10);
    config.schemes = {Scheme::kEs, Scheme::kRs};
    config.trials = 2;
    const auto out = run_snr_experiment(config);
    REQUIRE(out.records.size() == 4);
    CHECK(out.records[0].flags.rfind("error:", 0) == 0);
    CHECK(std::isnan(out.records[0].value));
    CHECK(out.records[1].flags.empty());
  }

  TEST_CASE("capacity experiment: CDF dominance, counts, determinism") {
    CapacityExperimentConfig config;
    config.dims = SystemDims(2, 2, 3);
    config.schemes = {Scheme::kEs, Scheme::kSa, Scheme::kPt, Scheme::kSe, Scheme::kDecoupledEs,
                      Scheme::kSnrBased, Scheme::kNsa, Scheme::kRs};
    config.pt.epochs = 20;
    config.trials = 10;
    config.master_seed = 3;
    config.threads = 1;
    const auto a = run_capacity_experiment(config);
    config.threads = 2;
    const auto b = run_capacity_experiment(config);
    CHECK(trials_csv(a) == trials_csv(b));

    const auto& es = summary_for(a, "es");
    const EmpiricalCdf es_cdf(es.values);
    const EmpiricalCdf rs_cdf(summary_for(a, "rs").values);
    for (double x : rs_cdf.sorted()) CHECK(es_cdf(x) <= rs_cdf(x));
    for (double x : es_cdf.sorted()) CHECK(es_cdf(x) <= rs_cdf(x));
    CHECK(es.mean_evaluations == 81.0);
    CHECK(summary_for(a, "des").mean_evaluations == 18.0);
    CHECK(summary_for(a, "pt").mean_evaluations == 2 * 200 * 20);
    for (const auto& s : a.summaries) CHECK(s.e_rho <= es.e_rho + 1e-12);

    config.schemes = {Scheme::kCim};
    CHECK_THROWS_AS(run_capacity_experiment(config), std::invalid_argument);
  }

  TEST_CASE("decoupling experiment") {
    const auto r = run_decoupling_experiment(SystemDims(2, 2, 2), 10.0, 50, 7, 2);
    REQUIRE(r.snr_joint.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
      CHECK(r.snr_joint[i] >= r.snr_config[i] - 1e-12);
      CHECK(r.capacity_joint[i] >= r.capacity_config[i] - 1e-12);
    }
    CHECK(r.ks_snr == kolmogorov_distance(EmpiricalCdf(r.snr_joint), EmpiricalCdf(r.snr_config)));
    CHECK(r.ks_capacity >= 0.0);
    CHECK(r.ks_capacity <= 1.0);
    const auto again = run_decoupling_experiment(SystemDims(2, 2, 2), 10.0, 50, 7, 1);
    CHECK(again.capacity_joint == r.capacity_joint);
  }

  TEST_CASE("CSV writers") {
    TrialRecord r;
    r.trial_index = 3;
    r.seed = 42;
    r.scheme = "cim_best";
    r.lambda = 0.5;
    r.value = 1.25;
    r.evaluations = 7;
    r.flags = "fallback";
    std::ostringstream os;
    write_trials_csv(os, std::vector<TrialRecord>{r});
    CHECK(os.str() ==
          "trial,seed,scheme,objective,lambda,value,feasible,feasible_rate,evaluations,flags\n"
          "3,42,cim_best,snr,0.5,1.25,1,1,7,fallback\n");
    std::ostringstream cdf;
    write_cdf_csv(cdf, EmpiricalCdf({1.0, 1.0, 2.0, 4.0}));
    CHECK(cdf.str() == "x,below,at_or_below\n1,0,0.5\n2,0.5,0.75\n4,0.75,1\n");
  }
}
