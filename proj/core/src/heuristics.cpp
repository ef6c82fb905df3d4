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
#include <antsel/heuristics.hpp>
#include <antsel/ising.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace antsel {

namespace {

std::uint64_t checked_power(int base, int exponent) {
  std::uint64_t out = 1;
  for (int i = 0; i < exponent; ++i) {
    if (out > kExhaustiveGuard) break;
    out *= static_cast<std::uint64_t>(base);
  }
  return out;
}

void guard(std::uint64_t count, const char* what) {
  if (count > kExhaustiveGuard) {
    throw RefusalError(std::string(what) + " refused: more than " + std::to_string(kExhaustiveGuard) +
                       " evaluations");
  }
}

// Advances states like an odometer (last entry fastest). Returns false after
// the last combination.
bool next_combination(std::vector<int>& states, int n) {
  for (auto it = states.rbegin(); it != states.rend(); ++it) {
    if (++*it < n) return true;
    *it = 0;
  }
  return false;
}

// Walks every configuration in lexicographic order.
template <class Visit>
void for_each_configuration(const SystemDims& dims, Visit visit) {
  std::vector<int> flat(static_cast<std::size_t>(dims.antennas()), 0);
  Configuration cfg;
  do {
    cfg.tx_states.assign(flat.begin(), flat.begin() + dims.n_t());
    cfg.rx_states.assign(flat.begin() + dims.n_t(), flat.end());
    visit(cfg);
  } while (next_combination(flat, dims.n()));
}

template <class Score>
SolverResult exhaustive(const SystemDims& dims, Score score) {
  SolverResult result;
  result.objective = -std::numeric_limits<double>::infinity();
  for_each_configuration(dims, [&](const Configuration& cfg) {
    const double v = score(cfg);
    ++result.evaluations;
    if (v > result.objective) {
      result.objective = v;
      result.config = cfg;
    }
  });
  return result;
}

// Hermitian solve of M x = rhs with a ridge fallback on ill-conditioning.
struct HermitianSolver {
  Eigen::LLT<CMatrix> llt;
  bool ridged = false;

  explicit HermitianSolver(const CMatrix& m) : llt(m) {
    if (llt.info() != Eigen::Success || llt.rcond() < 1e-12) {
      CMatrix reg = m;
      reg.diagonal().array() += 1e-10;
      llt.compute(reg);
      ridged = true;
      if (llt.info() != Eigen::Success) throw NumericError("sequential elimination: singular matrix");
    }
  }
};

double direct_log2det(const CMatrix& g, double p) {
  CMatrix m = g.adjoint() * g;
  m *= p;
  m.diagonal().array() += 1.0;
  Eigen::LLT<CMatrix> llt(m);
  if (llt.info() != Eigen::Success) throw NumericError("sequential elimination: log-det failed");
  return 2.0 * llt.matrixLLT().diagonal().real().array().log().sum() / std::log(2.0);
}

CMatrix select_rows(const CMatrix& g, const std::vector<int>& rows) {
  CMatrix out(static_cast<Eigen::Index>(rows.size()), g.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = g.row(rows[i]);
  return out;
}

// Eliminates n-1 rows in every block of n rows of g; returns the surviving
// state index per block.
std::vector<int> eliminate_rows(const CMatrix& g, int blocks, int n, double p, SeReport& report,
                                std::uint64_t& evaluations) {
  std::vector<int> alive(static_cast<std::size_t>(g.rows()));
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);

  for (int block = 0; block < blocks; ++block) {
    for (int round = 0; round + 1 < n; ++round) {
      const CMatrix current = select_rows(g, alive);
      CMatrix m = current.adjoint() * current;
      m *= p;
      m.diagonal().array() += 1.0;
      HermitianSolver solver(m);
      report.ridge_applied |= solver.ridged;

      std::size_t best_pos = 0;
      double best_loss = std::numeric_limits<double>::infinity();
      for (std::size_t pos = 0; pos < alive.size(); ++pos) {
        if (alive[pos] / n != block) continue;
        const Eigen::VectorXcd gk = g.row(alive[pos]).adjoint();
        const double quad = gk.dot(solver.llt.solve(gk)).real();
        ++evaluations;
        if (quad < best_loss) {
          best_loss = quad;
          best_pos = pos;
        }
      }

      const double before = direct_log2det(current, p);
      std::vector<int> next = alive;
      next.erase(next.begin() + static_cast<std::ptrdiff_t>(best_pos));
      const double after = direct_log2det(select_rows(g, next), p);
      const double predicted = before + std::log2(1.0 - p * best_loss);
      report.max_identity_error = std::max(report.max_identity_error, std::abs(after - predicted));
      ++report.eliminations;
      alive = std::move(next);
    }
  }
  std::vector<int> states(static_cast<std::size_t>(blocks));
  for (int r : alive) states[r / n] = r % n;
  return states;
}

}  // namespace

std::string_view to_string(ObjectiveKind kind) noexcept {
  return kind == ObjectiveKind::kSnr ? "snr" : "capacity";
}

std::string_view to_string(SnrBackend backend) noexcept {
  switch (backend) {
    case SnrBackend::kCim: return "cim";
    case SnrBackend::kQuboSa: return "qubo_sa";
    case SnrBackend::kBrute: return "brute";
  }
  return "unknown";
}

std::uint64_t es_evaluation_count(const SystemDims& dims) {
  const std::uint64_t count = checked_power(dims.n(), dims.antennas());
  guard(count, "exhaustive search");
  return count;
}

std::uint64_t decoupled_es_evaluation_count(const SystemDims& dims) {
  const std::uint64_t count = checked_power(dims.n(), dims.n_r()) + checked_power(dims.n(), dims.n_t());
  guard(count, "decoupled exhaustive search");
  return count;
}

std::uint64_t se_evaluation_count(const SystemDims& dims) {
  const std::uint64_t n = static_cast<std::uint64_t>(dims.n());
  return static_cast<std::uint64_t>(dims.antennas()) * (n * (n + 1) / 2 - 1);
}

SolverResult es_select(const FullChannel& ch, ObjectiveKind kind, double p_over_nt) {
  es_evaluation_count(ch.dims());
  if (kind == ObjectiveKind::kSnr) {
    return exhaustive(ch.dims(), [&](const Configuration& cfg) { return snr_objective(ch, cfg); });
  }
  return exhaustive(ch.dims(),
                    [&](const Configuration& cfg) { return capacity_objective(ch, cfg, p_over_nt); });
}

double power_optimized_value(const FullChannel& ch, const Configuration& cfg, ObjectiveKind kind,
                             double total_power) {
  const CMatrix h = reduce(ch, cfg);
  return kind == ObjectiveKind::kCapacity ? waterfilling(h, total_power).achieved_objective
                                          : snr_optimal_value(h, total_power);
}

SolverResult joint_es_select(const FullChannel& ch, ObjectiveKind kind, double total_power) {
  es_evaluation_count(ch.dims());
  return exhaustive(ch.dims(), [&](const Configuration& cfg) {
    return power_optimized_value(ch, cfg, kind, total_power);
  });
}

SolverResult es_then_power_select(const FullChannel& ch, ObjectiveKind kind, double total_power) {
  SolverResult result = es_select(ch, kind, total_power / ch.dims().n_t());
  result.objective = power_optimized_value(ch, result.config, kind, total_power);
  return result;
}

Configuration nsa_select(const FullChannel& ch, LinkEnd order) {
  const auto& dims = ch.dims();
  const auto& g = ch.g();
  const int n = dims.n();
  Configuration cfg;
  cfg.tx_states.assign(dims.n_t(), 0);
  cfg.rx_states.assign(dims.n_r(), 0);

  auto pick_rows = [&](const std::vector<int>* columns) {
    for (int b = 0; b < dims.n_r(); ++b) {
      double best = -1.0;
      for (int l = 0; l < n; ++l) {
        double norm2 = 0.0;
        if (columns) {
          for (int a = 0; a < dims.n_t(); ++a) norm2 += std::norm(g(b * n + l, a * n + (*columns)[a]));
        } else {
          norm2 = g.row(b * n + l).squaredNorm();
        }
        if (norm2 > best) {
          best = norm2;
          cfg.rx_states[b] = l;
        }
      }
    }
  };
  auto pick_cols = [&](const std::vector<int>* rows) {
    for (int a = 0; a < dims.n_t(); ++a) {
      double best = -1.0;
      for (int k = 0; k < n; ++k) {
        double norm2 = 0.0;
        if (rows) {
          for (int b = 0; b < dims.n_r(); ++b) norm2 += std::norm(g(b * n + (*rows)[b], a * n + k));
        } else {
          norm2 = g.col(a * n + k).squaredNorm();
        }
        if (norm2 > best) {
          best = norm2;
          cfg.tx_states[a] = k;
        }
      }
    }
  };

  if (order == LinkEnd::kReceiverFirst) {
    pick_rows(nullptr);
    pick_cols(&cfg.rx_states);
  } else {
    pick_cols(nullptr);
    pick_rows(&cfg.tx_states);
  }
  return cfg;
}

Configuration rs_select(const SystemDims& dims, Rng& rng) { return random_configuration(dims, rng); }

SolverResult se_select(const FullChannel& ch, double p_over_nt, SeReport* report) {
  if (!(p_over_nt >= 0.0)) throw std::invalid_argument("se_select: p_over_nt must be >= 0");
  const auto& dims = ch.dims();
  SeReport local;
  SeReport& rep = report ? *report : local;
  rep = SeReport{};
  SolverResult result;

  Configuration cfg;
  cfg.rx_states = eliminate_rows(ch.g(), dims.n_r(), dims.n(), p_over_nt, rep, result.evaluations);
  // Keep the selected receive rows, then eliminate columns as rows of G^H.
  std::vector<int> rows(static_cast<std::size_t>(dims.n_r()));
  for (int b = 0; b < dims.n_r(); ++b) rows[b] = b * dims.n() + cfg.rx_states[b];
  const CMatrix reduced_rows = select_rows(ch.g(), rows);
  cfg.tx_states = eliminate_rows(reduced_rows.adjoint(), dims.n_t(), dims.n(), p_over_nt, rep,
                                 result.evaluations);

  result.objective = capacity_objective(ch, cfg, p_over_nt);
  result.config = std::move(cfg);
  return result;
}

SolverResult decoupled_es_select(const FullChannel& ch, double p_over_nt, LinkEnd order) {
  const auto& dims = ch.dims();
  decoupled_es_evaluation_count(dims);
  const int n = dims.n();
  SolverResult result;
  double best_value = -std::numeric_limits<double>::infinity();

  auto search = [&](int antennas, auto score) {
    std::vector<int> states(static_cast<std::size_t>(antennas), 0);
    std::vector<int> best = states;
    best_value = -std::numeric_limits<double>::infinity();
    do {
      const double v = score(states);
      ++result.evaluations;
      if (v > best_value) {
        best_value = v;
        best = states;
      }
    } while (next_combination(states, n));
    return best;
  };

  Configuration cfg;
  if (order == LinkEnd::kReceiverFirst) {
    cfg.rx_states = search(dims.n_r(), [&](const std::vector<int>& rx) {
      CMatrix gy(dims.n_r(), dims.tx_cols());
      for (int b = 0; b < dims.n_r(); ++b) gy.row(b) = ch.g().row(b * n + rx[b]);
      return log2det_gram(gy, p_over_nt);
    });
    cfg.tx_states = search(dims.n_t(), [&](const std::vector<int>& tx) {
      return capacity_objective(ch, Configuration{tx, cfg.rx_states}, p_over_nt);
    });
  } else {
    cfg.tx_states = search(dims.n_t(), [&](const std::vector<int>& tx) {
      CMatrix gx(dims.rx_rows(), dims.n_t());
      for (int a = 0; a < dims.n_t(); ++a) gx.col(a) = ch.g().col(a * n + tx[a]);
      return log2det_gram(gx, p_over_nt);
    });
    cfg.rx_states = search(dims.n_r(), [&](const std::vector<int>& rx) {
      return capacity_objective(ch, Configuration{cfg.tx_states, rx}, p_over_nt);
    });
  }
  // The second phase scores full configurations, so its best is the capacity.
  result.objective = best_value;
  result.config = std::move(cfg);
  return result;
}

std::vector<std::optional<Configuration>> qubo_sample(const FullChannel& ch, double lambda,
                                                      const QuboSaParams& params, Rng& rng) {
  params.validate();
  const auto& dims = ch.dims();
  const QuboProblem qubo = build_qubo(build_objective(ch), build_constraint(dims), lambda);
  const std::uint64_t base = rng.next_u64();
  std::vector<std::optional<Configuration>> reads;
  reads.reserve(static_cast<std::size_t>(params.reads));
  for (int r = 0; r < params.reads; ++r) {
    Rng read_rng(derive_seed(base, static_cast<std::uint64_t>(r)));
    reads.push_back(decode_bits(qubo_anneal(qubo, params, read_rng), dims));
  }
  return reads;
}

SolverResult snr_based_select(const FullChannel& ch, SnrBackend backend,
                              const SnrBackendParams& params, Rng& rng) {
  const auto& dims = ch.dims();
  SolverResult result;
  switch (backend) {
    case SnrBackend::kBrute:
      return es_select(ch, ObjectiveKind::kSnr, 0.0);
    case SnrBackend::kCim: {
      const CimSolveResult cim = cim_select(ch, params.cim, rng);
      result.config = cim.best_config;
      result.objective = cim.best_q0;
      result.fallback = cim.best_is_fallback;
      result.feasible_rate = cim.feasible_fraction;
      result.evaluations = static_cast<std::uint64_t>(params.cim.anneals);
      return result;
    }
    case SnrBackend::kQuboSa: {
      const auto reads = qubo_sample(ch, params.qubo_lambda, params.qubo_sa, rng);
      result.evaluations = reads.size();
      std::size_t feasible = 0;
      for (const auto& cfg : reads) {
        if (!cfg) continue;
        const double q0 = snr_objective(ch, *cfg);
        if (feasible == 0 || q0 > result.objective) {
          result.objective = q0;
          result.config = *cfg;
        }
        ++feasible;
      }
      result.feasible_rate = static_cast<double>(feasible) / static_cast<double>(reads.size());
      if (feasible == 0) {
        result.config = random_configuration(dims, rng);
        result.objective = snr_objective(ch, result.config);
        result.fallback = true;
      }
      return result;
    }
  }
  throw std::invalid_argument("snr_based_select: unknown back-end");
}

}  // namespace antsel
