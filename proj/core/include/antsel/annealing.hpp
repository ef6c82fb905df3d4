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

#include <antsel/channel.hpp>
#include <antsel/ising.hpp>
#include <antsel/rng.hpp>
#include <antsel/solver_result.hpp>

#include <optional>
#include <vector>

namespace antsel {

struct SaParams {
  double tau = 0.1;     // initial control parameter
  double alpha = 0.75;  // cooling factor per stage
  double eps = 1e-3;    // stop once the stage acceptance ratio drops below this
  // Candidate moves per stage; 50 n^2 n_r n_t when unset.
  std::optional<long> k_steps;
  long max_stages = 10000;

  long stage_length(const SystemDims& dims) const;
  void validate() const;
};

struct PtParams {
  std::vector<double> taus{0.1, 0.001};
  int steps_per_epoch = 200;
  int epochs = 200;

  void validate() const;
};

/// Optional per-run bookkeeping for tests and diagnostics.
struct SaTrace {
  std::vector<double> accepted_capacity;  // capacity after every accepted move
  std::vector<double> best_so_far;        // best capacity after every candidate
  long stages = 0;
};

/// Uniform random neighbour: one antenna, moved to a different state.
Configuration neighbour(const Configuration& cfg, const SystemDims& dims, Rng& rng);

/// min(1, exp(delta / tau)); draws from rng only for worsening moves.
bool metropolis_accept(double delta_c, double tau, Rng& rng);

/// Cooling-schedule simulated annealing on the capacity objective. The
/// result's config is the best configuration visited; final_config is where
/// the chain stopped.
SolverResult sa_select(const FullChannel& ch, double p_over_nt, const SaParams& params, Rng& rng,
                       SaTrace* trace = nullptr);

/// min(1, exp((1/tau_i - 1/tau_j) (c_j - c_i))); draws only when below 1.
bool pt_swap_accept(double tau_i, double tau_j, double c_i, double c_j, Rng& rng);

/// Replica exchange: each replica runs constant-temperature Metropolis for
/// steps_per_epoch steps, then adjacent temperatures may swap. A replica's
/// random starting configuration counts as its first step, so the run makes
/// exactly R * steps_per_epoch * epochs capacity evaluations.
SolverResult pt_select(const FullChannel& ch, double p_over_nt, const PtParams& params, Rng& rng);

/// Single-bit-flip Metropolis sampler for a QUBO, geometric temperature
/// schedule from t_hot to t_cold over `sweeps` sweeps. Stands in for a
/// hardware annealer read.
struct QuboSaParams {
  int reads = 2000;
  int sweeps = 100;
  double t_hot = 1.0;
  double t_cold = 0.01;

  void validate() const;
};

/// One read: returns the lowest-energy state visited (in the problem's sense).
BitVector qubo_anneal(const QuboProblem& problem, const QuboSaParams& params, Rng& rng);

}  // namespace antsel
