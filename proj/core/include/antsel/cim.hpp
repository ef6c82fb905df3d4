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

#include <cstddef>
#include <vector>

namespace antsel {

/// Amplitude-heterogeneity-corrected CIM model parameters. The coupling
/// strength ramps linearly, epsilon = coupling_slope * t.
struct CimParams {
  double pump = 0.98;
  double beta = 1.0;
  double target_amplitude = 2.0;  // a, target x_i^2
  double coupling_slope = 100.0;  // gamma
  double dt = 0.01;
  int steps = 1000;
  int substeps = 2;  // explicit Euler sub-steps of dt/substeps per time-step; 1 = single Euler step
  int anneals = 1000;
  double lambda = 0.8;
  double init_amplitude = 1e-3;  // x_i(0) ~ U(-init, +init)
  double e_floor = 1e-12;

  void validate() const;
};

struct CimState {
  RVector x;  // spin amplitudes
  RVector e;  // error variables, kept > 0
};

/// Explicit-Euler integrator for the CIM equations of one Ising problem.
class CimIntegrator {
 public:
  CimIntegrator(const IsingProblem& problem, const CimParams& params);

  CimState initial_state(Rng& rng) const;
  // Advances by dt at time t = step_index * dt. Throws DivergenceError on a
  // non-finite state.
  void step(CimState& state, std::size_t step_index);

 private:
  const IsingProblem& problem_;
  CimParams params_;
  RMatrix couplings_;  // zero diagonal
  RVector field_;
};

CimState cim_step(const CimState& state, const IsingProblem& problem, const CimParams& params,
                  std::size_t step_index);

/// sgn(x) with sgn(0) = +1.
SpinVector sign_readout(const RVector& x);

/// One anneal: integrate params.steps steps from small random amplitudes.
SpinVector run_anneal(const IsingProblem& problem, const CimParams& params, Rng& rng);

struct AnnealOutcome {
  bool feasible = false;   // false: the readout was infeasible and q0 is a random-selection draw
  double q0 = 0.0;
  Configuration config;
};

struct CimSolveResult {
  Configuration best_config;
  double best_q0 = 0.0;
  bool best_is_fallback = false;
  double average_q0 = 0.0;  // CIM (Avg): infeasible anneals count as random selection
  double feasible_fraction = 0.0;
  std::vector<AnnealOutcome> per_anneal;
};

/// Runs params.anneals anneals on the lambda-blended problem for ch. Anneal a
/// uses the substream derive_seed(base, a) where base is drawn once from rng.
CimSolveResult cim_select(const FullChannel& ch, const CimParams& params, Rng& rng);

struct TracePoint {
  int step = 0;
  double e_rho = 0.0;  // mean Q0 of the sign readout; infeasible readouts score the random-selection mean
  double p_c = 0.0;    // fraction of anneals whose readout is feasible
};

/// Per-time-step readout statistics averaged over anneals; steps+1 points,
/// the first taken from the initial state.
std::vector<TracePoint> cim_trace(const FullChannel& ch, const CimParams& params, Rng& rng);

}  // namespace antsel
