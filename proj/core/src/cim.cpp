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

#include <antsel/cim.hpp>
#include <antsel/errors.hpp>

#include <cmath>
#include <stdexcept>

namespace antsel {

void CimParams::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("CimParams: dt must be > 0");
  if (steps < 0) throw std::invalid_argument("CimParams: steps must be >= 0");
  if (substeps < 1) throw std::invalid_argument("CimParams: substeps must be >= 1");
  if (anneals < 1) throw std::invalid_argument("CimParams: anneals must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw std::invalid_argument("CimParams: lambda must lie in [0, 1]");
  if (!(e_floor > 0.0)) throw std::invalid_argument("CimParams: e_floor must be > 0");
  if (!(init_amplitude >= 0.0)) throw std::invalid_argument("CimParams: init_amplitude must be >= 0");
}

CimIntegrator::CimIntegrator(const IsingProblem& problem, const CimParams& params)
    : problem_(problem), params_(params), couplings_(problem.j), field_(problem.j.rows()) {
  params_.validate();
  couplings_.diagonal().setZero();
}

CimState CimIntegrator::initial_state(Rng& rng) const {
  const Eigen::Index k = couplings_.rows();
  CimState state{RVector(k), RVector::Ones(k)};
  for (Eigen::Index i = 0; i < k; ++i) {
    state.x(i) = rng.uniform(-params_.init_amplitude, params_.init_amplitude);
  }
  return state;
}

void CimIntegrator::step(CimState& state, std::size_t step_index) {
  const double h = params_.dt / params_.substeps;
  const double gain = 1.0 - params_.pump;
  for (int k = 0; k < params_.substeps; ++k) {
    const double t = (static_cast<double>(step_index) + static_cast<double>(k) / params_.substeps) * params_.dt;
    const double eps = params_.coupling_slope * t;
    field_.noalias() = couplings_ * state.x;
    for (Eigen::Index i = 0; i < state.x.size(); ++i) {
      const double x = state.x(i);
      const double e = state.e(i);
      const double dx = gain * x - x * x * x + eps * e * field_(i);
      const double de = -params_.beta * (x * x - params_.target_amplitude) * e;
      state.x(i) = x + h * dx;
      state.e(i) = std::max(params_.e_floor, e + h * de);
    }
  }
  if (!state.x.allFinite() || !state.e.allFinite()) {
    throw DivergenceError("CIM integration diverged", step_index);
  }
}

CimState cim_step(const CimState& state, const IsingProblem& problem, const CimParams& params,
                  std::size_t step_index) {
  if (state.x.size() != problem.j.rows() || state.e.size() != problem.j.rows()) {
    throw StructuralError("cim_step: state size does not match the Ising problem");
  }
  CimIntegrator integrator(problem, params);
  CimState next = state;
  integrator.step(next, step_index);
  return next;
}

SpinVector sign_readout(const RVector& x) {
  SpinVector s(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) s[i] = x(i) >= 0.0 ? 1 : -1;
  return s;
}

SpinVector run_anneal(const IsingProblem& problem, const CimParams& params, Rng& rng) {
  CimIntegrator integrator(problem, params);
  CimState state = integrator.initial_state(rng);
  for (int s = 0; s < params.steps; ++s) integrator.step(state, static_cast<std::size_t>(s));
  return sign_readout(state.x);
}

CimSolveResult cim_select(const FullChannel& ch, const CimParams& params, Rng& rng) {
  params.validate();
  const auto& dims = ch.dims();
  const IsingProblem problem = to_ising(build_objective(ch), build_constraint(dims), params.lambda);
  const std::uint64_t base = rng.next_u64();

  CimSolveResult result;
  result.per_anneal.reserve(static_cast<std::size_t>(params.anneals));
  double q0_sum = 0.0;
  int feasible = 0;
  int best_index = -1;
  for (int a = 0; a < params.anneals; ++a) {
    Rng anneal_rng(derive_seed(base, static_cast<std::uint64_t>(a)));
    const SpinVector spins = run_anneal(problem, params, anneal_rng);
    AnnealOutcome outcome;
    if (auto cfg = decode_spins(spins, dims)) {
      outcome.feasible = true;
      outcome.config = std::move(*cfg);
      ++feasible;
    } else {
      outcome.config = random_configuration(dims, anneal_rng);
    }
    outcome.q0 = snr_objective(ch, outcome.config);
    q0_sum += outcome.q0;
    if (outcome.feasible && (best_index < 0 || outcome.q0 > result.per_anneal[best_index].q0)) {
      best_index = a;
    }
    result.per_anneal.push_back(std::move(outcome));
  }

  result.average_q0 = q0_sum / params.anneals;
  result.feasible_fraction = static_cast<double>(feasible) / params.anneals;
  // With no feasible readout, the first anneal's random-selection draw stands in.
  result.best_is_fallback = best_index < 0;
  const auto& best = result.per_anneal[best_index < 0 ? 0 : best_index];
  result.best_config = best.config;
  result.best_q0 = best.q0;
  return result;
}

std::vector<TracePoint> cim_trace(const FullChannel& ch, const CimParams& params, Rng& rng) {
  params.validate();
  const auto& dims = ch.dims();
  const IsingProblem problem = to_ising(build_objective(ch), build_constraint(dims), params.lambda);
  const double fallback_q0 = mean_snr_over_configurations(ch);
  const std::uint64_t base = rng.next_u64();

  std::vector<TracePoint> trace(static_cast<std::size_t>(params.steps) + 1);
  for (std::size_t s = 0; s < trace.size(); ++s) trace[s].step = static_cast<int>(s);

  auto record = [&](const CimState& state, std::size_t s) {
    if (auto cfg = decode_spins(sign_readout(state.x), dims)) {
      trace[s].e_rho += snr_objective(ch, *cfg);
      trace[s].p_c += 1.0;
    } else {
      trace[s].e_rho += fallback_q0;
    }
  };

  CimIntegrator integrator(problem, params);
  for (int a = 0; a < params.anneals; ++a) {
    Rng anneal_rng(derive_seed(base, static_cast<std::uint64_t>(a)));
    CimState state = integrator.initial_state(anneal_rng);
    record(state, 0);
    for (int s = 0; s < params.steps; ++s) {
      integrator.step(state, static_cast<std::size_t>(s));
      record(state, static_cast<std::size_t>(s) + 1);
    }
  }
  for (auto& point : trace) {
    point.e_rho /= params.anneals;
    point.p_c /= params.anneals;
  }
  return trace;
}

}  // namespace antsel
