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

#include <antsel/annealing.hpp>
#include <antsel/errors.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace antsel {

long SaParams::stage_length(const SystemDims& dims) const {
  if (k_steps) return *k_steps;
  const long n = dims.n();
  return 50L * n * n * dims.n_r() * dims.n_t();
}

void SaParams::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("SaParams: tau must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("SaParams: alpha must lie in (0, 1)");
  if (!(eps > 0.0)) throw std::invalid_argument("SaParams: eps must be > 0");
  if (k_steps && *k_steps < 1) throw std::invalid_argument("SaParams: k_steps must be >= 1");
  if (max_stages < 1) throw std::invalid_argument("SaParams: max_stages must be >= 1");
}

void PtParams::validate() const {
  if (taus.size() < 2) throw std::invalid_argument("PtParams: need at least two replicas");
  for (double t : taus) {
    if (!(t > 0.0)) throw std::invalid_argument("PtParams: control parameters must be > 0");
  }
  if (steps_per_epoch < 1 || epochs < 1) {
    throw std::invalid_argument("PtParams: steps_per_epoch and epochs must be >= 1");
  }
}

Configuration neighbour(const Configuration& cfg, const SystemDims& dims, Rng& rng) {
  if (dims.n() < 2) throw NoNeighbourError("neighbour: a single state per antenna has no neighbours");
  if (!cfg.consistent_with(dims)) throw StructuralError("neighbour: configuration does not match dims");
  Configuration out = cfg;
  const int antenna = rng.uniform_int(dims.antennas());
  int& state = antenna < dims.n_t() ? out.tx_states[antenna] : out.rx_states[antenna - dims.n_t()];
  const int pick = rng.uniform_int(dims.n() - 1);
  state = pick >= state ? pick + 1 : pick;
  return out;
}

bool metropolis_accept(double delta_c, double tau, Rng& rng) {
  if (!(tau > 0.0)) throw std::invalid_argument("metropolis_accept: tau must be > 0");
  if (delta_c >= 0.0) return true;
  return rng.uniform() < std::exp(delta_c / tau);
}

SolverResult sa_select(const FullChannel& ch, double p_over_nt, const SaParams& params, Rng& rng,
                       SaTrace* trace) {
  params.validate();
  const auto& dims = ch.dims();
  if (dims.n() < 2) throw NoNeighbourError("sa_select: needs at least two states per antenna");
  const long k_steps = params.stage_length(dims);

  SolverResult result;
  Configuration current = random_configuration(dims, rng);
  double c = capacity_objective(ch, current, p_over_nt);
  result.evaluations = 1;
  result.config = current;
  result.objective = c;

  double tau = params.tau;
  long stage = 0;
  double ratio = 1.0;
  do {
    long accepted = 0;
    for (long k = 0; k < k_steps; ++k) {
      Configuration candidate = neighbour(current, dims, rng);
      const double c_new = capacity_objective(ch, candidate, p_over_nt);
      ++result.evaluations;
      if (metropolis_accept(c_new - c, tau, rng)) {
        current = std::move(candidate);
        c = c_new;
        ++accepted;
        if (trace) trace->accepted_capacity.push_back(c);
        if (c > result.objective) {
          result.objective = c;
          result.config = current;
        }
      }
      if (trace) trace->best_so_far.push_back(result.objective);
    }
    ratio = static_cast<double>(accepted) / static_cast<double>(k_steps);
    tau *= params.alpha;
    ++stage;
  } while (ratio >= params.eps && stage < params.max_stages);

  if (trace) trace->stages = stage;
  result.final_config = current;
  result.final_objective = c;
  return result;
}

bool pt_swap_accept(double tau_i, double tau_j, double c_i, double c_j, Rng& rng) {
  if (!(tau_i > 0.0 && tau_j > 0.0)) throw std::invalid_argument("pt_swap_accept: taus must be > 0");
  const double exponent = (1.0 / tau_i - 1.0 / tau_j) * (c_j - c_i);
  if (exponent >= 0.0) return true;
  return rng.uniform() < std::exp(exponent);
}

SolverResult pt_select(const FullChannel& ch, double p_over_nt, const PtParams& params, Rng& rng) {
  params.validate();
  const auto& dims = ch.dims();
  if (dims.n() < 2) throw NoNeighbourError("pt_select: needs at least two states per antenna");
  const std::size_t replicas = params.taus.size();

  struct Replica {
    Configuration config;
    double capacity = 0.0;
  };
  std::vector<Replica> chain(replicas);
  // ladder[k] is the replica currently holding taus[k].
  std::vector<std::size_t> ladder(replicas);
  std::iota(ladder.begin(), ladder.end(), std::size_t{0});
  std::vector<std::size_t> rung(replicas);
  std::iota(rung.begin(), rung.end(), std::size_t{0});

  SolverResult result;
  for (std::size_t r = 0; r < replicas; ++r) {
    chain[r].config = random_configuration(dims, rng);
    chain[r].capacity = capacity_objective(ch, chain[r].config, p_over_nt);
    ++result.evaluations;
    if (r == 0 || chain[r].capacity > result.objective) {
      result.objective = chain[r].capacity;
      result.config = chain[r].config;
    }
  }

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t r = 0; r < replicas; ++r) {
      auto& rep = chain[r];
      const double tau = params.taus[rung[r]];
      const int steps = epoch == 0 ? params.steps_per_epoch - 1 : params.steps_per_epoch;
      for (int s = 0; s < steps; ++s) {
        Configuration candidate = neighbour(rep.config, dims, rng);
        const double c_new = capacity_objective(ch, candidate, p_over_nt);
        ++result.evaluations;
        if (metropolis_accept(c_new - rep.capacity, tau, rng)) {
          rep.config = std::move(candidate);
          rep.capacity = c_new;
          if (rep.capacity > result.objective) {
            result.objective = rep.capacity;
            result.config = rep.config;
          }
        }
      }
    }
    for (std::size_t k = 0; k + 1 < replicas; ++k) {
      const std::size_t i = ladder[k];
      const std::size_t j = ladder[k + 1];
      if (pt_swap_accept(params.taus[k], params.taus[k + 1], chain[i].capacity, chain[j].capacity, rng)) {
        std::swap(ladder[k], ladder[k + 1]);
        rung[i] = k + 1;
        rung[j] = k;
      }
    }
  }
  return result;
}

}  // namespace antsel

namespace antsel {

void QuboSaParams::validate() const {
  if (reads < 1 || sweeps < 1) throw std::invalid_argument("QuboSaParams: reads and sweeps must be >= 1");
  if (!(t_hot > 0.0 && t_cold > 0.0)) throw std::invalid_argument("QuboSaParams: temperatures must be > 0");
}

BitVector qubo_anneal(const QuboProblem& problem, const QuboSaParams& params, Rng& rng) {
  params.validate();
  const Eigen::Index k = problem.w.rows();
  const RMatrix sym = 0.5 * (problem.w + problem.w.transpose());
  // Work on energies to minimize.
  const double sign = problem.sense == Sense::kMinimize ? 1.0 : -1.0;

  BitVector bits(static_cast<std::size_t>(k));
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.uniform_int(2));
  RVector field = RVector::Zero(k);  // sum_{j != i} Wsym_ij b_j
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      if (j != i && bits[j]) field(i) += sym(i, j);
    }
  }
  double energy = sign * problem.value(bits);
  BitVector best = bits;
  double best_energy = energy;

  const double ratio = params.sweeps > 1
                           ? std::pow(params.t_cold / params.t_hot, 1.0 / (params.sweeps - 1))
                           : 1.0;
  double temperature = params.t_hot;
  for (int sweep = 0; sweep < params.sweeps; ++sweep) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const double gain = sym(i, i) + 2.0 * field(i);
      const double delta = sign * (bits[i] ? -gain : gain);
      if (delta <= 0.0 || rng.uniform() < std::exp(-delta / temperature)) {
        const double step = bits[i] ? -1.0 : 1.0;
        bits[i] ^= 1U;
        energy += delta;
        for (Eigen::Index j = 0; j < k; ++j) {
          if (j != i) field(j) += step * sym(j, i);
        }
        if (energy < best_energy) {
          best_energy = energy;
          best = bits;
        }
      }
    }
    temperature *= ratio;
  }
  return best;
}

}  // namespace antsel
