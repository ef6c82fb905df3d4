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

#include <antsel/rng.hpp>

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace antsel {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Antenna counts and states per antenna of a reconfigurable MIMO link.
class SystemDims {
 public:
  SystemDims(int n_t, int n_r, int n);

  int n_t() const noexcept { return n_t_; }
  int n_r() const noexcept { return n_r_; }
  int n() const noexcept { return n_; }

  int tx_cols() const noexcept { return n_ * n_t_; }
  int rx_rows() const noexcept { return n_ * n_r_; }
  int antennas() const noexcept { return n_t_ + n_r_; }
  int total_bits() const noexcept { return n_ * (n_t_ + n_r_); }
  // n^(n_t + n_r), saturating at UINT64_MAX.
  std::uint64_t configuration_count() const noexcept;

  std::string to_string() const;
  friend bool operator==(const SystemDims&, const SystemDims&) = default;

 private:
  int n_t_;
  int n_r_;
  int n_;
};

/// One active state per transmit antenna and per receive antenna. Orders
/// lexicographically on (tx_states, rx_states), which is also the order in
/// which exhaustive search enumerates configurations.
struct Configuration {
  std::vector<int> tx_states;
  std::vector<int> rx_states;

  bool consistent_with(const SystemDims& dims) const noexcept;
  std::string to_string() const;

  friend auto operator<=>(const Configuration&, const Configuration&) = default;
  friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Complete channel over all antenna states. Column a*n + k is transmit
/// antenna a in state k, row b*n + l is receive antenna b in state l.
class FullChannel {
 public:
  FullChannel(SystemDims dims, CMatrix g);

  const SystemDims& dims() const noexcept { return dims_; }
  const CMatrix& g() const noexcept { return g_; }

 private:
  SystemDims dims_;
  CMatrix g_;
};

struct PowerAllocation {
  double total_power = 0.0;
  // Ordered by descending squared singular value.
  std::vector<double> per_stream;
  std::vector<double> gains;  // squared singular values, same order
  double water_level = 0.0;
  double achieved_objective = 0.0;
  bool degenerate = false;
};

/// i.i.d. CN(0,1) entries: real and imaginary parts each N(0, 1/2).
FullChannel sample_channel(const SystemDims& dims, Rng& rng);

/// Uniformly random configuration (independent uniform state per antenna).
Configuration random_configuration(const SystemDims& dims, Rng& rng);

/// Conventional n_r x n_t matrix of the selected states.
CMatrix reduce(const FullChannel& ch, const Configuration& cfg);

/// Sum of |h|^2 over the reduced matrix (trace of H^H H).
double snr_objective(const FullChannel& ch, const Configuration& cfg);

/// Mean SNR objective over all configurations, i.e. the expected value of
/// uniform random selection: sum of all |g|^2 divided by n^2.
double mean_snr_over_configurations(const FullChannel& ch);

/// log2 det(I + p_over_nt * H^H H) of the reduced matrix, via Cholesky.
double capacity_objective(const FullChannel& ch, const Configuration& cfg, double p_over_nt);

/// log2 det(I + scale * H^H H) for an arbitrary complex matrix.
double log2det_gram(const CMatrix& h, double scale);

/// Number of log-det evaluations (capacity_objective() and log2det_gram()
/// calls) made on the calling thread so far. Solvers report their own
/// counts; this lets tests audit them independently.
std::uint64_t capacity_evaluations_on_this_thread() noexcept;

/// Capacity-optimal power split over the eigenmodes of h.
PowerAllocation waterfilling(const CMatrix& h, double total_power);
PowerAllocation waterfilling_gains(std::span<const double> gains, double total_power);

/// P times the largest squared singular value of h (rank-one beamforming).
double snr_optimal_value(const CMatrix& h, double total_power);

/// Squared singular values of h in descending order.
std::vector<double> squared_singular_values(const CMatrix& h);

}  // namespace antsel
