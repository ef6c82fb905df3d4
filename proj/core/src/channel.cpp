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

#include <antsel/channel.hpp>
#include <antsel/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace antsel {

namespace {

constexpr int kSmallMax = 16;
using SmallCMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kSmallMax, kSmallMax>;

thread_local std::uint64_t t_capacity_calls = 0;

template <class Mat>
double log2det_identity_plus_gram(const Mat& h, double scale) {
  if (!h.allFinite()) throw NumericError("log-det: non-finite channel entries");
  if (!std::isfinite(scale) || scale < 0.0) throw NumericError("log-det: scale must be finite and >= 0");
  const Eigen::Index cols = h.cols();
  Mat m = h.adjoint() * h;
  m *= scale;
  m.diagonal().array() += 1.0;
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) throw NumericError("log-det: Cholesky factorization failed");
  const auto& l = llt.matrixLLT();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < cols; ++i) acc += std::log2(l(i, i).real());
  return 2.0 * acc;
}

void check_config(const SystemDims& dims, const Configuration& cfg) {
  if (!cfg.consistent_with(dims)) {
    throw StructuralError("configuration " + cfg.to_string() + " does not match dims " +
                          dims.to_string());
  }
}

}  // namespace

SystemDims::SystemDims(int n_t, int n_r, int n) : n_t_(n_t), n_r_(n_r), n_(n) {
  if (n_t < 1 || n_r < 1 || n < 1) {
    throw StructuralError("SystemDims: n_t, n_r and n must all be >= 1 (got " + to_string() + ")");
  }
}

std::uint64_t SystemDims::configuration_count() const noexcept {
  std::uint64_t count = 1;
  const auto base = static_cast<std::uint64_t>(n_);
  for (int i = 0; i < antennas(); ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    count *= base;
  }
  return count;
}

std::string SystemDims::to_string() const {
  std::ostringstream os;
  os << '(' << n_t_ << ',' << n_r_ << ',' << n_ << ')';
  return os.str();
}

bool Configuration::consistent_with(const SystemDims& dims) const noexcept {
  if (static_cast<int>(tx_states.size()) != dims.n_t()) return false;
  if (static_cast<int>(rx_states.size()) != dims.n_r()) return false;
  auto in_range = [&](int s) { return s >= 0 && s < dims.n(); };
  return std::all_of(tx_states.begin(), tx_states.end(), in_range) &&
         std::all_of(rx_states.begin(), rx_states.end(), in_range);
}

std::string Configuration::to_string() const {
  std::ostringstream os;
  auto put = [&os](const std::vector<int>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
    os << ']';
  };
  os << "tx=";
  put(tx_states);
  os << " rx=";
  put(rx_states);
  return os.str();
}

FullChannel::FullChannel(SystemDims dims, CMatrix g) : dims_(dims), g_(std::move(g)) {
  if (g_.rows() != dims_.rx_rows() || g_.cols() != dims_.tx_cols()) {
    throw StructuralError("FullChannel: matrix shape does not match dims " + dims_.to_string());
  }
  if (!g_.allFinite()) throw NumericError("FullChannel: non-finite channel entries");
}

FullChannel sample_channel(const SystemDims& dims, Rng& rng) {
  const double sigma = std::sqrt(0.5);
  CMatrix g(dims.rx_rows(), dims.tx_cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const double re = rng.normal(0.0, sigma);
      const double im = rng.normal(0.0, sigma);
      g(i, j) = Complex(re, im);
    }
  }
  return FullChannel(dims, std::move(g));
}

Configuration random_configuration(const SystemDims& dims, Rng& rng) {
  Configuration cfg;
  cfg.tx_states.resize(dims.n_t());
  cfg.rx_states.resize(dims.n_r());
  for (int& s : cfg.tx_states) s = rng.uniform_int(dims.n());
  for (int& s : cfg.rx_states) s = rng.uniform_int(dims.n());
  return cfg;
}

CMatrix reduce(const FullChannel& ch, const Configuration& cfg) {
  const auto& dims = ch.dims();
  check_config(dims, cfg);
  const int n = dims.n();
  CMatrix h(dims.n_r(), dims.n_t());
  for (int b = 0; b < dims.n_r(); ++b) {
    for (int a = 0; a < dims.n_t(); ++a) {
      h(b, a) = ch.g()(b * n + cfg.rx_states[b], a * n + cfg.tx_states[a]);
    }
  }
  return h;
}

double snr_objective(const FullChannel& ch, const Configuration& cfg) {
  const auto& dims = ch.dims();
  check_config(dims, cfg);
  const int n = dims.n();
  double sum = 0.0;
  for (int b = 0; b < dims.n_r(); ++b) {
    for (int a = 0; a < dims.n_t(); ++a) {
      sum += std::norm(ch.g()(b * n + cfg.rx_states[b], a * n + cfg.tx_states[a]));
    }
  }
  return sum;
}

double mean_snr_over_configurations(const FullChannel& ch) {
  const double n = ch.dims().n();
  return ch.g().cwiseAbs2().sum() / (n * n);
}

double capacity_objective(const FullChannel& ch, const Configuration& cfg, double p_over_nt) {
  ++t_capacity_calls;
  const auto& dims = ch.dims();
  check_config(dims, cfg);
  if (dims.n_r() > kSmallMax || dims.n_t() > kSmallMax) {
    return log2det_identity_plus_gram(reduce(ch, cfg), p_over_nt);
  }
  const int n = dims.n();
  SmallCMatrix h(dims.n_r(), dims.n_t());
  for (int b = 0; b < dims.n_r(); ++b) {
    for (int a = 0; a < dims.n_t(); ++a) {
      h(b, a) = ch.g()(b * n + cfg.rx_states[b], a * n + cfg.tx_states[a]);
    }
  }
  return log2det_identity_plus_gram(h, p_over_nt);
}

double log2det_gram(const CMatrix& h, double scale) {
  ++t_capacity_calls;
  return log2det_identity_plus_gram(h, scale);
}

std::uint64_t capacity_evaluations_on_this_thread() noexcept { return t_capacity_calls; }

std::vector<double> squared_singular_values(const CMatrix& h) {
  const Eigen::Index k = std::min(h.rows(), h.cols());
  if (k == 0) return {};
  CMatrix gram = h.cols() <= h.rows() ? CMatrix(h.adjoint() * h) : CMatrix(h * h.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigen-decomposition failed");
  const auto& ev = solver.eigenvalues();  // ascending
  std::vector<double> out(static_cast<std::size_t>(k));
  for (Eigen::Index i = 0; i < k; ++i) out[i] = std::max(0.0, ev(ev.size() - 1 - i));
  return out;
}

PowerAllocation waterfilling_gains(std::span<const double> gains, double total_power) {
  if (!(total_power >= 0.0) || !std::isfinite(total_power)) {
    throw std::invalid_argument("waterfilling: total power must be finite and >= 0");
  }
  PowerAllocation out;
  out.total_power = total_power;
  out.gains.assign(gains.begin(), gains.end());
  std::sort(out.gains.begin(), out.gains.end(), std::greater<>());
  out.per_stream.assign(out.gains.size(), 0.0);

  const auto positive = static_cast<std::size_t>(
      std::count_if(out.gains.begin(), out.gains.end(), [](double g) { return g > 0.0; }));
  if (positive == 0) {
    out.degenerate = true;
    return out;
  }

  // Largest active set k whose weakest stream still sits below the water level.
  double inv_sum = 0.0;
  std::size_t active = 1;
  double level = total_power + 1.0 / out.gains[0];
  for (std::size_t k = 1; k <= positive; ++k) {
    inv_sum += 1.0 / out.gains[k - 1];
    const double mu = (total_power + inv_sum) / static_cast<double>(k);
    if (mu >= 1.0 / out.gains[k - 1]) {
      active = k;
      level = mu;
    } else {
      break;
    }
  }
  out.water_level = level;
  for (std::size_t k = 0; k < active; ++k) {
    out.per_stream[k] = std::max(0.0, level - 1.0 / out.gains[k]);
    out.achieved_objective += std::log2(1.0 + out.per_stream[k] * out.gains[k]);
  }
  return out;
}

PowerAllocation waterfilling(const CMatrix& h, double total_power) {
  if (!h.allFinite()) throw NumericError("waterfilling: non-finite channel entries");
  const auto gains = squared_singular_values(h);
  return waterfilling_gains(gains, total_power);
}

double snr_optimal_value(const CMatrix& h, double total_power) {
  const auto gains = squared_singular_values(h);
  if (gains.empty()) return 0.0;
  return total_power * gains.front();
}

}  // namespace antsel
