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
#include <antsel/ising.hpp>

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace antsel {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("penalty weight lambda must lie in [0, 1]");
  }
}

void check_bits(std::span<const std::uint8_t> bits, int expected) {
  if (static_cast<int>(bits.size()) != expected) {
    throw StructuralError("selection vector has length " + std::to_string(bits.size()) +
                          ", expected " + std::to_string(expected));
  }
}

RMatrix symmetric_part(const RMatrix& m) { return 0.5 * (m + m.transpose()); }

// Shortest round-trip decimal, always with a fractional part or exponent.
std::string format_coefficient(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw NumericError("failed to format QUBO coefficient");
  std::string s(buf, end);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

// Flip-by-flip enumeration in lexicographic order. Bit value 0 is the
// smaller symbol (spin -1 or b = 0). Energies are updated incrementally and
// resynchronized periodically to bound rounding drift.
template <class Energy, class Field>
std::pair<std::vector<std::uint8_t>, double> enumerate_lexicographic(int k, bool maximize,
                                                                     Energy exact_energy,
                                                                     Field flip_delta) {
  if (k > kBruteForceMaxVariables) {
    throw RefusalError("brute force refused: " + std::to_string(k) + " variables exceeds cap of " +
                       std::to_string(kBruteForceMaxVariables));
  }
  std::vector<std::uint8_t> state(static_cast<std::size_t>(k), 0);
  double energy = exact_energy(state);
  std::vector<std::uint8_t> best = state;
  double best_energy = energy;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t m = 1; m < total; ++m) {
    // m-1 -> m flips the trailing ones to zero and the next zero to one.
    std::uint64_t changed = m ^ (m - 1);
    for (int p = 0; changed != 0; ++p, changed >>= 1) {
      if (changed & 1U) {
        const int idx = k - 1 - p;
        energy += flip_delta(state, idx);
        state[idx] ^= 1U;
      }
    }
    if ((m & 0xFFF) == 0) energy = exact_energy(state);
    const double tol = 1e-10 * std::max(1.0, std::abs(best_energy));
    const bool better = maximize ? energy > best_energy + tol : energy < best_energy - tol;
    if (better) {
      best = state;
      best_energy = exact_energy(state);
    }
  }
  return {best, best_energy};
}

}  // namespace

BitVector encode_bits(const Configuration& cfg, const SystemDims& dims) {
  if (!cfg.consistent_with(dims)) throw StructuralError("configuration does not match dims");
  BitVector bits(static_cast<std::size_t>(dims.total_bits()), 0);
  const int n = dims.n();
  for (int a = 0; a < dims.n_t(); ++a) bits[a * n + cfg.tx_states[a]] = 1;
  for (int b = 0; b < dims.n_r(); ++b) bits[dims.tx_cols() + b * n + cfg.rx_states[b]] = 1;
  return bits;
}

std::optional<Configuration> decode_bits(std::span<const std::uint8_t> bits, const SystemDims& dims) {
  check_bits(bits, dims.total_bits());
  const int n = dims.n();
  Configuration cfg;
  cfg.tx_states.reserve(dims.n_t());
  cfg.rx_states.reserve(dims.n_r());
  for (int block = 0; block < dims.antennas(); ++block) {
    int ones = 0;
    int state = -1;
    for (int k = 0; k < n; ++k) {
      if (bits[block * n + k]) {
        ++ones;
        state = k;
      }
    }
    if (ones != 1) return std::nullopt;
    (block < dims.n_t() ? cfg.tx_states : cfg.rx_states).push_back(state);
  }
  return cfg;
}

bool is_feasible(std::span<const std::uint8_t> bits, const SystemDims& dims) {
  return decode_bits(bits, dims).has_value();
}

double QuadraticObjective::value(std::span<const std::uint8_t> bits) const {
  check_bits(bits, static_cast<int>(q.rows()));
  double v = 0.0;
  for (Eigen::Index i = 0; i < q.rows(); ++i) {
    if (!bits[i]) continue;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      if (bits[j]) v += q(i, j);
    }
  }
  return v;
}

double ConstraintForm::penalty(std::span<const std::uint8_t> bits) const {
  check_bits(bits, static_cast<int>(r.rows()));
  double v = 0.0;
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    if (!bits[i]) continue;
    v -= 2.0;
    for (Eigen::Index j = 0; j < r.cols(); ++j) {
      if (bits[j]) v += r(i, j);
    }
  }
  return v;
}

double IsingProblem::energy(std::span<const std::int8_t> spins) const {
  if (static_cast<Eigen::Index>(spins.size()) != j.rows()) {
    throw StructuralError("spin vector length does not match the Ising problem");
  }
  double e = 0.0;
  for (Eigen::Index a = 0; a < j.rows(); ++a) {
    double row = 0.0;
    for (Eigen::Index b = 0; b < j.cols(); ++b) row += j(a, b) * spins[b];
    e += spins[a] * row;
  }
  return e;
}

double QuboProblem::value(std::span<const std::uint8_t> bits) const {
  check_bits(bits, size());
  double v = 0.0;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    if (!bits[i]) continue;
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      if (bits[j]) v += w(i, j);
    }
  }
  return v;
}

QuadraticObjective build_objective(const FullChannel& ch) {
  const auto& dims = ch.dims();
  const int k = dims.total_bits();
  const int tx = dims.tx_cols();
  RMatrix q = RMatrix::Zero(k, k);
  // Upper-right block is T/2 with T[m, r] = |g[r, m]|^2.
  for (int m = 0; m < tx; ++m) {
    for (int r = 0; r < dims.rx_rows(); ++r) {
      const double half = 0.5 * std::norm(ch.g()(r, m));
      q(m, tx + r) = half;
      q(tx + r, m) = half;
    }
  }
  return QuadraticObjective{dims, std::move(q)};
}

ConstraintForm build_constraint(const SystemDims& dims) {
  const int k = dims.total_bits();
  const int n = dims.n();
  RMatrix r = RMatrix::Zero(k, k);
  for (int block = 0; block < dims.antennas(); ++block) {
    r.block(block * n, block * n, n, n).setOnes();
  }
  return ConstraintForm{dims, std::move(r)};
}

SpinForm binary_to_spin(const RMatrix& m, const RVector& c) {
  if (m.rows() != m.cols() || c.size() != m.rows()) {
    throw StructuralError("binary_to_spin: shape mismatch");
  }
  const RMatrix sym = symmetric_part(m);
  SpinForm form;
  form.quadratic = 0.25 * sym;
  form.linear = 0.5 * (sym * RVector::Ones(sym.rows())) + 0.5 * c;
  return form;
}

RMatrix border_with_auxiliary(const SpinForm& form) {
  const Eigen::Index k = form.quadratic.rows();
  RMatrix out = RMatrix::Zero(k + 1, k + 1);
  out.bottomRightCorner(k, k) = form.quadratic;
  out.block(0, 1, 1, k) = 0.5 * form.linear.transpose();
  out.block(1, 0, k, 1) = 0.5 * form.linear;
  return out;
}

double max_abs_entry(const RMatrix& m) {
  if (m.size() == 0) return 1.0;
  const double eta = m.cwiseAbs().maxCoeff();
  return eta > 0.0 ? eta : 1.0;
}

RMatrix normalize_couplings(const RMatrix& m) {
  RMatrix out = m;
  out.diagonal().setZero();
  return out / max_abs_entry(out);
}

IsingParts ising_parts(const QuadraticObjective& obj, const ConstraintForm& con) {
  if (obj.q.rows() != con.r.rows()) throw StructuralError("objective and constraint sizes differ");
  const Eigen::Index k = obj.q.rows();
  const RMatrix j_obj = border_with_auxiliary(binary_to_spin(obj.q, RVector::Zero(k)));
  const RMatrix j_con = border_with_auxiliary(binary_to_spin(con.r, RVector::Constant(k, -2.0)));
  return IsingParts{normalize_couplings(j_obj), normalize_couplings(j_con)};
}

IsingProblem to_ising(const QuadraticObjective& obj, const ConstraintForm& con, double lambda) {
  check_lambda(lambda);
  auto parts = ising_parts(obj, con);
  RMatrix j = (1.0 - lambda) * parts.objective - lambda * parts.constraint;
  return IsingProblem{obj.dims, std::move(j), lambda};
}

QuboProblem build_qubo(const QuadraticObjective& obj, const ConstraintForm& con, double lambda) {
  check_lambda(lambda);
  if (obj.q.rows() != con.r.rows()) throw StructuralError("objective and constraint sizes differ");
  const RMatrix theta = obj.q / max_abs_entry(obj.q);
  const RMatrix shifted = con.r - 2.0 * RMatrix::Identity(con.r.rows(), con.r.cols());
  const RMatrix xi = shifted / max_abs_entry(shifted);
  return QuboProblem{-(1.0 - lambda) * theta + lambda * xi, Sense::kMinimize, lambda};
}

std::optional<Configuration> decode_spins(std::span<const std::int8_t> s0, const SystemDims& dims) {
  if (static_cast<int>(s0.size()) != dims.total_bits() + 1) {
    throw StructuralError("decode_spins: expected " + std::to_string(dims.total_bits() + 1) +
                          " spins, got " + std::to_string(s0.size()));
  }
  for (auto s : s0) {
    if (s != 1 && s != -1) throw StructuralError("decode_spins: spins must be -1 or +1");
  }
  BitVector bits(s0.size() - 1);
  for (std::size_t i = 1; i < s0.size(); ++i) bits[i - 1] = (s0[0] * s0[i] > 0) ? 1 : 0;
  return decode_bits(bits, dims);
}

SpinVector encode_spins(const Configuration& cfg, const SystemDims& dims) {
  const auto bits = encode_bits(cfg, dims);
  SpinVector s(bits.size() + 1);
  s[0] = 1;
  for (std::size_t i = 0; i < bits.size(); ++i) s[i + 1] = bits[i] ? 1 : -1;
  return s;
}

SpinOptimum brute_force_spins(const RMatrix& j) {
  if (j.rows() != j.cols()) throw StructuralError("coupling matrix must be square");
  const int k = static_cast<int>(j.rows());
  const RMatrix sym = symmetric_part(j);
  auto spin = [](std::uint8_t b) { return b ? 1.0 : -1.0; };
  auto exact = [&](const std::vector<std::uint8_t>& st) {
    double e = 0.0;
    for (int a = 0; a < k; ++a) {
      double row = 0.0;
      for (int b = 0; b < k; ++b) row += j(a, b) * spin(st[b]);
      e += spin(st[a]) * row;
    }
    return e;
  };
  // Flipping spin i changes the energy by -4 s_i sum_{j != i} Jsym_ij s_j.
  auto delta = [&](const std::vector<std::uint8_t>& st, int i) {
    double field = 0.0;
    for (int b = 0; b < k; ++b) {
      if (b != i) field += sym(i, b) * spin(st[b]);
    }
    return -4.0 * spin(st[i]) * field;
  };
  auto [best, energy] = enumerate_lexicographic(k, /*maximize=*/true, exact, delta);
  SpinOptimum out;
  out.spins.resize(best.size());
  for (std::size_t i = 0; i < best.size(); ++i) out.spins[i] = best[i] ? 1 : -1;
  out.energy = energy;
  return out;
}

SpinOptimum brute_force_spins(const IsingProblem& problem) { return brute_force_spins(problem.j); }

BinaryOptimum brute_force_qubo(const QuboProblem& problem) {
  const auto& w = problem.w;
  if (w.rows() != w.cols()) throw StructuralError("QUBO matrix must be square");
  const int k = static_cast<int>(w.rows());
  const RMatrix sym = symmetric_part(w);
  auto exact = [&](const std::vector<std::uint8_t>& st) {
    double v = 0.0;
    for (int a = 0; a < k; ++a) {
      if (!st[a]) continue;
      for (int b = 0; b < k; ++b) {
        if (st[b]) v += w(a, b);
      }
    }
    return v;
  };
  auto delta = [&](const std::vector<std::uint8_t>& st, int i) {
    double field = 0.0;
    for (int b = 0; b < k; ++b) {
      if (b != i && st[b]) field += sym(i, b);
    }
    const double gain = w(i, i) + 2.0 * field;
    return st[i] ? -gain : gain;
  };
  auto [best, value] =
      enumerate_lexicographic(k, problem.sense == Sense::kMaximize, exact, delta);
  return BinaryOptimum{std::move(best), value};
}

std::string serialize_qubo(const QuboProblem& problem) {
  const auto& w = problem.w;
  if (w.rows() != w.cols()) throw StructuralError("QUBO matrix must be square");
  if (!w.allFinite()) throw NumericError("QUBO matrix has non-finite entries");
  std::ostringstream body;
  std::size_t nnz = 0;
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    for (Eigen::Index j = i; j < w.cols(); ++j) {
      const double v = (i == j) ? w(i, i) : w(i, j) + w(j, i);
      if (v == 0.0) continue;
      body << i << ' ' << j << ' ' << format_coefficient(v) << '\n';
      ++nnz;
    }
  }
  std::ostringstream out;
  out << "qubo " << w.rows() << ' ' << nnz << '\n' << body.str();
  return out.str();
}

QuboProblem parse_qubo(std::string_view text, Sense sense) {
  std::istringstream in{std::string(text)};
  std::string tag;
  long size = -1;
  long nnz = -1;
  if (!(in >> tag >> size >> nnz) || tag != "qubo" || size < 0 || nnz < 0) {
    throw StructuralError("parse_qubo: malformed header");
  }
  QuboProblem problem;
  problem.sense = sense;
  problem.w = RMatrix::Zero(size, size);
  for (long e = 0; e < nnz; ++e) {
    long i = -1;
    long j = -1;
    std::string value;
    if (!(in >> i >> j >> value)) throw StructuralError("parse_qubo: truncated entry list");
    if (i < 0 || j < i || j >= size) throw StructuralError("parse_qubo: index out of range");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw StructuralError("parse_qubo: bad coefficient '" + value + "'");
    }
    if (i == j) {
      problem.w(i, i) = v;
    } else {
      problem.w(i, j) = 0.5 * v;
      problem.w(j, i) = 0.5 * v;
    }
  }
  std::string extra;
  if (in >> extra) throw StructuralError("parse_qubo: trailing data after entry list");
  return problem;
}

}  // namespace antsel
