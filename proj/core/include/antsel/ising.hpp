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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace antsel {

// Binary selection vector: transmitter blocks first, then receiver blocks,
// one block of n bits per antenna.
using BitVector = std::vector<std::uint8_t>;
// Spin vector with entries in {-1, +1}.
using SpinVector = std::vector<std::int8_t>;

BitVector encode_bits(const Configuration& cfg, const SystemDims& dims);
// std::nullopt unless every block is one-hot.
std::optional<Configuration> decode_bits(std::span<const std::uint8_t> bits, const SystemDims& dims);
bool is_feasible(std::span<const std::uint8_t> bits, const SystemDims& dims);

/// b^T Q b equals the SNR objective of every feasible selection vector.
struct QuadraticObjective {
  SystemDims dims;
  RMatrix q;

  double value(std::span<const std::uint8_t> bits) const;
};

/// Aggregate one-hot constraint b^T R b - 2 * 1^T b; R is block-diagonal
/// with one all-ones n x n block per antenna.
struct ConstraintForm {
  SystemDims dims;
  RMatrix r;

  double penalty(std::span<const std::uint8_t> bits) const;
};

/// Spin problem over the extended vector [s_aux, s]; the solver target is
/// the maximizer of s0^T J s0.
struct IsingProblem {
  SystemDims dims;
  RMatrix j;
  double lambda = 0.0;

  int size() const noexcept { return static_cast<int>(j.rows()); }
  double energy(std::span<const std::int8_t> spins) const;
};

enum class Sense { kMaximize, kMinimize };

/// Binary quadratic program over b. build_qubo() produces an energy to be
/// minimized (annealer convention); a raw matrix defaults to maximization.
struct QuboProblem {
  RMatrix w;
  Sense sense = Sense::kMaximize;
  double lambda = 0.0;

  int size() const noexcept { return static_cast<int>(w.rows()); }
  double value(std::span<const std::uint8_t> bits) const;
};

/// Quadratic spin form s^T A s + c^T s.
struct SpinForm {
  RMatrix quadratic;
  RVector linear;
};

QuadraticObjective build_objective(const FullChannel& ch);
ConstraintForm build_constraint(const SystemDims& dims);

// b^T M b + c^T b with b = (s + 1) / 2, constant dropped.
SpinForm binary_to_spin(const RMatrix& m, const RVector& c);
// [[0, 0], [0, A]] + [[0, c/2], [c^T/2, 0]]: folds the linear term onto an
// auxiliary spin at index 0.
RMatrix border_with_auxiliary(const SpinForm& form);
// Largest absolute entry; 1 for an all-zero matrix.
double max_abs_entry(const RMatrix& m);
// zeroDiag(M) / max_abs_entry(zeroDiag(M)).
RMatrix normalize_couplings(const RMatrix& m);

/// Objective and constraint couplings before they are blended by lambda.
struct IsingParts {
  RMatrix objective;   // Fn(J)
  RMatrix constraint;  // Fn(J0)
};
IsingParts ising_parts(const QuadraticObjective& obj, const ConstraintForm& con);

/// J_lambda = (1 - lambda) Fn(J) - lambda Fn(J0).
IsingProblem to_ising(const QuadraticObjective& obj, const ConstraintForm& con, double lambda);

/// W = -(1 - lambda) Theta + lambda Xi, to be minimized.
QuboProblem build_qubo(const QuadraticObjective& obj, const ConstraintForm& con, double lambda);

/// Undo the auxiliary-spin gauge, map spins to bits and check one-hot blocks.
std::optional<Configuration> decode_spins(std::span<const std::int8_t> s0, const SystemDims& dims);
/// Spin vector with s_aux = +1 whose tail encodes cfg.
SpinVector encode_spins(const Configuration& cfg, const SystemDims& dims);

inline constexpr int kBruteForceMaxVariables = 24;

struct SpinOptimum {
  SpinVector spins;
  double energy = 0.0;
};
struct BinaryOptimum {
  BitVector bits;
  double value = 0.0;
};

/// Exact argmax of s^T J s; ties go to the lexicographically smallest
/// vector (-1 before +1).
SpinOptimum brute_force_spins(const IsingProblem& problem);
SpinOptimum brute_force_spins(const RMatrix& j);
/// Exact optimum of b^T W b in the problem's sense; ties go to the
/// lexicographically smallest vector.
BinaryOptimum brute_force_qubo(const QuboProblem& problem);

/// Coordinate-list text: "qubo <size> <nnz>" then "i j value" per nonzero
/// upper-triangle coefficient of b_i b_j.
std::string serialize_qubo(const QuboProblem& problem);
/// Inverse of serialize_qubo; off-diagonal coefficients are split evenly
/// over the symmetric halves. The text carries no sense; exported files are
/// energies to minimize.
QuboProblem parse_qubo(std::string_view text, Sense sense = Sense::kMinimize);

}  // namespace antsel
