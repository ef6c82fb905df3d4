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

#include <antsel/annealing.hpp>
#include <antsel/channel.hpp>
#include <antsel/cim.hpp>
#include <antsel/rng.hpp>
#include <antsel/solver_result.hpp>

#include <cstdint>
#include <optional>
#include <vector>
#include <string_view>

namespace antsel {

inline constexpr std::uint64_t kExhaustiveGuard = 10'000'000;

// Closed-form evaluation counts; throw RefusalError past the guard.
std::uint64_t es_evaluation_count(const SystemDims& dims);
std::uint64_t decoupled_es_evaluation_count(const SystemDims& dims);
std::uint64_t se_evaluation_count(const SystemDims& dims);

/// Exhaustive search with symmetric power (p_over_nt is ignored for SNR).
/// Ties go to the lexicographically smallest configuration.
SolverResult es_select(const FullChannel& ch, ObjectiveKind kind, double p_over_nt);

/// Exhaustive search that solves the power-allocation problem for every
/// configuration: water-filling for capacity, principal-eigenmode
/// beamforming for SNR. objective is the power-optimized value.
SolverResult joint_es_select(const FullChannel& ch, ObjectiveKind kind, double total_power);

/// Configuration-based ES with symmetric power P/n_t, then power allocation
/// on the selected configuration only.
SolverResult es_then_power_select(const FullChannel& ch, ObjectiveKind kind, double total_power);

/// Power-optimized objective of one configuration.
double power_optimized_value(const FullChannel& ch, const Configuration& cfg, ObjectiveKind kind,
                             double total_power);

enum class LinkEnd { kReceiverFirst, kTransmitterFirst };

/// Norm-based selection. Receiver-first: each receive antenna takes the state
/// whose full row of G has the largest norm, then each transmit antenna the
/// state whose column, restricted to the chosen rows, is largest.
Configuration nsa_select(const FullChannel& ch, LinkEnd order = LinkEnd::kReceiverFirst);

Configuration rs_select(const SystemDims& dims, Rng& rng);

struct SeReport {
  double max_identity_error = 0.0;  // |C(G_k) - C(G) - log2(1 - p g_k M^-1 g_k^H)| over all eliminations
  int eliminations = 0;
  bool ridge_applied = false;
};

/// Decoupled selection by sequential elimination: rows within every receive
/// block, then columns within every transmit block, each step removing the
/// row with the smallest capacity loss.
SolverResult se_select(const FullChannel& ch, double p_over_nt, SeReport* report = nullptr);

/// Decoupled exhaustive search: one end over all its configurations using the
/// full matrix at the other end, then the other end with the first fixed.
SolverResult decoupled_es_select(const FullChannel& ch, double p_over_nt,
                                 LinkEnd order = LinkEnd::kReceiverFirst);

enum class SnrBackend { kCim, kQuboSa, kBrute };

std::string_view to_string(SnrBackend backend) noexcept;

struct SnrBackendParams {
  CimParams cim;
  double qubo_lambda = 0.8;
  QuboSaParams qubo_sa;
};

/// Decoded reads of the lambda-blended QUBO for ch; std::nullopt marks an
/// infeasible read. Read r uses derive_seed(base, r), base drawn from rng.
std::vector<std::optional<Configuration>> qubo_sample(const FullChannel& ch, double lambda,
                                                      const QuboSaParams& params, Rng& rng);

/// Low-SNR surrogate: maximizes the SNR objective with the chosen back-end.
/// objective is Q0 of the returned configuration. Falls back to random
/// selection (fallback = true) when the back-end yields no feasible answer.
SolverResult snr_based_select(const FullChannel& ch, SnrBackend backend,
                              const SnrBackendParams& params, Rng& rng);

}  // namespace antsel
