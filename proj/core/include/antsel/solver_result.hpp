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
#include <string_view>

namespace antsel {

enum class ObjectiveKind { kSnr, kCapacity };

std::string_view to_string(ObjectiveKind kind) noexcept;

/// Outcome of one configuration-selection run.
struct SolverResult {
  Configuration config;
  double objective = 0.0;
  std::uint64_t evaluations = 0;
  bool feasible = true;
  // The solver could not produce a configuration and random selection stood in.
  bool fallback = false;
  // Fraction of solver samples (anneals, reads) that were feasible.
  double feasible_rate = 1.0;
  // Simulated annealing also reports the configuration it ended on, which
  // may differ from the best one visited (config above).
  std::optional<Configuration> final_config;
  double final_objective = 0.0;
};

}  // namespace antsel
