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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace antsel {

// Shapes or lengths that do not agree (wrong dims, wrong vector length).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite inputs or a factorization that failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The CIM integrator produced a non-finite state.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& what, std::size_t step)
      : NumericError(what + " (time-step " + std::to_string(step) + ")"), step_(step) {}
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

// A search was refused because it exceeds a configured size guard.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A neighbourhood move was requested in a space with a single configuration.
class NoNeighbourError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace antsel
