// Copyright 2026 The qres Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Randomized property suites shared by the CLI and the test binaries.

#pragma once

#include "qres/io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qres {

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  Json details = Json::object();
  /// One JSON object per violation, each naming its witness.
  std::vector<Json> violations;

  Json to_json() const;
};

/// Strong monotonicity of the pure-state functionals (relative entropy,
/// superradiance embedding, trivial measure) on qubits and qutrits.
SuiteReport monotonicity_suite(std::size_t trials, std::uint64_t seed);

/// Random incoherent channels: certificate soundness on diagonal inputs, and
/// C_R monotonicity and strong monotonicity on random states (tol 1e-8).
SuiteReport incoherence_suite(std::size_t trials, std::uint64_t seed);

/// S + qfi/4 <= mu (N - mu) on random dense states with N in {2..6}.
SuiteReport tradeoff_suite(std::size_t trials, std::uint64_t seed);

}  // namespace qres
