// Copyright 2026 The lzsme Authors
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

#pragma once

// Run configuration: a flat JSON object whose keys map onto the sweep,
// numerics, ensemble and convergence settings. Unknown keys are rejected and
// every default that was filled in is remembered for the manifest.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "lzsme/dynamics.hpp"
#include "lzsme/ensemble.hpp"
#include "lzsme/sde.hpp"

namespace lzsme::app {

struct ConvergenceConfig {
  double dt_fine = 4e-6;
  std::vector<std::size_t> factors = {10, 20, 40, 80};
  std::size_t n_paths = 200;
  std::vector<Stepper> steppers = {Stepper::kMilstein, Stepper::kEulerMaruyama};

  friend bool operator==(const ConvergenceConfig&, const ConvergenceConfig&) = default;
};

struct RunConfig {
  SweepParams sweep;
  NumericsConfig numerics;
  EnsembleConfig ensemble;
  ConvergenceConfig convergence;
  std::string output_dir = "out";

  /// Keys that were absent from the parsed document, in schema order.
  std::vector<std::string> defaults_applied;

  /// Re-runs every validation; throws ConfigError with the key path.
  void validate() const;

  /// Equality of the settings; defaults_applied is bookkeeping and ignored.
  friend bool operator==(const RunConfig& a, const RunConfig& b) {
    return a.sweep == b.sweep && a.numerics == b.numerics &&
           a.ensemble == b.ensemble && a.convergence == b.convergence &&
           a.output_dir == b.output_dir;
  }
};

/// Names of every accepted key, in schema order.
const std::vector<std::string>& config_keys();

/// Parses and validates. Throws ConfigError; malformed JSON is reported
/// against the key path "$".
RunConfig parse_config(std::string_view text);
RunConfig parse_config_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// Full resolved configuration; parse_config(serialize(c)) == c.
nlohmann::json serialize(const RunConfig& c);

}  // namespace lzsme::app
