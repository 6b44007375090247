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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lzsme {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A density matrix left the physical region (trace <= 0, lost Hermiticity,
/// or Bloch norm beyond the allowed slack).
class NonPhysicalState : public Error {
 public:
  explicit NonPhysicalState(const std::string& what, long long step = -1)
      : Error(step < 0 ? what : what + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  /// Integration step at which the failure happened, or -1 when unknown.
  long long step() const noexcept { return step_; }

 private:
  long long step_;
};

/// The homodyne current normalization diverges at zero detector efficiency.
class UndefinedCurrent : public Error {
 public:
  using Error::Error;
};

class IndivisibleFactor : public Error {
 public:
  using Error::Error;
};

class ValueOutOfRange : public Error {
 public:
  using Error::Error;
};

class DegenerateDistribution : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected at parse or validation time. `key_path` names the
/// offending entry, e.g. "eta" or "thresholds[2]".
class ConfigError : public Error {
 public:
  ConfigError(std::string key_path, const std::string& reason)
      : Error(key_path.empty() ? reason : key_path + ": " + reason),
        key_path_(std::move(key_path)) {}

  const std::string& key_path() const noexcept { return key_path_; }

 private:
  std::string key_path_;
};

/// One or more trajectories of an ensemble failed numerically.
class EnsembleFailure : public Error {
 public:
  EnsembleFailure(const std::string& what, std::vector<std::size_t> indices)
      : Error(what), indices_(std::move(indices)) {}

  const std::vector<std::size_t>& failed_indices() const noexcept {
    return indices_;
  }

 private:
  std::vector<std::size_t> indices_;
};

}  // namespace lzsme
