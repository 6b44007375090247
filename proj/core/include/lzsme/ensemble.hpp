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

// Ensembles of monitored trajectories: deterministic per-index seeding,
// parallel production, and an index-ordered reduction to the ensemble
// statistics (mean curve, histograms with skewness, exit and dwell tables).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lzsme/dynamics.hpp"
#include "lzsme/sde.hpp"
#include "lzsme/trajectory.hpp"

namespace lzsme {

struct EnsembleConfig {
  std::size_t n_traj = 1000;
  std::uint64_t master_seed = 0;
  std::vector<double> thresholds = default_thresholds();
  std::size_t histogram_bins = 25;
  std::vector<double> histogram_times = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  bool store_trajectories = false;

  /// Throws ConfigError unless n_traj >= 1, bins >= 1, thresholds are sorted
  /// ascending within (0, 1], and every histogram time lies on the stored
  /// sample grid of (p, n).
  void validate(const SweepParams& p, const NumericsConfig& n) const;

  friend bool operator==(const EnsembleConfig&, const EnsembleConfig&) = default;
};

struct TrajectorySummary {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;  ///< master seed of the stream
  double max_excitation = 0.0;
  double terminal_pe = 0.0;
  double min_purity = 1.0;
  double min_bloch_length = 1.0;
  std::vector<DwellEntry> dwell;
};

struct Skewness {
  double moment = 0.0;
  double pearson = 0.0;
};

struct HistogramStats {
  double t = 0.0;
  std::vector<std::uint64_t> counts;
  std::optional<Skewness> skew;  ///< absent when the samples are degenerate
};

struct ThresholdStats {
  double threshold = 0.0;
  double exit_fraction = 0.0;
  double mean_dwell_fraction = 0.0;
  double max_dwell_fraction = 0.0;
};

struct EnsembleStats {
  std::size_t n_traj = 0;
  std::vector<double> times;
  std::vector<double> mean_pe;
  std::vector<HistogramStats> histograms;
  std::vector<ThresholdStats> thresholds;
  std::vector<TrajectorySummary> summaries;
};

struct RunOptions {
  unsigned threads = 0;  ///< 0 selects the hardware concurrency
  /// Invoked from the reducing thread in index order, once per trajectory.
  std::function<void(const TrajectoryRecord&)> on_trajectory;
};

/// Throws EnsembleFailure listing every failed index when any trajectory
/// raises NonPhysicalState.
EnsembleStats run_ensemble(const SweepParams& p, const NumericsConfig& n,
                           const EnsembleConfig& e, const RunOptions& opts = {});

/// Equal-width counts on [0, 1]; 1.0 falls in the top bin. Throws
/// ValueOutOfRange for values outside [0, 1] and for bins == 0.
std::vector<std::uint64_t> histogram(std::span<const double> values,
                                     std::size_t bins);

/// Third standardized central moment and Pearson's 3 (mean - median) / sd.
/// Throws ValueOutOfRange for fewer than three values and
/// DegenerateDistribution when all values coincide.
Skewness skewness(std::span<const double> values);

/// Fraction of trajectories with max_excitation >= C.
double exit_fraction(std::span<const TrajectorySummary> summaries, double c);

struct DwellStats {
  double mean_fraction = 0.0;
  double max_fraction = 0.0;
};

/// Mean and maximum dwell fraction at a tabulated threshold C. Throws
/// ValueOutOfRange when C is not in the summaries' dwell rows.
DwellStats dwell_stats(std::span<const TrajectorySummary> summaries, double c,
                       double window);

}  // namespace lzsme
