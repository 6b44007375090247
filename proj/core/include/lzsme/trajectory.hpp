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

// Single-run records: the monitored (conditional) trajectory with its
// homodyne current, and the deterministic master-equation and unitary
// references on the same time grid.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lzsme/dynamics.hpp"
#include "lzsme/qubit.hpp"
#include "lzsme/sde.hpp"

namespace lzsme {

/// Thresholds C used for dwell tables when none are configured.
std::vector<double> default_thresholds();

struct Sample {
  double t = 0.0;
  double pe = 0.0;
  BlochVector bloch;
  double purity = 1.0;
};

struct DwellEntry {
  double threshold = 0.0;
  double time = 0.0;  ///< total time with P_e >= threshold
};

/// Step-resolution summaries. Every step is fed through add(), independent of
/// which states end up stored.
class SummaryAccumulator {
 public:
  SummaryAccumulator(std::span<const double> thresholds, double dt);

  /// Initial state; contributes to the maximum but not to dwell times.
  void start(const DensityMatrix& rho);
  /// State reached at the end of a step.
  void add(const DensityMatrix& rho);
  /// Same, for a bare excitation value.
  void add(double pe);

  double max_excitation() const { return max_pe_; }
  double min_purity() const { return min_purity_; }
  double min_bloch_length() const { return min_length_; }
  std::vector<DwellEntry> dwell_table() const;

 private:
  std::vector<double> thresholds_;
  std::vector<std::uint64_t> counts_;
  double dt_;
  double max_pe_ = 0.0;
  double min_purity_ = 1.0;
  double min_length_ = 1.0;
};

struct TrajectoryRecord {
  SweepParams params;
  NumericsConfig numerics;
  std::uint64_t master_seed = 0;
  std::uint64_t index = 0;

  std::vector<Sample> samples;
  /// Current summed over the steps leading up to each sample (0 for the
  /// initial one). Empty when eta = 0.
  std::vector<double> sample_current;
  /// Per-step current increments. Empty when eta = 0.
  std::vector<double> current;

  double max_excitation = 0.0;
  double min_purity = 1.0;
  double min_bloch_length = 1.0;
  std::vector<DwellEntry> dwell;
  double terminal_pe = 0.0;

  bool has_current() const { return !current.empty(); }
};

struct ReferenceRecord {
  SweepParams params;
  NumericsConfig numerics;
  std::vector<Sample> samples;
  double max_excitation = 0.0;
  double terminal_pe = 0.0;
};

/// Monitored run from the ground state at p.t_initial, driven by the Brownian
/// path sample_path(master_seed, index, ...). Throws NonPhysicalState.
TrajectoryRecord simulate_conditional(
    const SweepParams& p, const NumericsConfig& n, std::uint64_t master_seed,
    std::uint64_t index, std::span<const double> thresholds = {});

/// Same, for an explicitly supplied path.
TrajectoryRecord simulate_conditional(const SweepParams& p,
                                      const NumericsConfig& n,
                                      const BrownianPath& path,
                                      std::span<const double> thresholds = {});

/// Deterministic master-equation solution from the ground state on the grid of
/// n (the stepper and renormalization settings are ignored).
ReferenceRecord solve_unconditional(const SweepParams& p,
                                    const NumericsConfig& n);

/// Closed-system sweep (gamma_decay = 0) on the same grid.
ReferenceRecord solve_unitary(const SweepParams& p, const NumericsConfig& n);

double max_excitation(const TrajectoryRecord& record);
double max_excitation(const ReferenceRecord& record);

/// Total time the record spent at P_e >= C. Throws ValueOutOfRange when C is
/// not one of the thresholds the record was produced with.
double dwell_time(const TrajectoryRecord& record, double threshold);

/// dwell_time divided by the window length.
double dwell_fraction(const TrajectoryRecord& record, double threshold);

}  // namespace lzsme
