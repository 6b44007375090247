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

// Stochastic integration of the conditional master equation: Wiener paths
// with exact coarsening, the Euler-Maruyama and Milstein steppers, and the
// strong-convergence harness built on consistent Brownian paths.
//
// Both steppers share the deterministic part, a symmetric splitting of each
// step into exact half-step exponentials of the Hamiltonian around the exact
// amplitude-damping channel. Every factor is completely positive and the
// propagator is unconditionally stable, whatever the detuning reached by the
// sweep. The noise enters at mid-step; Milstein is applied in Kraus form
// (see src/step_kernel.hpp), which equals the Ito-Taylor scheme with the
// exact derivative of the quadratic noise coefficient up to O(dt^{3/2}).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lzsme/dynamics.hpp"
#include "lzsme/qubit.hpp"

namespace lzsme {

enum class Stepper { kEulerMaruyama, kMilstein };

std::string_view to_string(Stepper s);
std::optional<Stepper> parse_stepper(std::string_view name);

struct NumericsConfig {
  double dt = 4e-5;
  Stepper stepper = Stepper::kMilstein;
  bool renormalize_each_step = true;
  std::size_t decimation = 100;  ///< store every k-th step

  /// Throws ConfigError unless dt > 0, decimation >= 1 and dt divides the
  /// sweep window within one part in 1e9.
  void validate(const SweepParams& p) const;

  /// Number of steps covering the sweep window; validates first.
  std::size_t step_count(const SweepParams& p) const;

  friend bool operator==(const NumericsConfig&, const NumericsConfig&) = default;
};

struct BrownianPath {
  double dt = 0.0;
  std::vector<double> increments;
  std::uint64_t master_seed = 0;
  std::uint64_t trajectory_index = 0;
  std::size_t coarsening = 1;  ///< cumulative block factor relative to the sample

  double total() const;
};

/// Wiener increments drawn as Normal(0, dt) from a stream that is a pure
/// function of (master_seed, trajectory_index).
BrownianPath sample_path(std::uint64_t master_seed,
                         std::uint64_t trajectory_index, std::size_t n_steps,
                         double dt);

/// Sums disjoint blocks of m increments. Throws IndivisibleFactor unless m
/// divides the increment count.
BrownianPath coarsen(const BrownianPath& path, std::size_t m);

DensityMatrix em_step(const DensityMatrix& rho, double t, double dt, double dW,
                      const SweepParams& p);
DensityMatrix milstein_step(const DensityMatrix& rho, double t, double dt,
                            double dW, const SweepParams& p);

/// Called after every step with the time reached, the new state and the
/// Wiener increment consumed by that step.
using StepObserver =
    std::function<void(double t, const DensityMatrix& rho, double dW)>;

/// Integrates from p.t_initial over all path increments with step path.dt.
/// Throws NonPhysicalState carrying the failing step index, and ConfigError
/// when path and config disagree on the grid.
DensityMatrix integrate(const DensityMatrix& rho0, const BrownianPath& path,
                        const SweepParams& p, const NumericsConfig& n,
                        const StepObserver& observer = {});

struct ConvergencePoint {
  double dt = 0.0;
  double error = 0.0;  ///< mean Frobenius distance of terminal states
};

/// For every factor m, integrates n_paths shared paths at dt_fine * m (by
/// coarsening the fine path) and reports the mean terminal distance to the
/// factor-1 solution. Paths start from the ground state at p.t_initial.
std::vector<ConvergencePoint> strong_error(const SweepParams& p, double dt_fine,
                                           std::span<const std::size_t> factors,
                                           std::size_t n_paths,
                                           std::uint64_t master_seed,
                                           Stepper stepper);

/// Least-squares slope of log(error) against log(dt). Points with zero error
/// are skipped; throws ValueOutOfRange if fewer than two remain.
double loglog_slope(std::span<const ConvergencePoint> points);

}  // namespace lzsme
