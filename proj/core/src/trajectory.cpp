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

#include "lzsme/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "lzsme/errors.hpp"
#include "step_kernel.hpp"

namespace lzsme {

std::vector<double> default_thresholds() {
  return {0.4, 0.5, 0.6, 0.64, 0.7, 0.8, 0.85, 0.9, 0.95, 0.96, 0.97, 0.98, 0.99};
}

SummaryAccumulator::SummaryAccumulator(std::span<const double> thresholds,
                                       double dt)
    : thresholds_(thresholds.begin(), thresholds.end()),
      counts_(thresholds.size(), 0),
      dt_(dt) {}

void SummaryAccumulator::start(const DensityMatrix& rho) {
  max_pe_ = excited_population(rho);
  min_purity_ = purity(rho);
  min_length_ = to_bloch(rho).norm();
}

void SummaryAccumulator::add(const DensityMatrix& rho) {
  add(excited_population(rho));
  min_purity_ = std::min(min_purity_, purity(rho));
  min_length_ = std::min(min_length_, to_bloch(rho).norm());
}

void SummaryAccumulator::add(double pe) {
  max_pe_ = std::max(max_pe_, pe);
  for (std::size_t j = 0; j < thresholds_.size(); ++j) {
    if (pe >= thresholds_[j]) ++counts_[j];
  }
}

std::vector<DwellEntry> SummaryAccumulator::dwell_table() const {
  std::vector<DwellEntry> out;
  out.reserve(thresholds_.size());
  for (std::size_t j = 0; j < thresholds_.size(); ++j) {
    out.push_back({thresholds_[j], static_cast<double>(counts_[j]) * dt_});
  }
  return out;
}

namespace {

Sample make_sample(double t, const DensityMatrix& rho) {
  return {t, excited_population(rho), to_bloch(rho), purity(rho)};
}

bool is_stored_step(std::size_t step, std::size_t steps, std::size_t every) {
  return step % every == 0 || step == steps;
}

std::size_t stored_count(std::size_t steps, std::size_t every) {
  return steps / every + 1 + (steps % every == 0 ? 0 : 1);
}

ReferenceRecord solve_deterministic(const SweepParams& p,
                                    const NumericsConfig& n) {
  p.validate();
  const std::size_t steps = n.step_count(p);
  const detail::StepKernel kernel(p, n.stepper, n.dt);

  ReferenceRecord rec;
  rec.params = p;
  rec.numerics = n;
  rec.samples.reserve(stored_count(steps, n.decimation));

  DensityMatrix rho = DensityMatrix::ground();
  rec.samples.push_back(make_sample(p.t_initial, rho));
  rec.max_excitation = excited_population(rho);
  ComplexMatrix2 state = rho.matrix();
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t0 = p.t_initial + static_cast<double>(k - 1) * n.dt;
    try {
      state = kernel.deterministic(state, t0);
      rho = normalize(state);
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState(e.what(), static_cast<long long>(k - 1));
    }
    rec.max_excitation = std::max(rec.max_excitation, excited_population(rho));
    if (is_stored_step(k, steps, n.decimation)) {
      rec.samples.push_back(
          make_sample(p.t_initial + static_cast<double>(k) * n.dt, rho));
    }
  }
  rec.terminal_pe = excited_population(rho);
  return rec;
}

}  // namespace

TrajectoryRecord simulate_conditional(const SweepParams& p,
                                      const NumericsConfig& n,
                                      std::uint64_t master_seed,
                                      std::uint64_t index,
                                      std::span<const double> thresholds) {
  p.validate();
  const std::size_t steps = n.step_count(p);
  return simulate_conditional(p, n,
                              sample_path(master_seed, index, steps, n.dt),
                              thresholds);
}

TrajectoryRecord simulate_conditional(const SweepParams& p,
                                      const NumericsConfig& n,
                                      const BrownianPath& path,
                                      std::span<const double> thresholds) {
  p.validate();
  const std::size_t steps = n.step_count(p);
  if (path.increments.size() != steps) {
    throw ConfigError("dt", "Brownian path does not match the step count");
  }
  const std::vector<double> fallback =
      thresholds.empty() ? default_thresholds() : std::vector<double>{};
  const std::span<const double> levels =
      thresholds.empty() ? std::span<const double>(fallback) : thresholds;

  TrajectoryRecord rec;
  rec.params = p;
  rec.numerics = n;
  rec.master_seed = path.master_seed;
  rec.index = path.trajectory_index;
  rec.samples.reserve(stored_count(steps, n.decimation));
  const bool monitored = p.eta > 0.0;
  if (monitored) {
    rec.current.reserve(steps);
    rec.sample_current.reserve(stored_count(steps, n.decimation));
  }

  DensityMatrix previous = DensityMatrix::ground();
  SummaryAccumulator summary(levels, n.dt);
  summary.start(previous);
  rec.samples.push_back(make_sample(p.t_initial, previous));
  if (monitored) rec.sample_current.push_back(0.0);

  std::size_t step = 0;
  double block_current = 0.0;
  const DensityMatrix final_state = integrate(
      previous, path, p, n,
      [&](double t, const DensityMatrix& rho, double dW) {
        ++step;
        if (monitored) {
          const double dq = current_increment(previous, n.dt, dW, p);
          rec.current.push_back(dq);
          block_current += dq;
        }
        summary.add(rho);
        if (is_stored_step(step, steps, n.decimation)) {
          rec.samples.push_back(make_sample(t, rho));
          if (monitored) {
            rec.sample_current.push_back(block_current);
            block_current = 0.0;
          }
        }
        previous = rho;
      });

  rec.max_excitation = summary.max_excitation();
  rec.min_purity = summary.min_purity();
  rec.min_bloch_length = summary.min_bloch_length();
  rec.dwell = summary.dwell_table();
  rec.terminal_pe = excited_population(final_state);
  return rec;
}

ReferenceRecord solve_unconditional(const SweepParams& p,
                                    const NumericsConfig& n) {
  SweepParams closed = p;
  closed.eta = 0.0;
  ReferenceRecord rec = solve_deterministic(closed, n);
  rec.params = p;
  return rec;
}

ReferenceRecord solve_unitary(const SweepParams& p, const NumericsConfig& n) {
  SweepParams closed = p;
  closed.gamma_decay = 0.0;
  closed.eta = 0.0;
  ReferenceRecord rec = solve_deterministic(closed, n);
  rec.params = p;
  return rec;
}

double max_excitation(const TrajectoryRecord& record) {
  return record.max_excitation;
}

double max_excitation(const ReferenceRecord& record) {
  return record.max_excitation;
}

double dwell_time(const TrajectoryRecord& record, double threshold) {
  for (const DwellEntry& e : record.dwell) {
    if (e.threshold == threshold) return e.time;
  }
  throw ValueOutOfRange("threshold " + std::to_string(threshold) +
                        " was not tabulated for this record");
}

double dwell_fraction(const TrajectoryRecord& record, double threshold) {
  return dwell_time(record, threshold) / record.params.window();
}

}  // namespace lzsme
