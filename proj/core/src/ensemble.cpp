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

#include "lzsme/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <variant>

#include "lzsme/errors.hpp"

namespace lzsme {

namespace {

// Trajectories are produced in blocks so the memory held for the ordered
// reduction stays bounded for large ensembles.
constexpr std::size_t kBlockSize = 256;

// P_e may leave [0, 1] by the normalization slack; anything further out is a
// genuine error and is left for histogram() to reject.
double clamp_population(double pe) {
  constexpr double kSlack = 2.0 * kPhysicalSlack;
  if (pe < 0.0 && pe >= -kSlack) return 0.0;
  if (pe > 1.0 && pe <= 1.0 + kSlack) return 1.0;
  return pe;
}

std::size_t grid_index(double t, const SweepParams& p,
                       const NumericsConfig& n) {
  const double spacing = n.dt * static_cast<double>(n.decimation);
  return static_cast<std::size_t>(std::llround((t - p.t_initial) / spacing));
}

}  // namespace

void EnsembleConfig::validate(const SweepParams& p,
                              const NumericsConfig& n) const {
  if (n_traj == 0) throw ConfigError("n_traj", "must be at least 1");
  if (histogram_bins == 0) {
    throw ConfigError("histogram_bins", "must be at least 1");
  }
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    const std::string key = "thresholds[" + std::to_string(j) + "]";
    if (!(thresholds[j] > 0.0 && thresholds[j] <= 1.0)) {
      throw ConfigError(key, "must lie in (0, 1]");
    }
    if (j > 0 && !(thresholds[j] > thresholds[j - 1])) {
      throw ConfigError(key, "thresholds must be strictly ascending");
    }
  }
  const std::size_t steps = n.step_count(p);
  const double spacing = n.dt * static_cast<double>(n.decimation);
  for (std::size_t j = 0; j < histogram_times.size(); ++j) {
    const std::string key = "histogram_times[" + std::to_string(j) + "]";
    const double t = histogram_times[j];
    if (!(t >= p.t_initial && t <= p.t_final)) {
      throw ConfigError(key, "outside the sweep window");
    }
    const double k = (t - p.t_initial) / spacing;
    const double step = std::round(k) * static_cast<double>(n.decimation);
    if (std::abs(k - std::round(k)) > 1e-6 ||
        step > static_cast<double>(steps)) {
      throw ConfigError(key, "not on the stored sample grid");
    }
  }
}

std::vector<std::uint64_t> histogram(std::span<const double> values,
                                     std::size_t bins) {
  if (bins == 0) throw ValueOutOfRange("histogram needs at least one bin");
  std::vector<std::uint64_t> counts(bins, 0);
  for (const double v : values) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw ValueOutOfRange("histogram value " + std::to_string(v) +
                            " outside [0, 1]");
    }
    const auto b = static_cast<std::size_t>(v * static_cast<double>(bins));
    ++counts[std::min(b, bins - 1)];
  }
  return counts;
}

Skewness skewness(std::span<const double> values) {
  const std::size_t count = values.size();
  if (count < 3) throw ValueOutOfRange("skewness needs at least three values");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) {
    throw DegenerateDistribution("all values coincide, skewness undefined");
  }
  const double n = static_cast<double>(count);
  double mean = 0.0;
  for (const double v : values) mean += v;
  mean /= n;
  double m2 = 0.0;
  double m3 = 0.0;
  for (const double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
  }
  m2 /= n;
  m3 /= n;
  if (!(m2 > 0.0)) {
    throw DegenerateDistribution("zero variance, skewness undefined");
  }

  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = count % 2 == 1
                            ? sorted[count / 2]
                            : 0.5 * (sorted[count / 2 - 1] + sorted[count / 2]);
  const double sd = std::sqrt(m2);
  return {m3 / (m2 * sd), 3.0 * (mean - median) / sd};
}

double exit_fraction(std::span<const TrajectorySummary> summaries, double c) {
  if (summaries.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& s : summaries) {
    if (s.max_excitation >= c) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(summaries.size());
}

DwellStats dwell_stats(std::span<const TrajectorySummary> summaries, double c,
                       double window) {
  DwellStats out;
  if (summaries.empty()) return out;
  double sum = 0.0;
  for (const auto& s : summaries) {
    const auto it = std::find_if(s.dwell.begin(), s.dwell.end(),
                                 [c](const DwellEntry& e) { return e.threshold == c; });
    if (it == s.dwell.end()) {
      throw ValueOutOfRange("threshold " + std::to_string(c) +
                            " was not tabulated");
    }
    const double fraction = it->time / window;
    sum += fraction;
    out.max_fraction = std::max(out.max_fraction, fraction);
  }
  out.mean_fraction = sum / static_cast<double>(summaries.size());
  return out;
}

EnsembleStats run_ensemble(const SweepParams& p, const NumericsConfig& n,
                           const EnsembleConfig& e, const RunOptions& opts) {
  p.validate();
  e.validate(p, n);
  std::vector<std::size_t> probe_rows;
  probe_rows.reserve(e.histogram_times.size());
  for (const double t : e.histogram_times) {
    probe_rows.push_back(grid_index(t, p, n));
  }

  unsigned threads = opts.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::min(e.n_traj, kBlockSize)));

  EnsembleStats stats;
  stats.n_traj = e.n_traj;
  stats.summaries.reserve(e.n_traj);
  std::vector<std::vector<double>> probes(e.histogram_times.size());
  for (auto& column : probes) column.reserve(e.n_traj);

  struct Failure {
    std::string what;
  };
  using Slot = std::variant<std::monostate, TrajectoryRecord, Failure>;
  std::vector<Slot> slots(std::min(e.n_traj, kBlockSize));
  std::vector<std::size_t> failed;
  std::string first_failure;

  for (std::size_t base = 0; base < e.n_traj; base += kBlockSize) {
    const std::size_t block = std::min(kBlockSize, e.n_traj - base);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t j = next.fetch_add(1); j < block; j = next.fetch_add(1)) {
        try {
          slots[j] = simulate_conditional(p, n, e.master_seed, base + j,
                                          e.thresholds);
        } catch (const NonPhysicalState& err) {
          slots[j] = Failure{err.what()};
        }
      }
    };
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads);
      for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work);
    }

    for (std::size_t j = 0; j < block; ++j) {
      const std::size_t index = base + j;
      if (auto* f = std::get_if<Failure>(&slots[j])) {
        if (failed.empty()) first_failure = f->what;
        failed.push_back(index);
        slots[j] = std::monostate{};
        continue;
      }
      auto& rec = std::get<TrajectoryRecord>(slots[j]);
      if (!failed.empty()) {
        slots[j] = std::monostate{};
        continue;
      }
      if (stats.times.empty()) {
        stats.times.reserve(rec.samples.size());
        for (const Sample& s : rec.samples) stats.times.push_back(s.t);
        stats.mean_pe.assign(rec.samples.size(), 0.0);
      }
      for (std::size_t k = 0; k < rec.samples.size(); ++k) {
        stats.mean_pe[k] += rec.samples[k].pe;
      }
      for (std::size_t h = 0; h < probe_rows.size(); ++h) {
        probes[h].push_back(clamp_population(rec.samples[probe_rows[h]].pe));
      }
      stats.summaries.push_back({index, e.master_seed, rec.max_excitation,
                                 rec.terminal_pe, rec.min_purity,
                                 rec.min_bloch_length, rec.dwell});
      if (opts.on_trajectory) opts.on_trajectory(rec);
      slots[j] = std::monostate{};
    }
  }

  if (!failed.empty()) {
    throw EnsembleFailure(std::to_string(failed.size()) +
                              " trajectories failed; first: " + first_failure,
                          failed);
  }

  const double count = static_cast<double>(e.n_traj);
  for (double& m : stats.mean_pe) m /= count;

  for (std::size_t h = 0; h < probes.size(); ++h) {
    HistogramStats hs;
    hs.t = stats.times[probe_rows[h]];
    hs.counts = histogram(probes[h], e.histogram_bins);
    if (probes[h].size() >= 3) {
      try {
        hs.skew = skewness(probes[h]);
      } catch (const DegenerateDistribution&) {
        hs.skew.reset();
      }
    }
    stats.histograms.push_back(std::move(hs));
  }

  for (const double c : e.thresholds) {
    const DwellStats d = dwell_stats(stats.summaries, c, p.window());
    stats.thresholds.push_back(
        {c, exit_fraction(stats.summaries, c), d.mean_fraction, d.max_fraction});
  }
  return stats;
}

}  // namespace lzsme
