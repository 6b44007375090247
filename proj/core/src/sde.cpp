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

#include "lzsme/sde.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "lzsme/errors.hpp"
#include "step_kernel.hpp"

namespace lzsme {

std::string_view to_string(Stepper s) {
  switch (s) {
    case Stepper::kEulerMaruyama:
      return "euler_maruyama";
    case Stepper::kMilstein:
      return "milstein";
  }
  return "unknown";
}

std::optional<Stepper> parse_stepper(std::string_view name) {
  if (name == "euler_maruyama") return Stepper::kEulerMaruyama;
  if (name == "milstein") return Stepper::kMilstein;
  return std::nullopt;
}

void NumericsConfig::validate(const SweepParams& p) const {
  if (!(std::isfinite(dt) && dt > 0.0)) {
    throw ConfigError("dt", "must be finite and > 0");
  }
  if (decimation == 0) throw ConfigError("decimation", "must be >= 1");
  const double steps = std::round(p.window() / dt);
  if (steps < 1.0 || std::abs(steps * dt - p.window()) > 1e-9 * p.window()) {
    throw ConfigError("dt", "must divide the sweep window t_final - t_initial");
  }
}

std::size_t NumericsConfig::step_count(const SweepParams& p) const {
  validate(p);
  return static_cast<std::size_t>(std::llround(p.window() / dt));
}

double BrownianPath::total() const {
  return std::accumulate(increments.begin(), increments.end(), 0.0);
}

BrownianPath sample_path(std::uint64_t master_seed,
                         std::uint64_t trajectory_index, std::size_t n_steps,
                         double dt) {
  if (n_steps < 1 || !(dt > 0.0)) {
    throw ValueOutOfRange("sample_path needs n_steps >= 1 and dt > 0");
  }
  // One independent engine per (seed, index) pair; the seed sequence mixes
  // all 128 bits so neighbouring indices give unrelated streams.
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                    static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(trajectory_index),
                    static_cast<std::uint32_t>(trajectory_index >> 32),
                    0x4c5a534du};
  std::mt19937_64 engine(seq);
  std::normal_distribution<double> normal(0.0, 1.0);

  BrownianPath path;
  path.dt = dt;
  path.master_seed = master_seed;
  path.trajectory_index = trajectory_index;
  path.increments.resize(n_steps);
  const double scale = std::sqrt(dt);
  for (auto& dw : path.increments) dw = scale * normal(engine);
  return path;
}

BrownianPath coarsen(const BrownianPath& path, std::size_t m) {
  if (m == 0 || path.increments.size() % m != 0) {
    throw IndivisibleFactor("coarsening factor " + std::to_string(m) +
                            " does not divide " +
                            std::to_string(path.increments.size()) +
                            " increments");
  }
  BrownianPath out;
  out.dt = path.dt * static_cast<double>(m);
  out.master_seed = path.master_seed;
  out.trajectory_index = path.trajectory_index;
  out.coarsening = path.coarsening * m;
  out.increments.resize(path.increments.size() / m);
  for (std::size_t j = 0; j < out.increments.size(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += path.increments[j * m + k];
    out.increments[j] = sum;
  }
  return out;
}

namespace {

DensityMatrix single_step(const DensityMatrix& rho, double t, double dt,
                          double dW, const SweepParams& p, Stepper stepper) {
  const detail::StepKernel kernel(p, stepper, dt);
  return normalize(kernel.step(rho.matrix(), t, dW));
}

}  // namespace

DensityMatrix em_step(const DensityMatrix& rho, double t, double dt, double dW,
                      const SweepParams& p) {
  return single_step(rho, t, dt, dW, p, Stepper::kEulerMaruyama);
}

DensityMatrix milstein_step(const DensityMatrix& rho, double t, double dt,
                            double dW, const SweepParams& p) {
  return single_step(rho, t, dt, dW, p, Stepper::kMilstein);
}

DensityMatrix integrate(const DensityMatrix& rho0, const BrownianPath& path,
                        const SweepParams& p, const NumericsConfig& n,
                        const StepObserver& observer) {
  if (path.increments.empty()) return rho0;
  const double dt = path.dt;
  if (!(dt > 0.0) || std::abs(dt - n.dt) > 1e-9 * n.dt) {
    throw ConfigError("dt", "Brownian path spacing does not match the config");
  }
  const std::size_t steps = path.increments.size();
  if (std::abs(static_cast<double>(steps) * dt - p.window()) >
      1e-9 * p.window()) {
    throw ConfigError("dt", "Brownian path does not cover the sweep window");
  }

  const detail::StepKernel kernel(p, n.stepper, dt);
  ComplexMatrix2 state = rho0.matrix();
  DensityMatrix current = rho0;
  for (std::size_t k = 0; k < steps; ++k) {
    const double t0 = p.t_initial + static_cast<double>(k) * dt;
    const double dW = path.increments[k];
    try {
      state = kernel.step(state, t0, dW);
      if (n.renormalize_each_step) {
        current = normalize(state);
        state = current.matrix();
      } else if (observer || k + 1 == steps) {
        current = normalize(state);
      }
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState(e.what(), static_cast<long long>(k));
    }
    if (observer) {
      observer(p.t_initial + static_cast<double>(k + 1) * dt, current, dW);
    }
  }
  return current;
}

namespace {

// Trace-normalized integration without the Bloch-ball check. Euler-Maruyama
// overshoots the pure-state boundary by O(dt^{1/2}) at eta = 1, and the
// convergence harness has to measure that error rather than reject it.
ComplexMatrix2 integrate_unchecked(const BrownianPath& path,
                                   const SweepParams& p, Stepper stepper) {
  const detail::StepKernel kernel(p, stepper, path.dt);
  ComplexMatrix2 state = DensityMatrix::ground().matrix();
  for (std::size_t k = 0; k < path.increments.size(); ++k) {
    const double t0 = p.t_initial + static_cast<double>(k) * path.dt;
    state = kernel.step(state, t0, path.increments[k]);
    const Complex tr = state.trace();
    if (!(std::isfinite(tr.real()) && tr.real() > 0.0)) {
      throw NonPhysicalState("trace collapsed during convergence run",
                             static_cast<long long>(k));
    }
    state *= 1.0 / tr.real();
  }
  return state;
}

}  // namespace

std::vector<ConvergencePoint> strong_error(const SweepParams& p, double dt_fine,
                                           std::span<const std::size_t> factors,
                                           std::size_t n_paths,
                                           std::uint64_t master_seed,
                                           Stepper stepper) {
  NumericsConfig fine_cfg;
  fine_cfg.dt = dt_fine;
  fine_cfg.stepper = stepper;
  const std::size_t n_fine = fine_cfg.step_count(p);
  for (const std::size_t m : factors) {
    if (m == 0 || n_fine % m != 0) {
      throw IndivisibleFactor("coarsening factor " + std::to_string(m) +
                              " does not divide " + std::to_string(n_fine) +
                              " fine steps");
    }
  }

  std::vector<double> sums(factors.size(), 0.0);
  for (std::size_t i = 0; i < n_paths; ++i) {
    const BrownianPath fine = sample_path(master_seed, i, n_fine, dt_fine);
    const ComplexMatrix2 reference = integrate_unchecked(fine, p, stepper);
    for (std::size_t j = 0; j < factors.size(); ++j) {
      if (factors[j] == 1) continue;
      const ComplexMatrix2 coarse =
          integrate_unchecked(coarsen(fine, factors[j]), p, stepper);
      sums[j] += frobenius_norm(coarse - reference);
    }
  }

  std::vector<ConvergencePoint> out;
  out.reserve(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    out.push_back({dt_fine * static_cast<double>(factors[j]),
                   n_paths == 0 ? 0.0 : sums[j] / static_cast<double>(n_paths)});
  }
  return out;
}

double loglog_slope(std::span<const ConvergencePoint> points) {
  std::vector<std::pair<double, double>> xy;
  for (const auto& pt : points) {
    if (pt.error > 0.0 && pt.dt > 0.0) {
      xy.emplace_back(std::log(pt.dt), std::log(pt.error));
    }
  }
  if (xy.size() < 2) {
    throw ValueOutOfRange("slope needs at least two points with nonzero error");
  }
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : xy) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(xy.size());
  my /= static_cast<double>(xy.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : xy) {
    sxy += (x - mx) * (y - my);
    sxx += (x - mx) * (x - mx);
  }
  return sxy / sxx;
}

}  // namespace lzsme
