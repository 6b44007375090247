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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "../oracles.hpp"
#include "lzsme/errors.hpp"
#include "lzsme/sde.hpp"

using namespace lzsme;

namespace {

SweepParams lz(double eta = 1.0) {
  SweepParams p;
  p.omega = 100.0;
  p.alpha = 1e3;
  p.eta = eta;
  return p;
}

// Brownian bridge: n increments of spacing h that sum to total.
std::vector<double> bridge(std::mt19937_64& rng, double total, int n, double h) {
  std::normal_distribution<double> g(0.0, std::sqrt(h));
  std::vector<double> w(n);
  double s = 0.0;
  for (double& x : w) s += (x = g(rng));
  for (double& x : w) x += (total - s) / n;
  return w;
}

}  // namespace

TEST(Sde, SamplePathIsDeterministic) {
  const BrownianPath a = sample_path(42, 7, 1000, 1e-3);
  const BrownianPath b = sample_path(42, 7, 1000, 1e-3);
  EXPECT_EQ(a.increments, b.increments);
  EXPECT_NE(a.increments, sample_path(42, 8, 1000, 1e-3).increments);
  EXPECT_NE(a.increments, sample_path(43, 7, 1000, 1e-3).increments);
  EXPECT_EQ(a.master_seed, 42u);
  EXPECT_EQ(a.trajectory_index, 7u);
}

TEST(Sde, SamplePathMoments) {
  const double dt = 1e-4;
  const std::size_t n = 1000000;
  const BrownianPath p = sample_path(1, 0, n, dt);
  const double mean = p.total() / n;
  double var = 0.0;
  for (double x : p.increments) var += (x - mean) * (x - mean);
  var /= n - 1;
  EXPECT_LT(std::abs(mean), 4.0 * std::sqrt(dt / n));
  EXPECT_NEAR(var, dt, 0.01 * dt);
}

TEST(Sde, Coarsen) {
  BrownianPath p;
  p.dt = 0.5;
  p.increments = {1.0, 2.0, 4.0, 8.0};
  EXPECT_EQ(coarsen(p, 1).increments, p.increments);
  const BrownianPath c = coarsen(p, 2);
  EXPECT_EQ(c.increments, (std::vector<double>{3.0, 12.0}));
  EXPECT_EQ(c.dt, 1.0);
  EXPECT_EQ(c.coarsening, 2u);
  EXPECT_THROW(coarsen(p, 3), IndivisibleFactor);
  EXPECT_THROW(coarsen(p, 0), IndivisibleFactor);

  const BrownianPath fine = sample_path(3, 1, 480, 1e-3);
  for (std::size_t m : {1, 2, 3, 4, 5, 8, 16, 48, 480}) {
    EXPECT_NEAR(coarsen(fine, m).total(), fine.total(), 1e-13);
  }
  EXPECT_EQ(coarsen(coarsen(fine, 4), 3).increments.size(), 40u);
}

TEST(Sde, EtaZeroIgnoresNoise) {
  const SweepParams p = lz(0.0);
  const DensityMatrix rho = DensityMatrix::from_bloch({0.3, -0.2, 0.5});
  EXPECT_EQ(em_step(rho, 0.1, 4e-5, 0.01, p), em_step(rho, 0.1, 4e-5, -0.03, p));
  EXPECT_EQ(milstein_step(rho, 0.1, 4e-5, 0.01, p), em_step(rho, 0.1, 4e-5, 0.01, p));
}

TEST(Sde, BareCrossingKeepsPopulations) {
  SweepParams p = lz(0.0);
  p.omega = 0.0;
  p.gamma_decay = 0.0;
  const DensityMatrix rho = DensityMatrix::from_bloch({0.6, 0.0, 0.3});
  const DensityMatrix out = em_step(rho, 0.4, 1e-3, 0.0, p);
  EXPECT_NEAR(excited_population(out), excited_population(rho), 1e-15);
  const double phase = std::arg(out.matrix()(0, 1)) - std::arg(rho.matrix()(0, 1));
  // -i[H, rho] with H_ee = -alpha t rotates rho_ge by exp(-i alpha t dt) on average.
  EXPECT_NEAR(std::remainder(phase + 1e3 * 0.4005 * 1e-3, 2 * std::numbers::pi), 0.0, 1e-12);
}

TEST(Sde, SingleDecayStep) {
  SweepParams p = lz(0.0);
  p.omega = 0.0;
  const DensityMatrix out = em_step(DensityMatrix::excited(), 0.0, 1e-3, 0.0, p);
  EXPECT_NEAR(excited_population(out), 0.999, 1e-6);
}

TEST(Sde, MilsteinCorrectionVanishesWithItoSquare) {
  // dW^2 = dt zeroes the Ito correction; what remains is O(dt^{3/2}).
  const SweepParams p = lz(1.0);
  const DensityMatrix rho = DensityMatrix::from_bloch({0.4, 0.5, 0.6});
  double previous = 0.0;
  for (double dt : {1.6e-3, 4e-4, 1e-4}) {
    const double dW = std::sqrt(dt);
    const double d = max_abs(milstein_step(rho, 0.0, dt, dW, p).matrix() -
                             em_step(rho, 0.0, dt, dW, p).matrix());
    EXPECT_LT(d, 2.0 * std::pow(dt, 1.5));
    if (previous > 0.0) EXPECT_NEAR(previous / d, 8.0, 2.0);
    previous = d;
  }
}

TEST(Sde, MilsteinStepAgainstSubstepsOnBridge) {
  const SweepParams p = lz(1.0);
  std::mt19937_64 rng(31);
  for (double dt : {1e-3, 1e-4}) {
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const DensityMatrix rho0 = oracle::random_state(rng, 1.0);
      const double dW = std::normal_distribution<double>(0.0, std::sqrt(dt))(rng);
      const DensityMatrix coarse = milstein_step(rho0, 0.0, dt, dW, p);
      DensityMatrix fine = rho0;
      const std::vector<double> w = bridge(rng, dW, 100, dt / 100);
      for (int k = 0; k < 100; ++k) {
        fine = milstein_step(fine, k * dt / 100, dt / 100, w[k], p);
      }
      worst = std::max(worst, max_abs(coarse.matrix() - fine.matrix()));
    }
    EXPECT_LT(worst, 150.0 * dt) << "dt = " << dt;
  }
}

TEST(Sde, IntegrateEmptyPathAndGridChecks) {
  const SweepParams p = lz();
  const NumericsConfig n;
  BrownianPath empty;
  empty.dt = n.dt;
  const DensityMatrix rho = DensityMatrix::from_bloch({0.1, 0.2, 0.3});
  EXPECT_EQ(integrate(rho, empty, p, n), rho);
  EXPECT_THROW(integrate(rho, sample_path(1, 0, 100, n.dt), p, n), ConfigError);
  EXPECT_THROW(integrate(rho, sample_path(1, 0, 25000, 8e-5), p, n), ConfigError);
}

TEST(Sde, IntegrateDecayLaw) {
  SweepParams p = lz(0.0);
  p.omega = 0.0;
  p.t_initial = 0.0;
  p.t_final = 1.0;
  const NumericsConfig n;
  const BrownianPath path = sample_path(1, 0, n.step_count(p), n.dt);
  const DensityMatrix out = integrate(DensityMatrix::excited(), path, p, n);
  EXPECT_NEAR(excited_population(out), std::exp(-1.0), 1e-4);
}

TEST(Sde, IntegrateObserverAndInvariants) {
  const SweepParams p = lz(1.0);
  NumericsConfig n;
  const BrownianPath path = sample_path(9, 2, n.step_count(p), n.dt);
  std::size_t calls = 0;
  double min_purity = 1.0;
  double worst_trace = 0.0;
  ComplexMatrix2 noise_sum;
  const DensityMatrix last = integrate(
      DensityMatrix::ground(), path, p, n,
      [&](double t, const DensityMatrix& rho, double dW) {
        ++calls;
        EXPECT_NEAR(t, p.t_initial + calls * n.dt, 1e-12);
        EXPECT_EQ(dW, path.increments[calls - 1]);
        min_purity = std::min(min_purity, purity(rho));
        worst_trace = std::max(worst_trace, std::abs(rho.matrix().trace() - 1.0));
        noise_sum += diffusion(rho, p) * dW;
      });
  EXPECT_EQ(calls, path.increments.size());
  EXPECT_GE(min_purity, 0.99);
  EXPECT_GE(min_purity, 1.0 - 1e-9);
  EXPECT_LT(worst_trace, 1e-9);
  const double steps = static_cast<double>(calls);
  EXPECT_LT(max_abs(noise_sum) / steps, 5.0 * std::sqrt(n.dt / steps));
  EXPECT_EQ(last, integrate(DensityMatrix::ground(), path, p, n));
}

TEST(Sde, PurityDeficitAtPerfectDetection) {
  const SweepParams p = lz(1.0);
  for (double dt : {4e-5, 2e-5}) {
    NumericsConfig n;
    n.dt = dt;
    double deficit = 0.0;
    integrate(DensityMatrix::ground(), sample_path(4, 0, n.step_count(p), dt), p, n,
              [&](double, const DensityMatrix& rho, double) {
                deficit = std::max(deficit, 1.0 - purity(rho));
              });
    EXPECT_LT(deficit, 1e-9) << "dt = " << dt;
  }
}

TEST(Sde, EtaZeroIsPathIndependent) {
  const SweepParams p = lz(0.0);
  const NumericsConfig n;
  const std::size_t steps = n.step_count(p);
  EXPECT_EQ(integrate(DensityMatrix::ground(), sample_path(1, 0, steps, n.dt), p, n),
            integrate(DensityMatrix::ground(), sample_path(2, 5, steps, n.dt), p, n));
}

TEST(Sde, RawIntegrationKeepsTraceApproximately) {
  const SweepParams p = lz(0.0);
  NumericsConfig n;
  n.renormalize_each_step = false;
  double worst = 0.0;
  integrate(DensityMatrix::ground(), sample_path(1, 0, n.step_count(p), n.dt), p, n,
            [&](double, const DensityMatrix& rho, double) {
              worst = std::max(worst, std::abs(rho.matrix().trace() - 1.0));
            });
  EXPECT_LT(worst, 1e-9);
}

TEST(Sde, StrongErrorHarness) {
  SweepParams p;
  p.omega = 30.0;
  p.alpha = 100.0;
  p.t_initial = -0.2;
  p.t_final = 0.2;
  const std::vector<std::size_t> factors = {1, 10, 20, 40, 80, 100};
  const auto ms = strong_error(p, 4e-6, factors, 24, 5, Stepper::kMilstein);
  const auto em = strong_error(p, 4e-6, factors, 24, 5, Stepper::kEulerMaruyama);
  EXPECT_EQ(ms[0].error, 0.0);
  EXPECT_EQ(em[0].error, 0.0);
  EXPECT_NEAR(ms[1].dt, 4e-5, 1e-18);
  const double ms_slope = loglog_slope(ms);
  const double em_slope = loglog_slope(em);
  EXPECT_GE(ms_slope, 0.8);
  EXPECT_LE(ms_slope, 1.2);
  EXPECT_GE(em_slope, 0.4);
  EXPECT_LE(em_slope, 0.7);
  const std::vector<std::size_t> bad = {7};
  EXPECT_THROW(strong_error(p, 4e-6, bad, 1, 5, Stepper::kMilstein),
               IndivisibleFactor);
}

TEST(Sde, LoglogSlope) {
  std::vector<ConvergencePoint> pts;
  for (double dt : {1e-4, 2e-4, 4e-4}) pts.push_back({dt, 3.0 * std::pow(dt, 0.75)});
  pts.push_back({1e-5, 0.0});
  EXPECT_NEAR(loglog_slope(pts), 0.75, 1e-12);
  EXPECT_THROW(loglog_slope(std::span(pts).subspan(2)), ValueOutOfRange);
}

TEST(Sde, StepperNames) {
  EXPECT_EQ(parse_stepper(to_string(Stepper::kMilstein)), Stepper::kMilstein);
  EXPECT_EQ(parse_stepper("euler_maruyama"), Stepper::kEulerMaruyama);
  EXPECT_FALSE(parse_stepper("rk4"));
}
