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

#include <benchmark/benchmark.h>

#include "lzsme/ensemble.hpp"
#include "lzsme/sde.hpp"
#include "lzsme/trajectory.hpp"

namespace {

lzsme::SweepParams paper_sweep() {
  lzsme::SweepParams p;
  p.omega = 100.0;
  p.alpha = 1.0e3;
  return p;
}

void BM_MilsteinStep(benchmark::State& state) {
  const lzsme::SweepParams p = paper_sweep();
  lzsme::DensityMatrix rho = lzsme::DensityMatrix::from_bloch({0.6, 0.0, 0.8});
  double t = 0.0;
  for (auto _ : state) {
    rho = lzsme::milstein_step(rho, t, 4e-5, 1e-3, p);
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_MilsteinStep);

void BM_Integrate(benchmark::State& state) {
  const lzsme::SweepParams p = paper_sweep();
  lzsme::NumericsConfig n;
  n.stepper = static_cast<lzsme::Stepper>(state.range(0));
  const lzsme::BrownianPath path = lzsme::sample_path(1, 0, n.step_count(p), n.dt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        lzsme::integrate(lzsme::DensityMatrix::ground(), path, p, n));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(path.increments.size()));
}
BENCHMARK(BM_Integrate)
    ->Arg(static_cast<int>(lzsme::Stepper::kMilstein))
    ->Arg(static_cast<int>(lzsme::Stepper::kEulerMaruyama))
    ->Unit(benchmark::kMillisecond);

void BM_SimulateConditional(benchmark::State& state) {
  const lzsme::SweepParams p = paper_sweep();
  const lzsme::NumericsConfig n;
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lzsme::simulate_conditional(p, n, 1, index++));
  }
}
BENCHMARK(BM_SimulateConditional)->Unit(benchmark::kMillisecond);

void BM_SamplePath(benchmark::State& state) {
  std::uint64_t index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lzsme::sample_path(1, index++, 50000, 4e-5));
  }
}
BENCHMARK(BM_SamplePath)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
