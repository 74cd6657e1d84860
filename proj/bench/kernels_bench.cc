// Copyright 2026 The rieszlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Serial reference against the OpenMP path for the hot kernels. Arg 0 runs
// serially, arg 1 in parallel; both produce identical numbers.

#include <benchmark/benchmark.h>

#include <vector>

#include "rieszlab/group.h"
#include "rieszlab/harness.h"
#include "rieszlab/kernels.h"
#include "rieszlab/quad.h"
#include "rieszlab/quasinorm.h"
#include "rieszlab/riesz.h"
#include "rieszlab/test_function.h"

namespace {

using namespace rieszlab;

Execution Exec(const benchmark::State& state) {
  return state.range(0) ? Execution::kParallel : Execution::kSerial;
}

QuadratureSpec Polar(std::size_t angular, Execution exec) {
  QuadratureSpec s;
  s.method = Method::kPolar;
  s.angular = angular;
  s.exec = exec;
  return s;
}

void BM_QmcBallVolume(benchmark::State& state) {
  const auto n = QuasiNormSpec::koranyi(GroupSpec::heisenberg(1));
  QuadratureSpec s;
  s.method = Method::kQuasiMonteCarlo;
  s.samples = 1 << 16;
  s.exec = Exec(state);
  const auto one = [](const Point&) { return 1.0; };
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(one, Region::ball(n, 1.0), s).value);
  }
  state.SetItemsProcessed(state.iterations() * s.samples * s.qmc_shifts);
}
BENCHMARK(BM_QmcBallVolume)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RieszApplyMany(benchmark::State& state) {
  const auto n = QuasiNormSpec::euclidean(GroupSpec::euclidean(2));
  const auto u = TestFunction::gaussian(n, {1.0});
  std::vector<Point> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(Point{0.1 * i, 0.05 * i});
  const QuadratureSpec s = Polar(32, Exec(state));
  for (auto _ : state) {
    benchmark::DoNotOptimize(riesz_apply_many(n, 1.0, u, xs, s));
  }
  state.SetItemsProcessed(state.iterations() * xs.size());
}
BENCHMARK(BM_RieszApplyMany)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SteinWeissQuotient(benchmark::State& state) {
  const auto n = QuasiNormSpec::koranyi(GroupSpec::heisenberg(1));
  const ExponentSet e{4, 2, 4, 2.5, 0.25, 0.25};
  const auto u = TestFunction::gaussian(n, {1.0});
  const QuadratureSpec s = Polar(8, Exec(state));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sw_quotient(n, e, u, s).value);
  }
}
BENCHMARK(BM_SteinWeissQuotient)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_PairwiseSum(benchmark::State& state) {
  std::vector<double> v(1 << 20);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 1.0 / (1.0 + i);
  const Execution exec = Exec(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        blocked_sum(v.size(), [&](std::size_t i) { return v[i]; }, exec));
  }
  state.SetBytesProcessed(state.iterations() * v.size() * sizeof(double));
}
BENCHMARK(BM_PairwiseSum)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
