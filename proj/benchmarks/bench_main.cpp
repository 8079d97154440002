// Copyright 2026 The affinv Authors
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

#include "affinv/affinv.hpp"

namespace {

using namespace affinv;

void BM_Congruence(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SymPosDefMatrix m = random_pd(n, 1);
  const InvertibleMatrix a = random_gl(n, 2);
  for (auto _ : state) benchmark::DoNotOptimize(congruence(m, a));
}
BENCHMARK(BM_Congruence)->Arg(2)->Arg(6)->Arg(12);

void BM_LogDet(benchmark::State& state) {
  const SymPosDefMatrix m = random_pd(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(log_det(m));
}
BENCHMARK(BM_LogDet)->Arg(2)->Arg(6)->Arg(12);

void BM_QuantizedDetCost(benchmark::State& state) {
  const SymPosDefMatrix m = random_pd(6, 4);
  for (auto _ : state) benchmark::DoNotOptimize(quantized_det_cost(m, 0.5));
}
BENCHMARK(BM_QuantizedDetCost);

void BM_InvarianceSuite(benchmark::State& state) {
  TrialConfig cfg;
  cfg.trials = static_cast<int>(state.range(0));
  const CostFunction f = make_det_cost();
  for (auto _ : state) benchmark::DoNotOptimize(run_invariance_suite(f, cfg).passed());
}
BENCHMARK(BM_InvarianceSuite)->Arg(10)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_DecomposeSl(benchmark::State& state) {
  const InvertibleMatrix a = random_sl(static_cast<int>(state.range(0)), 5);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_sl(a));
}
BENCHMARK(BM_DecomposeSl)->Arg(3)->Arg(5)->Arg(10);

void BM_McdEstimate(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  NormalSource normal(6);
  Matrix pts(k, 2);
  for (int r = 0; r < k; ++r) pts.row(r) << normal(), normal();
  const Dataset x(pts);
  const CostFunction f = make_det_cost();
  for (auto _ : state) benchmark::DoNotOptimize(mcd_estimate(x, k / 2 + 1, f));
  state.SetItemsProcessed(state.iterations() * binomial(k, k / 2 + 1));
}
BENCHMARK(BM_McdEstimate)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
