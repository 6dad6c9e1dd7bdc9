// Copyright 2026 The Authors.
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

#include "smsp/harness.hpp"
#include "smsp/instance.hpp"
#include "smsp/linear_msp.hpp"
#include "smsp/objective.hpp"

namespace {

using namespace smsp;

void BM_GreedyCoverage(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = generate_instance(
      "uniform(n=" + std::to_string(n) + ",k=" + std::to_string(n / 3) +
          ")+coverage(universe=" + std::to_string(2 * n) + ")",
      1);
  for (auto _ : state) {
    GreedyTrace trace =
        greedy(inst.objective, inst.matroid, inst.matroid.ground());
    benchmark::DoNotOptimize(trace.result);
  }
}
BENCHMARK(BM_GreedyCoverage)->Arg(12)->Arg(24)->Arg(48);

void BM_MatroidRank(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Instance inst = generate_instance(
      "sparse(n=" + std::to_string(n) + ",rows=" + std::to_string(n / 2) +
          ",sparsity=3)+linear(lo=0,hi=1)",
      2);
  ElementSet full = inst.matroid.ground();
  for (auto _ : state) {
    benchmark::DoNotOptimize(inst.matroid.rank(full));
  }
}
BENCHMARK(BM_MatroidRank)->Arg(16)->Arg(32)->Arg(64);

void BM_SimulatedTrial(benchmark::State& state) {
  Instance inst = generate_instance(
      "partition(n=16,classes=4,capacity=1)+coverage(universe=24)", 3);
  ExperimentConfig cfg;
  cfg.algorithm = AlgorithmKey::kSmspSimulated;
  cfg.trials = 1;
  cfg.threads = 1;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    cfg.seed = ++seed;
    TrialAggregate agg = run_trials(cfg, inst);
    benchmark::DoNotOptimize(agg.rows.front().f_output);
  }
}
BENCHMARK(BM_SimulatedTrial);

void BM_AlphaPartition(benchmark::State& state) {
  long long n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alpha_partition(n));
  }
}
BENCHMARK(BM_AlphaPartition)->Arg(100)->Arg(10000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();
