// Copyright 2026 The antsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <antsel/annealing.hpp>
#include <antsel/cim.hpp>
#include <antsel/heuristics.hpp>
#include <antsel/ising.hpp>

#include <benchmark/benchmark.h>

using namespace antsel;

namespace {

FullChannel channel(const SystemDims& d, std::uint64_t seed = 1) {
  Rng rng(seed);
  return sample_channel(d, rng);
}

void BM_CapacityObjective(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const SystemDims d(k, k, 5);
  const auto ch = channel(d);
  Rng rng(2);
  const auto cfg = random_configuration(d, rng);
  for (auto _ : state) benchmark::DoNotOptimize(capacity_objective(ch, cfg, 10.0));
}
BENCHMARK(BM_CapacityObjective)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

void BM_CimAnneal(benchmark::State& state) {
  const SystemDims d(3, 3, 3);
  const auto ch = channel(d);
  const auto problem = to_ising(build_objective(ch), build_constraint(d), 0.6);
  CimParams params;
  params.substeps = static_cast<int>(state.range(0));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(run_anneal(problem, params, rng));
}
BENCHMARK(BM_CimAnneal)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_BruteForceSpins(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Rng rng(4);
  RMatrix j(k, k);
  for (Eigen::Index i = 0; i < j.size(); ++i) j(i) = rng.normal(0.0, 1.0);
  j = (0.5 * (j + j.transpose())).eval();
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_spins(j));
}
BENCHMARK(BM_BruteForceSpins)->Arg(9)->Arg(13)->Arg(19)->Unit(benchmark::kMillisecond);

void BM_SaSelect(benchmark::State& state) {
  const SystemDims d(3, 3, 5);
  const auto ch = channel(d);
  Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(sa_select(ch, 10.0, SaParams{}, rng));
}
BENCHMARK(BM_SaSelect)->Unit(benchmark::kMillisecond);

void BM_PtSelect(benchmark::State& state) {
  const SystemDims d(3, 3, 5);
  const auto ch = channel(d);
  Rng rng(6);
  for (auto _ : state) benchmark::DoNotOptimize(pt_select(ch, 10.0, PtParams{}, rng));
}
BENCHMARK(BM_PtSelect)->Unit(benchmark::kMillisecond);

void BM_SeSelect(benchmark::State& state) {
  const auto ch = channel(SystemDims(3, 3, 10));
  for (auto _ : state) benchmark::DoNotOptimize(se_select(ch, 10.0));
}
BENCHMARK(BM_SeSelect)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
