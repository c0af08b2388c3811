// Copyright 2026 The risfeel Authors.
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

#include <vector>

#include "benchmark/benchmark.h"
#include "risfeel/aircomp.h"
#include "risfeel/channel.h"
#include "risfeel/random.h"
#include "risfeel/ris_optimizer.h"

namespace risfeel {
namespace {

void BM_OptimizeMse(benchmark::State& state) {
  const int k = 20;
  const int l = static_cast<int>(state.range(0));
  RandomStream stream(4);
  const ChannelRealization real =
      *SampleChannels(FadingSpec{}, k, 1, l, stream);
  const std::vector<DeviceProfile> profiles(k, DeviceProfile{100, 100.0, 1.0});
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  OptimizerOptions options;
  options.codebook = PhaseCodebook::Discrete(8);
  options.restarts = 2;
  options.max_sweeps = 20;
  for (auto _ : state) {
    RandomStream run(5);
    auto sol = OptimizeMse(real, all, profiles, 0.1, options, run);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_OptimizeMse)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_OptimizeAlignmentCsitFree(benchmark::State& state) {
  const int k = 10;
  const int l = static_cast<int>(state.range(0));
  RandomStream stream(6);
  const ChannelRealization real =
      *SampleChannels(FadingSpec{}, k, 1, l, stream);
  const std::vector<double> weights(k, 1.0);
  OptimizerOptions options;
  options.codebook = PhaseCodebook::Discrete(8);
  options.restarts = 2;
  options.max_sweeps = 50;
  for (auto _ : state) {
    RandomStream run(7);
    auto res = OptimizeAlignmentCsitFree(real, weights, options, run);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_OptimizeAlignmentCsitFree)
    ->Arg(10)
    ->Arg(90)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace risfeel
