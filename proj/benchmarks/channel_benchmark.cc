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
#include "risfeel/channel.h"
#include "risfeel/random.h"

namespace risfeel {
namespace {

void BM_SampleChannels(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int l = static_cast<int>(state.range(1));
  const FadingSpec spec;
  RandomStream stream(1);
  for (auto _ : state) {
    auto real = SampleChannels(spec, k, 4, l, stream);
    benchmark::DoNotOptimize(real);
  }
}
BENCHMARK(BM_SampleChannels)->Args({20, 0})->Args({20, 64})->Args({20, 256});

void BM_EffectiveChannel(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  RandomStream stream(2);
  const ChannelRealization real =
      *SampleChannels(FadingSpec{}, 20, 4, l, stream);
  const RisConfig theta = RisConfig::AllOnes(l);
  for (auto _ : state) {
    auto h = EffectiveChannel(real, theta);
    benchmark::DoNotOptimize(h);
  }
}
BENCHMARK(BM_EffectiveChannel)->Arg(16)->Arg(64)->Arg(256);

}  // namespace
}  // namespace risfeel
