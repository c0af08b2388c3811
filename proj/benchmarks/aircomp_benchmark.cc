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

namespace risfeel {
namespace {

void BM_TransmitAndAggregate(benchmark::State& state) {
  const int k = 20;
  const int d = static_cast<int>(state.range(0));
  RandomStream stream(3);
  const ChannelRealization real =
      *SampleChannels(FadingSpec{}, k, 1, 0, stream);
  const std::vector<DeviceProfile> profiles(k, DeviceProfile{100, 100.0, 1.0});
  std::vector<int> all(k);
  for (int i = 0; i < k; ++i) all[i] = i;
  const Beamformer f = Beamformer::Canonical(1);
  const TransmitPlan plan = *PlanTransmissions(real.direct, all, profiles, f);
  std::vector<ModelVector> updates;
  for (int i = 0; i < k; ++i) {
    ModelVector u(d);
    for (int j = 0; j < d; ++j) u[j] = stream.Normal();
    updates.push_back(std::move(u));
  }
  for (auto _ : state) {
    auto report =
        TransmitAndAggregate(plan, real.direct, f, updates, 0.1, {}, stream);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * k * d);
}
BENCHMARK(BM_TransmitAndAggregate)->Arg(1000)->Arg(10000);

}  // namespace
}  // namespace risfeel
