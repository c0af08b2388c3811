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

#include "benchmark/benchmark.h"
#include "risfeel/dataset.h"
#include "risfeel/model.h"
#include "risfeel/random.h"
#include "risfeel/training.h"

namespace risfeel {
namespace {

Dataset MakeData(int n, int features, int classes, RandomStream& stream) {
  Dataset d;
  d.num_classes = classes;
  d.features.resize(n, features);
  d.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < features; ++j) d.features(i, j) = stream.Normal();
    d.labels[i] = static_cast<int>(stream.UniformIndex(classes));
  }
  return d;
}

void BM_LocalUpdateSoftmax(benchmark::State& state) {
  RandomStream stream(8);
  const Dataset local =
      MakeData(static_cast<int>(state.range(0)), 10, 4, stream);
  const SoftmaxRegression model(10, 4);
  const ModelVector global = ModelVector::Zero(model.dimension());
  TrainSpec spec;
  for (auto _ : state) {
    auto delta = LocalUpdate(model, global, local, spec, stream);
    benchmark::DoNotOptimize(delta);
  }
}
BENCHMARK(BM_LocalUpdateSoftmax)->Arg(100)->Arg(1000);

void BM_LocalUpdatePerceptron(benchmark::State& state) {
  RandomStream stream(9);
  const Dataset local =
      MakeData(static_cast<int>(state.range(0)), 10, 4, stream);
  const Perceptron model(10, 16, 4);
  RandomStream init(10);
  const ModelVector global = model.InitialParameters(init);
  TrainSpec spec;
  for (auto _ : state) {
    auto delta = LocalUpdate(model, global, local, spec, stream);
    benchmark::DoNotOptimize(delta);
  }
}
BENCHMARK(BM_LocalUpdatePerceptron)->Arg(100)->Arg(1000);

}  // namespace
}  // namespace risfeel
