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

#ifndef RISFEEL_TRAINING_H_
#define RISFEEL_TRAINING_H_

#include "absl/status/statusor.h"
#include "risfeel/dataset.h"
#include "risfeel/linalg.h"
#include "risfeel/model.h"
#include "risfeel/random.h"

namespace risfeel {

struct TrainSpec {
  int local_epochs = 1;
  int batch_size = 20;
  double learning_rate = 0.1;
  int rounds = 50;
};

absl::Status ValidateTrainSpec(const TrainSpec& spec);

// Mini-batch SGD from `global` over `local` for spec.local_epochs epochs and
// returns the model change (local - global). Each epoch draws a permutation
// from `stream`; a trailing partial batch is dropped, and a batch size larger
// than the local set is clamped to it. Batch rows are summed in ascending
// index order, so a full batch reproduces the full-data gradient exactly.
absl::StatusOr<ModelVector> LocalUpdate(const Model& model,
                                        const ModelVector& global,
                                        const Dataset& local,
                                        const TrainSpec& spec,
                                        RandomStream& stream);

// global + aggregated.
absl::StatusOr<ModelVector> GlobalUpdate(const ModelVector& global,
                                         const ModelVector& aggregated);

// Fraction of argmax-correct predictions; ties go to the lowest class index.
absl::StatusOr<double> Evaluate(const Model& model, const ModelVector& params,
                                const Dataset& test);

}  // namespace risfeel

#endif  // RISFEEL_TRAINING_H_
