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

#include "risfeel/training.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/status_macros.h"

namespace risfeel {

absl::Status ValidateTrainSpec(const TrainSpec& spec) {
  if (spec.local_epochs < 1 || spec.batch_size < 1 || spec.rounds < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid training spec: epochs=", spec.local_epochs,
                     " batch=", spec.batch_size, " rounds=", spec.rounds));
  }
  if (!(spec.learning_rate >= 0.0) || !std::isfinite(spec.learning_rate)) {
    return absl::InvalidArgumentError("learning rate must be finite and >= 0");
  }
  return absl::OkStatus();
}

absl::StatusOr<ModelVector> LocalUpdate(const Model& model,
                                        const ModelVector& global,
                                        const Dataset& local,
                                        const TrainSpec& spec,
                                        RandomStream& stream) {
  RISFEEL_RETURN_IF_ERROR(ValidateTrainSpec(spec));
  if (local.size() == 0) {
    return absl::InvalidArgumentError("device has no local data");
  }
  const int n = local.size();
  const int batch = std::min(spec.batch_size, n);
  ModelVector params = global;
  std::vector<int> order(n);
  std::vector<int> rows(batch);
  for (int epoch = 0; epoch < spec.local_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), stream.engine());
    for (int start = 0; start + batch <= n; start += batch) {
      std::copy(order.begin() + start, order.begin() + start + batch,
                rows.begin());
      std::sort(rows.begin(), rows.end());
      RISFEEL_ASSIGN_OR_RETURN(LossGradient lg,
                               model.LossAndGradient(params, local, rows));
      params -= spec.learning_rate * lg.gradient;
    }
  }
  return ModelVector(params - global);
}

absl::StatusOr<ModelVector> GlobalUpdate(const ModelVector& global,
                                         const ModelVector& aggregated) {
  if (global.size() != aggregated.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("aggregated update has ", aggregated.size(),
                     " entries; model has ", global.size()));
  }
  return ModelVector(global + aggregated);
}

absl::StatusOr<double> Evaluate(const Model& model, const ModelVector& params,
                                const Dataset& test) {
  if (test.size() == 0) return absl::InvalidArgumentError("empty test set");
  RISFEEL_ASSIGN_OR_RETURN(Eigen::MatrixXd logits,
                           model.Logits(params, test.features));
  int correct = 0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < logits.cols(); ++c) {
      if (logits(i, c) > logits(i, best)) best = c;
    }
    if (best == test.labels[i]) ++correct;
  }
  return static_cast<double>(correct) / test.size();
}

}  // namespace risfeel
