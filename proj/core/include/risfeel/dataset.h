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

#ifndef RISFEEL_DATASET_H_
#define RISFEEL_DATASET_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "risfeel/random.h"

namespace risfeel {

// Labeled classification data: one feature row per sample.
struct Dataset {
  Eigen::MatrixXd features;
  std::vector<int> labels;
  int num_classes = 0;

  int size() const { return static_cast<int>(labels.size()); }
  int num_features() const { return static_cast<int>(features.cols()); }

  // Rows in the given order.
  Dataset Subset(std::span<const int> rows) const;
};

absl::Status ValidateDataset(const Dataset& data);

// Isotropic Gaussian clusters whose means lie on a sphere.
struct GaussianMixtureTask {
  Eigen::MatrixXd means;  // classes x features
  double noise_std = 1.0;

  int num_classes() const { return static_cast<int>(means.rows()); }
  // Balanced labels (sample i has class i mod C).
  Dataset Sample(int count, RandomStream& stream) const;
};

// Means are random directions scaled to norm `separation`.
absl::StatusOr<GaussianMixtureTask> MakeGaussianMixtureTask(
    int num_classes, int num_features, double separation, RandomStream& stream);

struct PartitionSpec {
  enum class Mode { kIid, kShard, kDirichlet };

  Mode mode = Mode::kIid;
  int shards_per_device = 2;
  double dirichlet_alpha = 0.5;
  int samples_per_device = 100;
};

// Disjoint index sets, one per device, each of size samples_per_device.
//   iid:       uniform sample without replacement.
//   shard:     sort by label, cut into K * s contiguous shards, deal s random
//              shards per device and draw samples_per_device / s from each.
//   dirichlet: per-device class proportions ~ Dirichlet(alpha); exhausted
//              classes are dropped and the proportions renormalized.
absl::StatusOr<std::vector<std::vector<int>>> PartitionIndices(
    const Dataset& data, int num_devices, const PartitionSpec& spec,
    RandomStream& stream);

absl::StatusOr<std::vector<Dataset>> Partition(const Dataset& data,
                                               int num_devices,
                                               const PartitionSpec& spec,
                                               RandomStream& stream);

}  // namespace risfeel

#endif  // RISFEEL_DATASET_H_
