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

#include "risfeel/dataset.h"

#include <algorithm>
#include <numeric>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/status_macros.h"

namespace risfeel {

Dataset Dataset::Subset(std::span<const int> rows) const {
  Dataset out;
  out.num_classes = num_classes;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.labels.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = features.row(rows[i]);
    out.labels.push_back(labels[rows[i]]);
  }
  return out;
}

absl::Status ValidateDataset(const Dataset& data) {
  if (data.size() < 1) return absl::InvalidArgumentError("dataset is empty");
  if (data.features.rows() != data.size()) {
    return absl::InvalidArgumentError(
        "dataset feature rows and labels disagree");
  }
  for (int y : data.labels) {
    if (y < 0 || y >= data.num_classes) {
      return absl::InvalidArgumentError(
          absl::StrCat("label ", y, " outside [0, ", data.num_classes, ")"));
    }
  }
  return absl::OkStatus();
}

Dataset GaussianMixtureTask::Sample(int count, RandomStream& stream) const {
  Dataset out;
  const int classes = num_classes();
  out.num_classes = classes;
  out.features.resize(count, means.cols());
  out.labels.resize(count);
  for (int i = 0; i < count; ++i) {
    const int y = i % classes;
    out.labels[i] = y;
    for (Eigen::Index f = 0; f < means.cols(); ++f) {
      out.features(i, f) = means(y, f) + noise_std * stream.Normal();
    }
  }
  return out;
}

absl::StatusOr<GaussianMixtureTask> MakeGaussianMixtureTask(
    int num_classes, int num_features, double separation,
    RandomStream& stream) {
  if (num_classes < 2 || num_features < 1 || !(separation >= 0.0)) {
    return absl::InvalidArgumentError(
        "mixture needs >= 2 classes, >= 1 feature and separation >= 0");
  }
  GaussianMixtureTask task;
  task.means.resize(num_classes, num_features);
  for (int c = 0; c < num_classes; ++c) {
    Eigen::VectorXd v(num_features);
    for (int f = 0; f < num_features; ++f) v[f] = stream.Normal();
    task.means.row(c) = separation * v.normalized().transpose();
  }
  return task;
}

absl::StatusOr<std::vector<std::vector<int>>> PartitionIndices(
    const Dataset& data, int num_devices, const PartitionSpec& spec,
    RandomStream& stream) {
  RISFEEL_RETURN_IF_ERROR(ValidateDataset(data));
  const int per_device = spec.samples_per_device;
  if (num_devices < 1 || per_device < 1) {
    return absl::InvalidArgumentError(
        "partition needs >= 1 device and >= 1 sample per device");
  }
  const int64_t needed = static_cast<int64_t>(num_devices) * per_device;
  if (needed > data.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "insufficient data: ", num_devices, " devices x ", per_device,
        " samples needs ", needed, ", have ", data.size()));
  }

  std::vector<std::vector<int>> parts(num_devices);
  switch (spec.mode) {
    case PartitionSpec::Mode::kIid: {
      std::vector<int> order(data.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), stream.engine());
      for (int k = 0; k < num_devices; ++k) {
        parts[k].assign(order.begin() + k * per_device,
                        order.begin() + (k + 1) * per_device);
      }
      break;
    }
    case PartitionSpec::Mode::kShard: {
      const int shards_each = spec.shards_per_device;
      if (shards_each < 1 || per_device % shards_each != 0) {
        return absl::InvalidArgumentError(absl::StrCat(
            "shards_per_device (", shards_each,
            ") must divide samples_per_device (", per_device, ")"));
      }
      const int shard_count = num_devices * shards_each;
      const int shard_size = data.size() / shard_count;
      const int take = per_device / shards_each;
      if (shard_size < take) {
        return absl::InvalidArgumentError(
            absl::StrCat("insufficient data: shards of ", shard_size,
                         " samples cannot supply ", take, " each"));
      }
      std::vector<int> sorted(data.size());
      std::iota(sorted.begin(), sorted.end(), 0);
      std::stable_sort(sorted.begin(), sorted.end(), [&](int a, int b) {
        return data.labels[a] < data.labels[b];
      });
      std::vector<int> shard_ids(shard_count);
      std::iota(shard_ids.begin(), shard_ids.end(), 0);
      std::shuffle(shard_ids.begin(), shard_ids.end(), stream.engine());
      for (int k = 0; k < num_devices; ++k) {
        for (int s = 0; s < shards_each; ++s) {
          const int id = shard_ids[k * shards_each + s];
          std::vector<int> shard(sorted.begin() + id * shard_size,
                                 sorted.begin() + (id + 1) * shard_size);
          std::shuffle(shard.begin(), shard.end(), stream.engine());
          parts[k].insert(parts[k].end(), shard.begin(), shard.begin() + take);
        }
      }
      break;
    }
    case PartitionSpec::Mode::kDirichlet: {
      if (!(spec.dirichlet_alpha > 0.0)) {
        return absl::InvalidArgumentError("dirichlet alpha must be positive");
      }
      std::vector<std::vector<int>> pools(data.num_classes);
      for (int i = 0; i < data.size(); ++i) pools[data.labels[i]].push_back(i);
      for (auto& pool : pools) {
        std::shuffle(pool.begin(), pool.end(), stream.engine());
      }
      for (int k = 0; k < num_devices; ++k) {
        std::vector<double> p(data.num_classes);
        double sum = 0.0;
        for (double& x : p) {
          x = stream.Gamma(spec.dirichlet_alpha);
          sum += x;
        }
        if (!(sum > 0.0)) std::fill(p.begin(), p.end(), 1.0);
        for (int n = 0; n < per_device; ++n) {
          double mass = 0.0;
          for (int c = 0; c < data.num_classes; ++c) {
            if (!pools[c].empty()) mass += p[c];
          }
          int chosen = -1;
          if (mass > 0.0) {
            double u = stream.Uniform() * mass;
            for (int c = 0; c < data.num_classes; ++c) {
              if (pools[c].empty()) continue;
              chosen = c;
              u -= p[c];
              if (u < 0.0) break;
            }
          } else {
            // Every class this device favors is exhausted.
            for (int c = 0; c < data.num_classes && chosen < 0; ++c) {
              if (!pools[c].empty()) chosen = c;
            }
          }
          parts[k].push_back(pools[chosen].back());
          pools[chosen].pop_back();
        }
      }
      break;
    }
  }
  return parts;
}

absl::StatusOr<std::vector<Dataset>> Partition(const Dataset& data,
                                               int num_devices,
                                               const PartitionSpec& spec,
                                               RandomStream& stream) {
  RISFEEL_ASSIGN_OR_RETURN(auto parts,
                           PartitionIndices(data, num_devices, spec, stream));
  std::vector<Dataset> out;
  out.reserve(parts.size());
  for (const auto& rows : parts) out.push_back(data.Subset(rows));
  return out;
}

}  // namespace risfeel
