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
#include <map>
#include <set>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace risfeel {
namespace {

Dataset BalancedTask(int classes, int count, uint64_t seed) {
  RandomStream stream(seed);
  auto task = MakeGaussianMixtureTask(classes, 5, 2.0, stream);
  return task->Sample(count, stream);
}

void ExpectDisjointAndSized(const std::vector<std::vector<int>>& parts,
                            int per_device, int total) {
  std::set<int> seen;
  for (const auto& p : parts) {
    EXPECT_EQ(static_cast<int>(p.size()), per_device);
    for (int i : p) {
      EXPECT_GE(i, 0);
      EXPECT_LT(i, total);
      EXPECT_TRUE(seen.insert(i).second) << "index " << i << " repeated";
    }
  }
}

TEST(GaussianMixtureTest, ShapesAndBalancedLabels) {
  RandomStream stream(1);
  ASSERT_OK_AND_ASSIGN(GaussianMixtureTask task,
                       MakeGaussianMixtureTask(3, 4, 2.5, stream));
  EXPECT_EQ(task.num_classes(), 3);
  for (int c = 0; c < 3; ++c) EXPECT_NEAR(task.means.row(c).norm(), 2.5, 1e-12);
  const Dataset data = task.Sample(10, stream);
  EXPECT_OK(ValidateDataset(data));
  EXPECT_EQ(data.num_features(), 4);
  for (int i = 0; i < 10; ++i) EXPECT_EQ(data.labels[i], i % 3);
  EXPECT_FALSE(MakeGaussianMixtureTask(1, 4, 1.0, stream).ok());
  EXPECT_FALSE(MakeGaussianMixtureTask(3, 0, 1.0, stream).ok());
}

TEST(DatasetTest, ValidationAndSubset) {
  Dataset data = BalancedTask(2, 6, 2);
  const std::vector<int> rows = {4, 1};
  const Dataset sub = data.Subset(rows);
  EXPECT_EQ(sub.size(), 2);
  EXPECT_EQ(sub.labels[0], data.labels[4]);
  EXPECT_EQ(sub.features.row(1), data.features.row(1));
  data.labels[0] = 7;
  EXPECT_FALSE(ValidateDataset(data).ok());
  EXPECT_FALSE(ValidateDataset(Dataset{}).ok());
}

TEST(PartitionTest, IidSingleDeviceIsSubsample) {
  const Dataset data = BalancedTask(4, 200, 3);
  RandomStream stream(4);
  PartitionSpec spec;
  spec.samples_per_device = 50;
  ASSERT_OK_AND_ASSIGN(auto parts, PartitionIndices(data, 1, spec, stream));
  ASSERT_EQ(parts.size(), 1u);
  ExpectDisjointAndSized(parts, 50, 200);
}

TEST(PartitionTest, AllModesDisjointAndSized) {
  const Dataset data = BalancedTask(5, 1000, 5);
  for (auto mode : {PartitionSpec::Mode::kIid, PartitionSpec::Mode::kShard,
                    PartitionSpec::Mode::kDirichlet}) {
    PartitionSpec spec;
    spec.mode = mode;
    spec.samples_per_device = 40;
    spec.shards_per_device = 2;
    spec.dirichlet_alpha = 0.3;
    RandomStream stream(6);
    ASSERT_OK_AND_ASSIGN(auto parts, PartitionIndices(data, 20, spec, stream));
    ASSERT_EQ(parts.size(), 20u);
    ExpectDisjointAndSized(parts, 40, 1000);
  }
}

TEST(PartitionTest, DeterministicGivenSeed) {
  const Dataset data = BalancedTask(4, 600, 7);
  for (auto mode : {PartitionSpec::Mode::kIid, PartitionSpec::Mode::kShard,
                    PartitionSpec::Mode::kDirichlet}) {
    PartitionSpec spec;
    spec.mode = mode;
    spec.samples_per_device = 30;
    RandomStream a(8), b(8);
    ASSERT_OK_AND_ASSIGN(auto pa, PartitionIndices(data, 10, spec, a));
    ASSERT_OK_AND_ASSIGN(auto pb, PartitionIndices(data, 10, spec, b));
    EXPECT_EQ(pa, pb);
  }
}

TEST(PartitionTest, SingleShardGivesNearlyOneClassPerDevice) {
  const int classes = 10;
  const Dataset data = BalancedTask(classes, 2000, 9);
  PartitionSpec spec;
  spec.mode = PartitionSpec::Mode::kShard;
  spec.shards_per_device = 1;
  spec.samples_per_device = 100;
  RandomStream stream(10);
  ASSERT_OK_AND_ASSIGN(auto parts,
                       PartitionIndices(data, classes, spec, stream));
  for (const auto& p : parts) {
    std::map<int, int> histogram;
    for (int i : p) histogram[data.labels[i]]++;
    int majority = 0;
    for (const auto& [label, count] : histogram) {
      majority = std::max(majority, count);
    }
    EXPECT_GE(majority, 90);
  }
}

TEST(PartitionTest, Errors) {
  const Dataset data = BalancedTask(4, 100, 11);
  RandomStream stream(12);
  PartitionSpec spec;
  spec.samples_per_device = 30;
  EXPECT_EQ(PartitionIndices(data, 4, spec, stream).status().code(),
            absl::StatusCode::kInvalidArgument);
  spec.samples_per_device = 0;
  EXPECT_FALSE(PartitionIndices(data, 2, spec, stream).ok());
  spec.samples_per_device = 25;
  spec.mode = PartitionSpec::Mode::kShard;
  spec.shards_per_device = 2;
  EXPECT_FALSE(PartitionIndices(data, 2, spec, stream).ok());
  spec.mode = PartitionSpec::Mode::kDirichlet;
  spec.dirichlet_alpha = 0.0;
  EXPECT_FALSE(PartitionIndices(data, 2, spec, stream).ok());
}

TEST(PartitionTest, DatasetsMatchIndices) {
  const Dataset data = BalancedTask(3, 300, 13);
  PartitionSpec spec;
  spec.samples_per_device = 20;
  RandomStream a(14), b(14);
  ASSERT_OK_AND_ASSIGN(auto idx, PartitionIndices(data, 5, spec, a));
  ASSERT_OK_AND_ASSIGN(auto sets, Partition(data, 5, spec, b));
  for (int k = 0; k < 5; ++k) {
    for (int j = 0; j < 20; ++j) {
      EXPECT_EQ(sets[k].labels[j], data.labels[idx[k][j]]);
    }
  }
}

}  // namespace
}  // namespace risfeel
