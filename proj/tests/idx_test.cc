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

#include "risfeel/idx.h"

#include <cstdio>
#include <filesystem>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace risfeel {
namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(::testing::TempDir()) / name).string();
}

TEST(IdxTest, ImagesEncodeBigEndianHeader) {
  const std::vector<uint8_t> pixels = {0, 255, 51, 102, 1, 2};
  const std::vector<uint8_t> bytes = EncodeIdxImages(pixels, 1, 2, 3);
  ASSERT_EQ(bytes.size(), 16u + 6u);
  const std::vector<uint8_t> header = {0, 0, 8, 3, 0, 0, 0, 1,
                                       0, 0, 0, 2, 0, 0, 0, 3};
  EXPECT_EQ(std::vector<uint8_t>(bytes.begin(), bytes.begin() + 16), header);
}

TEST(IdxTest, ImagesRoundTripScaledToUnitInterval) {
  std::vector<uint8_t> pixels(2 * 2 * 2);
  for (size_t i = 0; i < pixels.size(); ++i) pixels[i] = 30 * i;
  ASSERT_OK_AND_ASSIGN(IdxImages images,
                       ParseIdxImages(EncodeIdxImages(pixels, 2, 2, 2)));
  EXPECT_EQ(images.rows, 2);
  EXPECT_EQ(images.cols, 2);
  ASSERT_EQ(images.pixels.rows(), 2);
  ASSERT_EQ(images.pixels.cols(), 4);
  for (int n = 0; n < 2; ++n) {
    for (int j = 0; j < 4; ++j) {
      EXPECT_DOUBLE_EQ(images.pixels(n, j), pixels[4 * n + j] / 255.0);
    }
  }
}

TEST(IdxTest, LabelsRoundTrip) {
  const std::vector<uint8_t> labels = {3, 0, 9, 1};
  ASSERT_OK_AND_ASSIGN(std::vector<int> parsed,
                       ParseIdxLabels(EncodeIdxLabels(labels)));
  EXPECT_EQ(parsed, (std::vector<int>{3, 0, 9, 1}));
}

TEST(IdxTest, WrongMagicIsFormatError) {
  std::vector<uint8_t> labels_file = EncodeIdxLabels(std::vector<uint8_t>{1});
  auto as_images = ParseIdxImages(labels_file);
  ASSERT_EQ(as_images.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(as_images.status().message().find("magic"), std::string::npos);
  const std::vector<uint8_t> pixels = {1, 2, 3, 4};
  EXPECT_FALSE(ParseIdxLabels(EncodeIdxImages(pixels, 1, 2, 2)).ok());
}

TEST(IdxTest, TruncatedAndOversizedPayloads) {
  std::vector<uint8_t> bytes = EncodeIdxLabels(std::vector<uint8_t>{1, 2, 3});
  bytes.pop_back();
  EXPECT_FALSE(ParseIdxLabels(bytes).ok());
  bytes.push_back(3);
  bytes.push_back(4);
  EXPECT_FALSE(ParseIdxLabels(bytes).ok());
  EXPECT_FALSE(ParseIdxImages(std::vector<uint8_t>{0, 0, 8}).ok());
}

TEST(IdxTest, LoadDatasetFromFiles) {
  const std::vector<uint8_t> pixels = {0, 255, 255, 0, 10, 20, 30, 40};
  const std::vector<uint8_t> labels = {4, 1};
  const std::string images_path = TempPath("idx_images");
  const std::string labels_path = TempPath("idx_labels");
  ASSERT_OK(WriteBytes(images_path, EncodeIdxImages(pixels, 2, 2, 2)));
  ASSERT_OK(WriteBytes(labels_path, EncodeIdxLabels(labels)));
  ASSERT_OK_AND_ASSIGN(Dataset data, LoadIdxDataset(images_path, labels_path));
  EXPECT_EQ(data.size(), 2);
  EXPECT_EQ(data.num_features(), 4);
  EXPECT_EQ(data.num_classes, 5);
  EXPECT_EQ(data.labels, (std::vector<int>{4, 1}));
  EXPECT_DOUBLE_EQ(data.features(0, 1), 1.0);

  const std::string short_labels = TempPath("idx_labels_short");
  ASSERT_OK(WriteBytes(short_labels, EncodeIdxLabels(std::vector<uint8_t>{1})));
  EXPECT_FALSE(LoadIdxDataset(images_path, short_labels).ok());
  EXPECT_EQ(ReadIdxLabels(TempPath("missing")).status().code(),
            absl::StatusCode::kNotFound);
}

}  // namespace
}  // namespace risfeel
