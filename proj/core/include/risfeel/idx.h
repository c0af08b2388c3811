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

#ifndef RISFEEL_IDX_H_
#define RISFEEL_IDX_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "risfeel/dataset.h"

namespace risfeel {

// Big-endian IDX files: images carry magic 0x00000803 and dimensions
// [count, rows, cols] followed by unsigned bytes; labels carry magic
// 0x00000801 and [count] followed by unsigned bytes.
inline constexpr uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr uint32_t kIdxLabelsMagic = 0x00000801;

struct IdxImages {
  int rows = 0;
  int cols = 0;
  // count x (rows * cols), pixels scaled to [0, 1].
  Eigen::MatrixXd pixels;
};

absl::StatusOr<IdxImages> ParseIdxImages(std::span<const uint8_t> bytes);
absl::StatusOr<std::vector<int>> ParseIdxLabels(std::span<const uint8_t> bytes);

absl::StatusOr<IdxImages> ReadIdxImages(const std::string& path);
absl::StatusOr<std::vector<int>> ReadIdxLabels(const std::string& path);

// Images and labels must have equal counts. num_classes is max label + 1.
absl::StatusOr<Dataset> LoadIdxDataset(const std::string& images_path,
                                       const std::string& labels_path);

std::vector<uint8_t> EncodeIdxImages(std::span<const uint8_t> pixels, int count,
                                     int rows, int cols);
std::vector<uint8_t> EncodeIdxLabels(std::span<const uint8_t> labels);

absl::Status WriteBytes(const std::string& path,
                        std::span<const uint8_t> bytes);

}  // namespace risfeel

#endif  // RISFEEL_IDX_H_
