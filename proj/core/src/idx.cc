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

#include <fstream>
#include <iterator>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "risfeel/status_macros.h"

namespace risfeel {
namespace {

uint32_t ReadBigEndian(std::span<const uint8_t> bytes, size_t offset) {
  return (static_cast<uint32_t>(bytes[offset]) << 24) |
         (static_cast<uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<uint32_t>(bytes[offset + 3]);
}

void AppendBigEndian(std::vector<uint8_t>& out, uint32_t value) {
  out.push_back(static_cast<uint8_t>(value >> 24));
  out.push_back(static_cast<uint8_t>(value >> 16));
  out.push_back(static_cast<uint8_t>(value >> 8));
  out.push_back(static_cast<uint8_t>(value));
}

absl::Status CheckMagic(std::span<const uint8_t> bytes, uint32_t expected,
                        size_t header_size) {
  if (bytes.size() >= 4) {
    const uint32_t magic = ReadBigEndian(bytes, 0);
    if (magic != expected) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "IDX format error: magic 0x%08x, expected 0x%08x", magic, expected));
    }
  }
  if (bytes.size() < header_size) {
    return absl::InvalidArgumentError(absl::StrCat(
        "IDX format error: ", bytes.size(), "-byte input is shorter than the ",
        header_size, "-byte header"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<uint8_t>> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (in.bad()) return absl::DataLossError(absl::StrCat("read failed: ", path));
  return bytes;
}

}  // namespace

absl::StatusOr<IdxImages> ParseIdxImages(std::span<const uint8_t> bytes) {
  RISFEEL_RETURN_IF_ERROR(CheckMagic(bytes, kIdxImagesMagic, 16));
  const uint64_t count = ReadBigEndian(bytes, 4);
  const uint64_t rows = ReadBigEndian(bytes, 8);
  const uint64_t cols = ReadBigEndian(bytes, 12);
  const uint64_t expected = 16 + count * rows * cols;
  if (bytes.size() != expected) {
    return absl::InvalidArgumentError(
        absl::StrCat("IDX format error: header promises ", expected,
                     " bytes, got ", bytes.size()));
  }
  IdxImages out;
  out.rows = static_cast<int>(rows);
  out.cols = static_cast<int>(cols);
  const auto pixels = static_cast<Eigen::Index>(rows * cols);
  out.pixels.resize(static_cast<Eigen::Index>(count), pixels);
  size_t offset = 16;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(count); ++i) {
    for (Eigen::Index p = 0; p < pixels; ++p) {
      out.pixels(i, p) = bytes[offset++] / 255.0;
    }
  }
  return out;
}

absl::StatusOr<std::vector<int>> ParseIdxLabels(
    std::span<const uint8_t> bytes) {
  RISFEEL_RETURN_IF_ERROR(CheckMagic(bytes, kIdxLabelsMagic, 8));
  const uint64_t count = ReadBigEndian(bytes, 4);
  if (bytes.size() != 8 + count) {
    return absl::InvalidArgumentError(
        absl::StrCat("IDX format error: header promises ", 8 + count,
                     " bytes, got ", bytes.size()));
  }
  return std::vector<int>(bytes.begin() + 8, bytes.end());
}

absl::StatusOr<IdxImages> ReadIdxImages(const std::string& path) {
  RISFEEL_ASSIGN_OR_RETURN(std::vector<uint8_t> bytes, ReadFile(path));
  auto parsed = ParseIdxImages(bytes);
  if (!parsed.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", parsed.status().message()));
  }
  return parsed;
}

absl::StatusOr<std::vector<int>> ReadIdxLabels(const std::string& path) {
  RISFEEL_ASSIGN_OR_RETURN(std::vector<uint8_t> bytes, ReadFile(path));
  auto parsed = ParseIdxLabels(bytes);
  if (!parsed.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", parsed.status().message()));
  }
  return parsed;
}

absl::StatusOr<Dataset> LoadIdxDataset(const std::string& images_path,
                                       const std::string& labels_path) {
  RISFEEL_ASSIGN_OR_RETURN(IdxImages images, ReadIdxImages(images_path));
  RISFEEL_ASSIGN_OR_RETURN(std::vector<int> labels, ReadIdxLabels(labels_path));
  if (static_cast<Eigen::Index>(labels.size()) != images.pixels.rows()) {
    return absl::InvalidArgumentError(
        absl::StrCat(images_path, " has ", images.pixels.rows(), " images but ",
                     labels_path, " has ", labels.size(), " labels"));
  }
  Dataset data;
  data.features = std::move(images.pixels);
  data.labels = std::move(labels);
  for (int y : data.labels)
    data.num_classes = std::max(data.num_classes, y + 1);
  RISFEEL_RETURN_IF_ERROR(ValidateDataset(data));
  return data;
}

std::vector<uint8_t> EncodeIdxImages(std::span<const uint8_t> pixels, int count,
                                     int rows, int cols) {
  std::vector<uint8_t> out;
  out.reserve(16 + pixels.size());
  AppendBigEndian(out, kIdxImagesMagic);
  AppendBigEndian(out, static_cast<uint32_t>(count));
  AppendBigEndian(out, static_cast<uint32_t>(rows));
  AppendBigEndian(out, static_cast<uint32_t>(cols));
  out.insert(out.end(), pixels.begin(), pixels.end());
  return out;
}

std::vector<uint8_t> EncodeIdxLabels(std::span<const uint8_t> labels) {
  std::vector<uint8_t> out;
  out.reserve(8 + labels.size());
  AppendBigEndian(out, kIdxLabelsMagic);
  AppendBigEndian(out, static_cast<uint32_t>(labels.size()));
  out.insert(out.end(), labels.begin(), labels.end());
  return out;
}

absl::Status WriteBytes(const std::string& path,
                        std::span<const uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

}  // namespace risfeel
