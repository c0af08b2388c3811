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

#ifndef RISFEEL_CONFIG_H_
#define RISFEEL_CONFIG_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "risfeel/channel.h"
#include "risfeel/dataset.h"
#include "risfeel/privacy.h"
#include "risfeel/ris_optimizer.h"
#include "risfeel/training.h"

namespace risfeel {

// Ordered `section.key` -> value pairs as written in a config file.
using ConfigEntries = std::vector<std::pair<std::string, std::string>>;

enum class SelectionStrategy { kAll, kDescendingGain, kGreedyCodesign };
enum class RisOptimizerKind { kNone, kRandom, kMse, kCsitFree };
enum class AggregationMode { kAirComp, kErrorFree };
enum class WeightScheme { kDataSize, kUniform };
enum class DataSource { kSynthetic, kIdx };
enum class ModelKind { kSoftmax, kMlp };
enum class SweepReference { kNone, kErrorFree };

struct DataConfig {
  DataSource source = DataSource::kSynthetic;
  int classes = 4;
  int features = 10;
  double separation = 2.0;
  double noise_std = 1.0;
  int train_size = 2000;
  int test_size = 1000;
  std::string train_images;
  std::string train_labels;
  std::string test_images;
  std::string test_labels;
  PartitionSpec partition;
};

struct SweepConfig {
  std::string key;
  std::vector<std::string> values;
  SweepReference reference = SweepReference::kNone;
};

struct ExperimentConfig {
  std::string scenario = "custom";
  std::vector<uint64_t> seeds = {1};
  std::string output_dir = "out";
  bool record_timing = false;

  int num_devices = 20;
  int num_antennas = 1;
  int num_elements = 0;
  FadingSpec fading;
  // Rounds per channel realization; 0 keeps one realization for the run.
  int block_rounds = 0;

  SelectionStrategy strategy = SelectionStrategy::kAll;
  int select_count = 0;
  double lambda = 1.0;

  RisOptimizerKind optimizer = RisOptimizerKind::kNone;
  OptimizerOptions optimizer_options;

  AggregationMode mode = AggregationMode::kAirComp;
  double noise_std = 0.1;
  double power_budget = 1.0;
  std::vector<double> device_power_budgets;
  double csi_error_std = 0.0;
  WeightScheme weights = WeightScheme::kDataSize;

  DataConfig data;
  ModelKind model = ModelKind::kSoftmax;
  int hidden = 16;
  TrainSpec train;

  bool privacy_enabled = false;
  PrivacySpec privacy;

  SweepConfig sweep;
};

// Parses `[section]` headers and `key = value` lines. '#' and ';' start
// comments. Keys outside a section, malformed lines and duplicates are
// errors.
absl::StatusOr<ConfigEntries> ParseConfigText(absl::string_view text);
absl::StatusOr<ConfigEntries> ReadConfigFile(const std::string& path);

// `overlay` entries replace same-named entries of `base`; new ones append.
ConfigEntries MergeEntries(const ConfigEntries& base,
                           const ConfigEntries& overlay);

// Applies entries to the defaults and validates. Unknown keys are errors.
absl::StatusOr<ExperimentConfig> BuildConfig(const ConfigEntries& entries);

// Sets one `section.key` on an existing config (used by sweeps).
absl::Status ApplySetting(ExperimentConfig& config, absl::string_view key,
                          absl::string_view value);

absl::Status ValidateConfig(const ExperimentConfig& config);

bool IsKnownKey(absl::string_view key);
std::vector<std::string> KnownKeys();

// Text of a built-in scenario preset ("A".."D", case-insensitive).
absl::StatusOr<std::string> PresetText(absl::string_view scenario);

// Renders entries grouped by section in first-seen order.
std::string FormatEntries(const ConfigEntries& entries);

}  // namespace risfeel

#endif  // RISFEEL_CONFIG_H_
