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

#ifndef RISFEEL_EXPERIMENT_H_
#define RISFEEL_EXPERIMENT_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "risfeel/config.h"
#include "risfeel/dataset.h"
#include "risfeel/model.h"
#include "risfeel/trace_csv.h"

namespace risfeel {

struct DataBundle {
  Dataset train;
  Dataset test;
};

// Synthetic data is drawn from the seed's "data" stream, so it does not
// depend on any other setting of the run. IDX data is read from disk.
absl::StatusOr<DataBundle> PrepareData(const ExperimentConfig& config,
                                       uint64_t seed);

absl::StatusOr<std::unique_ptr<Model>> MakeModel(const ExperimentConfig& config,
                                                 int num_features,
                                                 int num_classes);

// One seed of the training loop: sample channels, select devices, configure
// the RIS, then per round run local updates, optional privacy mechanism,
// aggregation and the global update. Record 0 evaluates the initial model.
//
// Every random draw comes from a named child of RandomStream(seed):
// "data", "partition", "model", "channel"/block, "optimizer"/block,
// "csi"/block, "training"/round/device and "noise"/round.
absl::StatusOr<std::vector<RoundRecord>> RunSeed(const ExperimentConfig& config,
                                                 uint64_t seed,
                                                 absl::string_view sweep_value);

struct RunResult {
  std::string sweep_value;
  std::vector<std::vector<RoundRecord>> traces;  // one per seed
  std::vector<SummaryRow> summary;
};

// All seeds of `config`, in memory.
absl::StatusOr<RunResult> RunExperiment(const ExperimentConfig& config,
                                        absl::string_view sweep_value = "");

// trace_seed<seed>.csv per seed plus summary.csv, under `dir`.
absl::Status WriteRunResult(const RunResult& result,
                            const ExperimentConfig& config,
                            const std::string& dir);

// RunExperiment followed by WriteRunResult into config.output_dir.
absl::StatusOr<RunResult> Run(const ExperimentConfig& config);

inline constexpr char kErrorFreeLabel[] = "error_free";

// `base` with sweep.key set to `value`.
absl::StatusOr<ExperimentConfig> ConfigForSweepValue(
    const ExperimentConfig& base, absl::string_view value);

// Error-free benchmark for `base`: every device participates and the
// aggregate is computed in memory.
ExperimentConfig ErrorFreeReference(const ExperimentConfig& base);

// One RunExperiment per sweep value with shared seeds, plus the error-free
// reference when requested. A config without a sweep key runs once.
absl::StatusOr<std::vector<RunResult>> SweepExperiment(
    const ExperimentConfig& base);

// <dir>/<value>/{trace_seed<seed>.csv,summary.csv}, plus combined.csv (every
// trace row) and combined_summary.csv.
absl::Status WriteSweepResults(const std::vector<RunResult>& results,
                               const ExperimentConfig& base,
                               const std::string& dir);

absl::StatusOr<std::vector<RunResult>> Sweep(const ExperimentConfig& base);

}  // namespace risfeel

#endif  // RISFEEL_EXPERIMENT_H_
