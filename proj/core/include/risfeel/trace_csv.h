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

#ifndef RISFEEL_TRACE_CSV_H_
#define RISFEEL_TRACE_CSV_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace risfeel {

inline constexpr char kTraceSchema[] = "# schema: round-trace/1";
inline constexpr char kTraceHeader[] =
    "scenario,seed,sweep_value,round,n_selected,mse_empirical,mse_analytic,"
    "train_loss,test_acc,epsilon_proxy,ms";
inline constexpr char kSummarySchema[] = "# schema: round-summary/1";
inline constexpr char kSummaryHeader[] =
    "scenario,sweep_value,round,num_seeds,n_selected_mean,"
    "mse_empirical_mean,mse_empirical_std,mse_analytic_mean,mse_analytic_std,"
    "train_loss_mean,train_loss_std,test_acc_mean,test_acc_std,"
    "epsilon_proxy_mean,epsilon_proxy_std,ms_mean";

// One training round of one seed. Round 0 evaluates the initial model and
// carries NaN aggregation and privacy columns.
struct RoundRecord {
  std::string scenario;
  uint64_t seed = 0;
  std::string sweep_value;
  int round = 0;
  int n_selected = 0;
  double mse_empirical = 0.0;
  double mse_analytic = 0.0;
  double train_loss = 0.0;
  double test_acc = 0.0;
  double epsilon_proxy = 0.0;
  double ms = 0.0;

  // Not persisted.
  std::vector<int> selected;
  // Mean over model entries of the squared exact aggregate.
  double aggregate_power = 0.0;
};

struct SummaryRow {
  std::string scenario;
  std::string sweep_value;
  int round = 0;
  int num_seeds = 0;
  double n_selected_mean = 0.0;
  double mse_empirical_mean = 0.0;
  double mse_empirical_std = 0.0;
  double mse_analytic_mean = 0.0;
  double mse_analytic_std = 0.0;
  double train_loss_mean = 0.0;
  double train_loss_std = 0.0;
  double test_acc_mean = 0.0;
  double test_acc_std = 0.0;
  double epsilon_proxy_mean = 0.0;
  double epsilon_proxy_std = 0.0;
  double ms_mean = 0.0;
};

// %.17g, with "nan", "inf" and "-inf" for non-finite values.
std::string FormatDouble(double value);

std::string FormatTraceRow(const RoundRecord& r);
// Schema line, header, then one row per record.
std::string FormatTrace(const std::vector<RoundRecord>& records);
absl::StatusOr<std::vector<RoundRecord>> ParseTrace(absl::string_view text);

// Per-round mean and sample standard deviation across seeds. Every trace must
// cover the same rounds.
absl::StatusOr<std::vector<SummaryRow>> Summarize(
    const std::vector<std::vector<RoundRecord>>& traces);

std::string FormatSummaryRow(const SummaryRow& row);
std::string FormatSummary(const std::vector<SummaryRow>& rows);

absl::Status WriteTextFile(const std::string& path, absl::string_view text);
absl::StatusOr<std::string> ReadTextFile(const std::string& path);

}  // namespace risfeel

#endif  // RISFEEL_TRACE_CSV_H_
