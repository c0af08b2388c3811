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

#ifndef RISFEEL_PLOT_H_
#define RISFEEL_PLOT_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "risfeel/trace_csv.h"

namespace risfeel {

enum class PlotKind {
  kMseVsN,
  kAccVsN,
  kAccVsRound,
  kAccVsL,
  kPrivacyTradeoff
};

absl::StatusOr<PlotKind> ParsePlotKind(absl::string_view name);
std::vector<std::string> PlotKindNames();

// Reads a trace CSV file, or a directory: its combined.csv when present,
// otherwise every trace_seed*.csv below it in path order. No rows is a
// NotFound error.
absl::StatusOr<std::vector<RoundRecord>> LoadTraces(const std::string& path);

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

// Charts for one plot kind:
//   mse_vs_n:         mean aggregation MSE vs mean devices per sweep value.
//   acc_vs_n:         final accuracy vs mean devices per sweep value.
//   acc_vs_round:     training loss and accuracy per round, one curve per
//                     sweep value (the error-free reference dashed).
//   acc_vs_L:         final accuracy vs numeric sweep value, with the
//                     error-free reference as a dashed line.
//   privacy_tradeoff: final accuracy vs final epsilon_proxy.
absl::StatusOr<std::vector<Chart>> BuildCharts(
    const std::vector<RoundRecord>& records, PlotKind kind);

// Deterministic SVG with the charts side by side.
std::string RenderSvg(const std::vector<Chart>& charts);

// LoadTraces + BuildCharts + RenderSvg, written to `output_path`.
absl::Status Plot(const std::string& trace_path, PlotKind kind,
                  const std::string& output_path);

}  // namespace risfeel

#endif  // RISFEEL_PLOT_H_
