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

#include "risfeel/plot.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "risfeel/status_macros.h"

namespace risfeel {
namespace {

constexpr double kPanelWidth = 480.0;
constexpr double kPanelHeight = 360.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

const std::vector<std::pair<std::string, PlotKind>>& KindTable() {
  static const auto* table = new std::vector<std::pair<std::string, PlotKind>>{
      {"mse_vs_n", PlotKind::kMseVsN},
      {"acc_vs_n", PlotKind::kAccVsN},
      {"acc_vs_round", PlotKind::kAccVsRound},
      {"acc_vs_L", PlotKind::kAccVsL},
      {"privacy_tradeoff", PlotKind::kPrivacyTradeoff},
  };
  return *table;
}

// Records grouped by sweep value in first-seen order.
std::vector<std::pair<std::string, std::vector<const RoundRecord*>>> Group(
    const std::vector<RoundRecord>& records) {
  std::vector<std::pair<std::string, std::vector<const RoundRecord*>>> groups;
  for (const RoundRecord& r : records) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.first == r.sweep_value;
    });
    if (it == groups.end()) {
      groups.push_back({r.sweep_value, {}});
      it = groups.end() - 1;
    }
    it->second.push_back(&r);
  }
  return groups;
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return std::nan("");
  double s = 0.0;
  for (double x : v) s += x;
  return s / v.size();
}

struct GroupStats {
  double n_selected;
  double mse;
  double final_acc;
  double final_epsilon;
};

GroupStats Stats(const std::vector<const RoundRecord*>& rows) {
  int last = 0;
  for (const RoundRecord* r : rows) last = std::max(last, r->round);
  std::vector<double> n, mse, acc, eps;
  for (const RoundRecord* r : rows) {
    if (r->round >= 1) {
      n.push_back(r->n_selected);
      if (std::isfinite(r->mse_empirical)) mse.push_back(r->mse_empirical);
    }
    if (r->round == last) {
      acc.push_back(r->test_acc);
      if (!std::isnan(r->epsilon_proxy)) eps.push_back(r->epsilon_proxy);
    }
  }
  return {Mean(n), Mean(mse), Mean(acc), Mean(eps)};
}

std::string Label(const std::string& value) {
  return value.empty() ? "run" : value;
}

std::string Escape(absl::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void Bounds(const Chart& chart, double& x0, double& x1, double& y0,
            double& y1) {
  x0 = y0 = INFINITY;
  x1 = y1 = -INFINITY;
  for (const Series& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0;
  if (!std::isfinite(y0)) y0 = 0.0, y1 = 1.0;
  if (x1 - x0 <= 0.0) x0 -= 0.5, x1 += 0.5;
  if (y1 - y0 <= 0.0) {
    const double pad = std::max(std::abs(y0) * 0.05, 0.5);
    y0 -= pad;
    y1 += pad;
  } else {
    const double pad = (y1 - y0) * 0.05;
    y0 -= pad;
    y1 += pad;
  }
}

void RenderPanel(const Chart& chart, double offset_x, std::string& out) {
  double x0, x1, y0, y1;
  Bounds(chart, x0, x1, y0, y1);
  const double left = offset_x + kMarginLeft;
  const double right = offset_x + kPanelWidth - kMarginRight;
  const double top = kMarginTop;
  const double bottom = kPanelHeight - kMarginBottom;
  auto px = [&](double x) {
    return left + (x - x0) / (x1 - x0) * (right - left);
  };
  auto py = [&](double y) {
    return bottom - (y - y0) / (y1 - y0) * (bottom - top);
  };

  absl::StrAppendFormat(
      &out,
      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
      "fill=\"none\" stroke=\"#333\"/>\n",
      left, top, right - left, bottom - top);
  absl::StrAppendFormat(&out,
                        "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
                        "font-size=\"14\">%s</text>\n",
                        (left + right) / 2, top - 14, Escape(chart.title));
  absl::StrAppendFormat(&out,
                        "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
                        "font-size=\"12\">%s</text>\n",
                        (left + right) / 2, bottom + 40, Escape(chart.x_label));
  absl::StrAppendFormat(
      &out,
      "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" font-size=\"12\" "
      "transform=\"rotate(-90 %.2f %.2f)\">%s</text>\n",
      offset_x + 18, (top + bottom) / 2, offset_x + 18, (top + bottom) / 2,
      Escape(chart.y_label));
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4.0;
    const double yv = y0 + (y1 - y0) * i / 4.0;
    absl::StrAppendFormat(&out,
                          "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\" "
                          "font-size=\"10\">%.3g</text>\n",
                          px(xv), bottom + 16, xv);
    absl::StrAppendFormat(&out,
                          "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\" "
                          "font-size=\"10\">%.3g</text>\n",
                          left - 6, py(yv) + 3, yv);
  }
  for (size_t s = 0; s < chart.series.size(); ++s) {
    const Series& series = chart.series[s];
    const char* color = kPalette[s % std::size(kPalette)];
    std::string points;
    for (const auto& [x, y] : series.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      absl::StrAppendFormat(&points, "%s%.2f,%.2f", points.empty() ? "" : " ",
                            px(x), py(y));
    }
    absl::StrAppendFormat(
        &out,
        "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"%s "
        "points=\"%s\"/>\n",
        color, series.dashed ? " stroke-dasharray=\"6 4\"" : "", points);
    for (const auto& [x, y] : series.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      absl::StrAppendFormat(&out,
                            "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" "
                            "fill=\"%s\"/>\n",
                            px(x), py(y), color);
    }
    const double ly = top + 14 + 14 * static_cast<double>(s);
    absl::StrAppendFormat(&out,
                          "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" "
                          "y2=\"%.2f\" stroke=\"%s\"%s/>\n",
                          right - 110, ly - 4, right - 90, ly - 4, color,
                          series.dashed ? " stroke-dasharray=\"6 4\"" : "");
    absl::StrAppendFormat(&out,
                          "<text x=\"%.2f\" y=\"%.2f\" font-size=\"10\">%s"
                          "</text>\n",
                          right - 85, ly, Escape(series.label));
  }
}

}  // namespace

absl::StatusOr<PlotKind> ParsePlotKind(absl::string_view name) {
  for (const auto& [label, kind] : KindTable()) {
    if (name == label) return kind;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown plot kind '", name, "'"));
}

std::vector<std::string> PlotKindNames() {
  std::vector<std::string> names;
  for (const auto& entry : KindTable()) names.push_back(entry.first);
  return names;
}

absl::StatusOr<std::vector<RoundRecord>> LoadTraces(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  std::vector<std::string> files;
  if (fs::is_regular_file(path, ec)) {
    files.push_back(path);
  } else if (fs::is_directory(path, ec)) {
    const fs::path combined = fs::path(path) / "combined.csv";
    if (fs::is_regular_file(combined, ec)) {
      files.push_back(combined.string());
    } else {
      for (const auto& entry : fs::recursive_directory_iterator(path, ec)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && absl::StartsWith(name, "trace_seed") &&
            absl::EndsWith(name, ".csv")) {
          files.push_back(entry.path().string());
        }
      }
      std::sort(files.begin(), files.end());
    }
  } else {
    return absl::NotFoundError(
        absl::StrCat("no data: ", path, " does not exist"));
  }
  std::vector<RoundRecord> records;
  for (const std::string& file : files) {
    RISFEEL_ASSIGN_OR_RETURN(std::string text, ReadTextFile(file));
    auto parsed = ParseTrace(text);
    if (!parsed.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(file, ": ", parsed.status().message()));
    }
    records.insert(records.end(), parsed->begin(), parsed->end());
  }
  if (records.empty()) {
    return absl::NotFoundError(
        absl::StrCat("no data: no trace rows found under ", path));
  }
  return records;
}

absl::StatusOr<std::vector<Chart>> BuildCharts(
    const std::vector<RoundRecord>& records, PlotKind kind) {
  if (records.empty()) return absl::NotFoundError("no data to plot");
  const auto groups = Group(records);
  std::vector<Chart> charts;
  switch (kind) {
    case PlotKind::kMseVsN:
    case PlotKind::kAccVsN: {
      const bool mse = kind == PlotKind::kMseVsN;
      Chart chart{mse ? "Aggregation MSE" : "Final test accuracy",
                  "selected devices",
                  mse ? "MSE" : "accuracy",
                  {}};
      Series series{"mean over seeds", {}, false};
      for (const auto& [value, rows] : groups) {
        if (value == "error_free") continue;
        const GroupStats s = Stats(rows);
        series.points.emplace_back(s.n_selected, mse ? s.mse : s.final_acc);
      }
      std::sort(series.points.begin(), series.points.end());
      chart.series.push_back(std::move(series));
      charts.push_back(std::move(chart));
      break;
    }
    case PlotKind::kAccVsRound: {
      Chart loss{"Training loss", "round", "loss", {}};
      Chart acc{"Test accuracy", "round", "accuracy", {}};
      for (const auto& [value, rows] : groups) {
        std::map<int, std::vector<double>> losses, accs;
        for (const RoundRecord* r : rows) {
          losses[r->round].push_back(r->train_loss);
          accs[r->round].push_back(r->test_acc);
        }
        const bool reference = value == "error_free";
        Series ls{Label(value), {}, reference};
        Series as{Label(value), {}, reference};
        for (const auto& [round, v] : losses)
          ls.points.emplace_back(round, Mean(v));
        for (const auto& [round, v] : accs)
          as.points.emplace_back(round, Mean(v));
        loss.series.push_back(std::move(ls));
        acc.series.push_back(std::move(as));
      }
      charts.push_back(std::move(loss));
      charts.push_back(std::move(acc));
      break;
    }
    case PlotKind::kAccVsL:
    case PlotKind::kPrivacyTradeoff: {
      const bool privacy = kind == PlotKind::kPrivacyTradeoff;
      Chart chart{privacy ? "Learning-privacy tradeoff" : "Final test accuracy",
                  privacy ? "epsilon_proxy (final round)" : "sweep value",
                  "accuracy",
                  {}};
      Series series{"mean over seeds", {}, false};
      std::optional<double> reference;
      for (const auto& [value, rows] : groups) {
        const GroupStats s = Stats(rows);
        if (value == "error_free") {
          reference = s.final_acc;
          continue;
        }
        double x;
        if (privacy) {
          x = s.final_epsilon;
        } else if (!absl::SimpleAtod(value, &x)) {
          continue;
        }
        series.points.emplace_back(x, s.final_acc);
      }
      std::sort(series.points.begin(), series.points.end());
      if (series.points.empty()) {
        return absl::NotFoundError("no numeric sweep values to plot");
      }
      if (reference.has_value()) {
        Series ref{"error-free", {}, true};
        ref.points.emplace_back(series.points.front().first, *reference);
        ref.points.emplace_back(series.points.back().first, *reference);
        chart.series.push_back(series);
        chart.series.push_back(std::move(ref));
      } else {
        chart.series.push_back(std::move(series));
      }
      charts.push_back(std::move(chart));
      break;
    }
  }
  return charts;
}

std::string RenderSvg(const std::vector<Chart>& charts) {
  const double width = kPanelWidth * std::max<size_t>(charts.size(), 1);
  std::string out = absl::StrFormat(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
      "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\">\n"
      "<rect width=\"100%%\" height=\"100%%\" fill=\"white\"/>\n",
      width, kPanelHeight, width, kPanelHeight);
  for (size_t i = 0; i < charts.size(); ++i) {
    RenderPanel(charts[i], kPanelWidth * i, out);
  }
  out += "</svg>\n";
  return out;
}

absl::Status Plot(const std::string& trace_path, PlotKind kind,
                  const std::string& output_path) {
  RISFEEL_ASSIGN_OR_RETURN(std::vector<RoundRecord> records,
                           LoadTraces(trace_path));
  RISFEEL_ASSIGN_OR_RETURN(std::vector<Chart> charts,
                           BuildCharts(records, kind));
  return WriteTextFile(output_path, RenderSvg(charts));
}

}  // namespace risfeel
