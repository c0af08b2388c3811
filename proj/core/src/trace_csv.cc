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

#include "risfeel/trace_csv.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "risfeel/status_macros.h"

namespace risfeel {
namespace {

std::string QuoteField(absl::string_view field) {
  if (field.find_first_of(",\"\n\r") == absl::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

absl::StatusOr<std::vector<std::string>> SplitCsvLine(absl::string_view line,
                                                      int line_number) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  if (quoted) {
    return absl::InvalidArgumentError(
        absl::StrCat("line ", line_number, ": unterminated quote"));
  }
  return fields;
}

absl::Status ParseNumber(absl::string_view text, int line_number,
                         absl::string_view column, double& out) {
  if (text == "nan") {
    out = std::nan("");
  } else if (text == "inf") {
    out = INFINITY;
  } else if (text == "-inf") {
    out = -INFINITY;
  } else if (!absl::SimpleAtod(text, &out)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "line ", line_number, ": bad ", column, " value '", text, "'"));
  }
  return absl::OkStatus();
}

struct Moments {
  double mean;
  double std;
};

Moments MeanStd(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / values.size();
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (values.size() - 1))};
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return absl::StrFormat("%.17g", value);
}

std::string FormatTraceRow(const RoundRecord& r) {
  return absl::StrCat(
      QuoteField(r.scenario), ",", r.seed, ",", QuoteField(r.sweep_value), ",",
      r.round, ",", r.n_selected, ",", FormatDouble(r.mse_empirical), ",",
      FormatDouble(r.mse_analytic), ",", FormatDouble(r.train_loss), ",",
      FormatDouble(r.test_acc), ",", FormatDouble(r.epsilon_proxy), ",",
      FormatDouble(r.ms));
}

std::string FormatTrace(const std::vector<RoundRecord>& records) {
  std::string out = absl::StrCat(kTraceSchema, "\n", kTraceHeader, "\n");
  for (const RoundRecord& r : records) {
    absl::StrAppend(&out, FormatTraceRow(r), "\n");
  }
  return out;
}

absl::StatusOr<std::vector<RoundRecord>> ParseTrace(absl::string_view text) {
  std::vector<absl::string_view> lines = absl::StrSplit(text, '\n');
  while (!lines.empty() && absl::StripAsciiWhitespace(lines.back()).empty()) {
    lines.pop_back();
  }
  if (lines.size() < 2 ||
      absl::StripTrailingAsciiWhitespace(lines[0]) != kTraceSchema) {
    return absl::InvalidArgumentError(absl::StrCat(
        "schema mismatch: expected first line '", kTraceSchema, "'"));
  }
  if (absl::StripTrailingAsciiWhitespace(lines[1]) != kTraceHeader) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema mismatch: expected header '", kTraceHeader, "'"));
  }
  std::vector<RoundRecord> records;
  for (size_t i = 2; i < lines.size(); ++i) {
    const int line_number = static_cast<int>(i) + 1;
    RISFEEL_ASSIGN_OR_RETURN(
        std::vector<std::string> f,
        SplitCsvLine(absl::StripTrailingAsciiWhitespace(lines[i]),
                     line_number));
    if (f.size() != 11) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number, ": expected 11 fields, got ", f.size()));
    }
    RoundRecord r;
    r.scenario = f[0];
    r.sweep_value = f[2];
    if (!absl::SimpleAtoi(f[1], &r.seed) || !absl::SimpleAtoi(f[3], &r.round) ||
        !absl::SimpleAtoi(f[4], &r.n_selected)) {
      return absl::InvalidArgumentError(
          absl::StrCat("line ", line_number, ": bad integer field"));
    }
    RISFEEL_RETURN_IF_ERROR(
        ParseNumber(f[5], line_number, "mse_empirical", r.mse_empirical));
    RISFEEL_RETURN_IF_ERROR(
        ParseNumber(f[6], line_number, "mse_analytic", r.mse_analytic));
    RISFEEL_RETURN_IF_ERROR(
        ParseNumber(f[7], line_number, "train_loss", r.train_loss));
    RISFEEL_RETURN_IF_ERROR(
        ParseNumber(f[8], line_number, "test_acc", r.test_acc));
    RISFEEL_RETURN_IF_ERROR(
        ParseNumber(f[9], line_number, "epsilon_proxy", r.epsilon_proxy));
    RISFEEL_RETURN_IF_ERROR(ParseNumber(f[10], line_number, "ms", r.ms));
    records.push_back(std::move(r));
  }
  return records;
}

absl::StatusOr<std::vector<SummaryRow>> Summarize(
    const std::vector<std::vector<RoundRecord>>& traces) {
  if (traces.empty()) return absl::InvalidArgumentError("no traces");
  const size_t rounds = traces[0].size();
  for (const auto& trace : traces) {
    if (trace.size() != rounds) {
      return absl::InvalidArgumentError("traces cover different rounds");
    }
  }
  std::vector<SummaryRow> rows;
  for (size_t i = 0; i < rounds; ++i) {
    std::vector<double> n, mse_e, mse_a, loss, acc, eps, ms;
    for (const auto& trace : traces) {
      const RoundRecord& r = trace[i];
      if (r.round != traces[0][i].round) {
        return absl::InvalidArgumentError("traces cover different rounds");
      }
      n.push_back(r.n_selected);
      mse_e.push_back(r.mse_empirical);
      mse_a.push_back(r.mse_analytic);
      loss.push_back(r.train_loss);
      acc.push_back(r.test_acc);
      eps.push_back(r.epsilon_proxy);
      ms.push_back(r.ms);
    }
    SummaryRow row;
    row.scenario = traces[0][i].scenario;
    row.sweep_value = traces[0][i].sweep_value;
    row.round = traces[0][i].round;
    row.num_seeds = static_cast<int>(traces.size());
    row.n_selected_mean = MeanStd(n).mean;
    const Moments me = MeanStd(mse_e), ma = MeanStd(mse_a), l = MeanStd(loss),
                  a = MeanStd(acc), e = MeanStd(eps);
    row.mse_empirical_mean = me.mean;
    row.mse_empirical_std = me.std;
    row.mse_analytic_mean = ma.mean;
    row.mse_analytic_std = ma.std;
    row.train_loss_mean = l.mean;
    row.train_loss_std = l.std;
    row.test_acc_mean = a.mean;
    row.test_acc_std = a.std;
    row.epsilon_proxy_mean = e.mean;
    row.epsilon_proxy_std = e.std;
    row.ms_mean = MeanStd(ms).mean;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatSummaryRow(const SummaryRow& s) {
  return absl::StrCat(
      QuoteField(s.scenario), ",", QuoteField(s.sweep_value), ",", s.round, ",",
      s.num_seeds, ",", FormatDouble(s.n_selected_mean), ",",
      FormatDouble(s.mse_empirical_mean), ",",
      FormatDouble(s.mse_empirical_std), ",", FormatDouble(s.mse_analytic_mean),
      ",", FormatDouble(s.mse_analytic_std), ",",
      FormatDouble(s.train_loss_mean), ",", FormatDouble(s.train_loss_std), ",",
      FormatDouble(s.test_acc_mean), ",", FormatDouble(s.test_acc_std), ",",
      FormatDouble(s.epsilon_proxy_mean), ",",
      FormatDouble(s.epsilon_proxy_std), ",", FormatDouble(s.ms_mean));
}

std::string FormatSummary(const std::vector<SummaryRow>& rows) {
  std::string out = absl::StrCat(kSummarySchema, "\n", kSummaryHeader, "\n");
  for (const SummaryRow& row : rows) {
    absl::StrAppend(&out, FormatSummaryRow(row), "\n");
  }
  return out;
}

absl::Status WriteTextFile(const std::string& path, absl::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace risfeel
