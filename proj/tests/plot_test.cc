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

#include <filesystem>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "risfeel/trace_csv.h"
#include "test_util.h"

namespace risfeel {
namespace {

namespace fs = std::filesystem;

RoundRecord Row(const std::string& value, uint64_t seed, int round,
                double acc) {
  RoundRecord r;
  r.scenario = "A";
  r.seed = seed;
  r.sweep_value = value;
  r.round = round;
  r.n_selected = round == 0 ? 0 : (value == "error_free" ? 20 : 4);
  r.mse_empirical = round == 0 ? std::nan("") : 0.01;
  r.mse_analytic = r.mse_empirical;
  r.train_loss = 1.0 / (round + 1);
  r.test_acc = acc;
  r.epsilon_proxy = std::nan("");
  return r;
}

std::vector<RoundRecord> SweepRows() {
  std::vector<RoundRecord> rows;
  for (const std::string value : {"16", "4", "error_free"}) {
    for (uint64_t seed : {1u, 2u}) {
      for (int round = 0; round <= 3; ++round) {
        const double base = value == "4" ? 0.5 : 0.7;
        rows.push_back(Row(value, seed, round, base + 0.01 * round + seed));
      }
    }
  }
  return rows;
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(testing::TempDir()) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(PlotTest, KindNamesRoundTrip) {
  const std::vector<std::string> names = PlotKindNames();
  EXPECT_EQ(names.size(), 5u);
  for (const std::string& name : names) {
    EXPECT_TRUE(ParsePlotKind(name).ok()) << name;
  }
  EXPECT_FALSE(ParsePlotKind("histogram").ok());
}

TEST(PlotTest, EmptyInputIsNotFound) {
  EXPECT_EQ(BuildCharts({}, PlotKind::kAccVsRound).status().code(),
            absl::StatusCode::kNotFound);
  const fs::path dir = FreshDir("plot_empty");
  EXPECT_EQ(LoadTraces(dir.string()).status().code(),
            absl::StatusCode::kNotFound);
  EXPECT_EQ(LoadTraces((dir / "missing.csv").string()).status().code(),
            absl::StatusCode::kNotFound);
  ASSERT_OK(WriteTextFile((dir / "trace_seed1.csv").string(), FormatTrace({})));
  EXPECT_EQ(LoadTraces(dir.string()).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(PlotTest, AccVsRoundHasOneSeriesPerValue) {
  ASSERT_OK_AND_ASSIGN(std::vector<Chart> charts,
                       BuildCharts(SweepRows(), PlotKind::kAccVsRound));
  ASSERT_EQ(charts.size(), 2u);
  const Chart& acc = charts[1];
  ASSERT_EQ(acc.series.size(), 3u);
  EXPECT_EQ(acc.series[0].label, "16");
  EXPECT_FALSE(acc.series[0].dashed);
  EXPECT_TRUE(acc.series[2].dashed);
  ASSERT_EQ(acc.series[1].points.size(), 4u);
  // Mean over seeds 1 and 2 of 0.5 + 0.01 * round + seed.
  EXPECT_DOUBLE_EQ(acc.series[1].points[2].first, 2.0);
  EXPECT_NEAR(acc.series[1].points[2].second, 2.02, 1e-12);
}

TEST(PlotTest, AccVsLSortsNumericValuesAndAddsReference) {
  ASSERT_OK_AND_ASSIGN(std::vector<Chart> charts,
                       BuildCharts(SweepRows(), PlotKind::kAccVsL));
  ASSERT_EQ(charts.size(), 1u);
  ASSERT_EQ(charts[0].series.size(), 2u);
  const Series& main = charts[0].series[0];
  ASSERT_EQ(main.points.size(), 2u);
  EXPECT_EQ(main.points[0].first, 4.0);
  EXPECT_NEAR(main.points[0].second, 2.03, 1e-12);
  EXPECT_EQ(main.points[1].first, 16.0);
  EXPECT_TRUE(charts[0].series[1].dashed);
  EXPECT_NEAR(charts[0].series[1].points[0].second, 2.23, 1e-12);
}

TEST(PlotTest, MseVsNSkipsReference) {
  ASSERT_OK_AND_ASSIGN(std::vector<Chart> charts,
                       BuildCharts(SweepRows(), PlotKind::kMseVsN));
  ASSERT_EQ(charts[0].series.size(), 1u);
  EXPECT_EQ(charts[0].series[0].points.size(), 2u);
}

TEST(PlotTest, SvgIsDeterministicAndEscaped) {
  ASSERT_OK_AND_ASSIGN(std::vector<Chart> charts,
                       BuildCharts(SweepRows(), PlotKind::kAccVsRound));
  charts[0].title = "loss <&> \"x\"";
  const std::string svg = RenderSvg(charts);
  EXPECT_EQ(svg, RenderSvg(charts));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("loss &lt;&amp;&gt;"), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
}

TEST(PlotTest, PlotWritesIdenticalFilesFromDirectory) {
  const fs::path dir = FreshDir("plot_dir");
  std::vector<RoundRecord> rows = SweepRows();
  std::string combined = FormatTrace(rows);
  ASSERT_OK(WriteTextFile((dir / "combined.csv").string(), combined));
  ASSERT_OK_AND_ASSIGN(std::vector<RoundRecord> loaded,
                       LoadTraces(dir.string()));
  EXPECT_EQ(loaded.size(), rows.size());
  const std::string a = (dir / "a.svg").string();
  const std::string b = (dir / "b.svg").string();
  ASSERT_OK(Plot(dir.string(), PlotKind::kAccVsL, a));
  ASSERT_OK(Plot(dir.string(), PlotKind::kAccVsL, b));
  ASSERT_OK_AND_ASSIGN(std::string text_a, ReadTextFile(a));
  ASSERT_OK_AND_ASSIGN(std::string text_b, ReadTextFile(b));
  EXPECT_EQ(text_a, text_b);
}

TEST(PlotTest, LoadTracesFallsBackToSeedFiles) {
  const fs::path dir = FreshDir("plot_seeds");
  fs::create_directories(dir / "4");
  ASSERT_OK(WriteTextFile((dir / "4" / "trace_seed1.csv").string(),
                          FormatTrace({Row("4", 1, 0, 0.2)})));
  ASSERT_OK(WriteTextFile((dir / "4" / "trace_seed2.csv").string(),
                          FormatTrace({Row("4", 2, 0, 0.3)})));
  ASSERT_OK(WriteTextFile((dir / "4" / "notes.csv").string(), "ignored"));
  ASSERT_OK_AND_ASSIGN(std::vector<RoundRecord> loaded,
                       LoadTraces(dir.string()));
  ASSERT_EQ(loaded.size(), 2u);
  EXPECT_EQ(loaded[0].seed, 1u);
  EXPECT_EQ(loaded[1].seed, 2u);
}

TEST(PlotTest, MalformedTraceIsInvalidArgument) {
  const fs::path dir = FreshDir("plot_bad");
  const fs::path file = dir / "trace_seed1.csv";
  ASSERT_OK(WriteTextFile(file.string(), "not,a,trace\n"));
  EXPECT_EQ(LoadTraces(file.string()).status().code(),
            absl::StatusCode::kInvalidArgument);
}

}  // namespace
}  // namespace risfeel
