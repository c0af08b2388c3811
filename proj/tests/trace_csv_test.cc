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
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace risfeel {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

RoundRecord Record(uint64_t seed, int round, double acc) {
  RoundRecord r;
  r.scenario = "B";
  r.seed = seed;
  r.sweep_value = "64";
  r.round = round;
  r.n_selected = 3;
  r.mse_empirical = 0.125;
  r.mse_analytic = 0.1 * round;
  r.train_loss = 1.0 / (round + 3.0);
  r.test_acc = acc;
  r.epsilon_proxy = round == 0 ? kNaN : kInf;
  r.ms = 0.0;
  return r;
}

TEST(TraceCsvTest, HeaderIsPinned) {
  const std::string text = FormatTrace({});
  EXPECT_EQ(text,
            "# schema: round-trace/1\n"
            "scenario,seed,sweep_value,round,n_selected,mse_empirical,"
            "mse_analytic,train_loss,test_acc,epsilon_proxy,ms\n");
}

TEST(TraceCsvTest, SummaryHeaderIsPinned) {
  EXPECT_EQ(FormatSummary({}),
            "# schema: round-summary/1\n"
            "scenario,sweep_value,round,num_seeds,n_selected_mean,"
            "mse_empirical_mean,mse_empirical_std,mse_analytic_mean,"
            "mse_analytic_std,train_loss_mean,train_loss_std,test_acc_mean,"
            "test_acc_std,epsilon_proxy_mean,epsilon_proxy_std,ms_mean\n");
}

TEST(TraceCsvTest, FormatDoubleSpecialValues) {
  EXPECT_EQ(FormatDouble(kNaN), "nan");
  EXPECT_EQ(FormatDouble(kInf), "inf");
  EXPECT_EQ(FormatDouble(-kInf), "-inf");
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(FormatDouble(0.5), "0.5");
}

TEST(TraceCsvTest, FormatDoubleRoundTripsExactly) {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, -2.5e-300, 0.78125}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v) << v;
  }
}

TEST(TraceCsvTest, RowLayout) {
  EXPECT_EQ(FormatTraceRow(Record(7, 0, 0.25)),
            "B,7,64,0,3,0.125,0,0.33333333333333331,0.25,nan,0");
}

TEST(TraceCsvTest, ParseInvertsFormat) {
  std::vector<RoundRecord> records;
  for (int round = 0; round < 4; ++round) {
    records.push_back(Record(11, round, 0.1 * round));
  }
  records[2].sweep_value = "a,\"b\"";
  ASSERT_OK_AND_ASSIGN(std::vector<RoundRecord> parsed,
                       ParseTrace(FormatTrace(records)));
  ASSERT_EQ(parsed.size(), records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(parsed[i].scenario, records[i].scenario);
    EXPECT_EQ(parsed[i].seed, records[i].seed);
    EXPECT_EQ(parsed[i].sweep_value, records[i].sweep_value);
    EXPECT_EQ(parsed[i].round, records[i].round);
    EXPECT_EQ(parsed[i].n_selected, records[i].n_selected);
    EXPECT_EQ(parsed[i].train_loss, records[i].train_loss);
    EXPECT_EQ(parsed[i].test_acc, records[i].test_acc);
    EXPECT_EQ(std::isnan(parsed[i].epsilon_proxy),
              std::isnan(records[i].epsilon_proxy));
  }
  EXPECT_EQ(FormatTrace(parsed), FormatTrace(records));
}

TEST(TraceCsvTest, ParseRejectsWrongHeader) {
  EXPECT_FALSE(ParseTrace("# schema: round-trace/1\nround,seed\n").ok());
  EXPECT_FALSE(ParseTrace("").ok());
}

TEST(TraceCsvTest, ParseRejectsShortRow) {
  const std::string text = FormatTrace({}) + "B,1,64,0\n";
  EXPECT_FALSE(ParseTrace(text).ok());
}

TEST(TraceCsvTest, ParseRejectsBadNumber) {
  std::string row = FormatTraceRow(Record(1, 1, 0.5));
  row.replace(row.rfind(",0"), 2, ",zero");
  EXPECT_FALSE(ParseTrace(FormatTrace({}) + row + "\n").ok());
}

TEST(TraceCsvTest, SummarizeMeanAndSampleStd) {
  std::vector<std::vector<RoundRecord>> traces;
  const std::vector<double> accs = {0.5, 0.7, 0.9};
  for (size_t s = 0; s < accs.size(); ++s) {
    traces.push_back({Record(s, 0, 0.0), Record(s, 1, accs[s])});
  }
  ASSERT_OK_AND_ASSIGN(std::vector<SummaryRow> rows, Summarize(traces));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].round, 1);
  EXPECT_EQ(rows[1].num_seeds, 3);
  EXPECT_NEAR(rows[1].test_acc_mean, 0.7, 1e-15);
  // Sample standard deviation of {0.5, 0.7, 0.9}.
  EXPECT_NEAR(rows[1].test_acc_std, 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(rows[1].n_selected_mean, 3.0);
  EXPECT_TRUE(std::isnan(rows[0].epsilon_proxy_mean));
  EXPECT_TRUE(std::isinf(rows[1].epsilon_proxy_mean));
}

TEST(TraceCsvTest, SummarizeSingleSeedHasZeroStd) {
  ASSERT_OK_AND_ASSIGN(std::vector<SummaryRow> rows,
                       Summarize({{Record(1, 0, 0.3)}}));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].test_acc_std, 0.0);
}

TEST(TraceCsvTest, SummarizeRejectsMismatchedRounds) {
  EXPECT_FALSE(Summarize({}).ok());
  EXPECT_FALSE(
      Summarize({{Record(1, 0, 0.1), Record(1, 1, 0.2)}, {Record(2, 0, 0.1)}})
          .ok());
  EXPECT_FALSE(Summarize({{Record(1, 0, 0.1)}, {Record(2, 1, 0.1)}}).ok());
}

TEST(TraceCsvTest, FileRoundTrip) {
  const std::string path =
      (std::filesystem::path(testing::TempDir()) / "trace_csv_test.csv")
          .string();
  const std::string text = FormatTrace({Record(3, 0, 0.5)});
  ASSERT_OK(WriteTextFile(path, text));
  ASSERT_OK_AND_ASSIGN(std::string read, ReadTextFile(path));
  EXPECT_EQ(read, text);
  EXPECT_FALSE(ReadTextFile(path + ".missing").ok());
}

}  // namespace
}  // namespace risfeel
