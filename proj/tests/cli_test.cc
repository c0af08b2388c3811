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

// Drives the risfeel binary through std::system and checks exit codes and
// the files it writes.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "risfeel/trace_csv.h"
#include "test_util.h"

namespace risfeel {
namespace {

namespace fs = std::filesystem;

constexpr char kSmallConfig[] = R"(
[experiment]
scenario = T
seeds = 1, 2
rounds = 3

[channel]
devices = 4
ris_elements = 2

[selection]
strategy = descending_gain
count = 4

[ris]
optimizer = mse
levels = 4
restarts = 2

[data]
train_size = 300
test_size = 100
samples_per_device = 30

[train]
batch_size = 10

[sweep]
key = selection.count
values = 2, 4
reference = error_free
)";

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::path(testing::TempDir()) / ("cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int RunCli(const std::string& args, const fs::path& log) {
  const std::string command = std::string(RISFEEL_CLI_PATH) + " " + args +
                              " >" + log.string() + " 2>&1";
  const int status = std::system(command.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string Slurp(const fs::path& path) {
  auto text = ReadTextFile(path.string());
  return text.ok() ? *text : std::string();
}

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    dir_ =
        Scratch(testing::UnitTest::GetInstance()->current_test_info()->name());
    config_ = dir_ / "small.conf";
    ASSERT_OK(WriteTextFile(config_.string(), kSmallConfig));
    log_ = dir_ / "log.txt";
  }

  fs::path dir_;
  fs::path config_;
  fs::path log_;
};

TEST_F(CliTest, ValidatePreset) {
  EXPECT_EQ(RunCli("validate --scenario A", log_), 0) << Slurp(log_);
  EXPECT_NE(Slurp(log_).find("config OK"), std::string::npos);
}

TEST_F(CliTest, SeedFlagAppends) {
  EXPECT_EQ(
      RunCli("validate --config " + config_.string() + " --seed 42 --seed 43",
             log_),
      0);
  EXPECT_NE(Slurp(log_).find("1, 2, 42, 43"), std::string::npos) << Slurp(log_);
}

TEST_F(CliTest, ConfigErrorsExitWithTwo) {
  const fs::path bad = dir_ / "bad.conf";
  ASSERT_OK(WriteTextFile(bad.string(), "[channel]\ndevices = -3\n"));
  EXPECT_EQ(RunCli("run --config " + bad.string(), log_), 2);
  ASSERT_OK(WriteTextFile(bad.string(), "[channel]\nwheels = 4\n"));
  EXPECT_EQ(RunCli("validate --config " + bad.string(), log_), 2);
  EXPECT_EQ(RunCli("run --config " + (dir_ / "missing.conf").string(), log_),
            2);
  EXPECT_EQ(RunCli("run", log_), 2);
  EXPECT_EQ(RunCli("run --scenario Z", log_), 2);
  EXPECT_EQ(RunCli("run --frobnicate", log_), 2);
  EXPECT_EQ(RunCli("", log_), 2);
  EXPECT_EQ(RunCli("plot --input x --kind pie", log_), 2);
}

TEST_F(CliTest, SweepWithoutKeyIsConfigError) {
  const fs::path plain = dir_ / "plain.conf";
  ASSERT_OK(WriteTextFile(plain.string(), "[experiment]\nrounds = 1\n"));
  EXPECT_EQ(RunCli("sweep --config " + plain.string(), log_), 2);
}

TEST_F(CliTest, RunWritesTracesAndIsReproducible) {
  const fs::path a = dir_ / "a";
  const fs::path b = dir_ / "b";
  ASSERT_EQ(
      RunCli("run --config " + config_.string() + " --out " + a.string(), log_),
      0)
      << Slurp(log_);
  ASSERT_EQ(
      RunCli("run --config " + config_.string() + " --out " + b.string(), log_),
      0);
  for (const char* name :
       {"trace_seed1.csv", "trace_seed2.csv", "summary.csv"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(Slurp(a / name), Slurp(b / name)) << name;
  }
  EXPECT_TRUE(fs::exists(a / "config.conf"));
  ASSERT_OK_AND_ASSIGN(auto rows, ParseTrace(Slurp(a / "trace_seed1.csv")));
  EXPECT_EQ(rows.size(), 4u);
}

TEST_F(CliTest, SweepThenPlot) {
  const fs::path out = dir_ / "sweep";
  ASSERT_EQ(
      RunCli("sweep --config " + config_.string() + " --out " + out.string(),
             log_),
      0)
      << Slurp(log_);
  EXPECT_TRUE(fs::exists(out / "combined.csv"));
  EXPECT_TRUE(fs::exists(out / "2" / "trace_seed2.csv"));
  EXPECT_TRUE(fs::exists(out / "error_free" / "summary.csv"));

  ASSERT_EQ(RunCli("plot --input " + out.string(), log_), 0) << Slurp(log_);
  EXPECT_TRUE(fs::exists(out / "acc_vs_round.svg"));
  EXPECT_TRUE(fs::exists(out / "mse_vs_n.svg"));
  const std::string first = Slurp(out / "acc_vs_round.svg");
  ASSERT_EQ(RunCli("plot --kind acc_vs_round --input " + out.string(), log_),
            0);
  EXPECT_EQ(Slurp(out / "acc_vs_round.svg"), first);
}

TEST_F(CliTest, PlotWithoutDataFails) {
  const fs::path empty = dir_ / "empty";
  fs::create_directories(empty);
  EXPECT_EQ(RunCli("plot --input " + empty.string(), log_), 1);
  EXPECT_NE(Slurp(log_).find("no data"), std::string::npos);
}

}  // namespace
}  // namespace risfeel
