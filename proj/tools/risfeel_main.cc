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

// Command-line front end: run, sweep, plot and validate experiments.
//
// Exit codes: 0 on success, 2 on a command-line or configuration error,
// 1 on any other failure.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "risfeel/config.h"
#include "risfeel/experiment.h"
#include "risfeel/plot.h"
#include "risfeel/trace_csv.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfigError = 2;

struct Options {
  std::string config_path;
  std::string scenario;
  std::string out;
  std::vector<uint64_t> seeds;
  std::string input;
  std::string kind = "all";
};

struct LoadedConfig {
  risfeel::ConfigEntries entries;
  risfeel::ExperimentConfig config;
};

absl::StatusOr<LoadedConfig> LoadConfig(const Options& opts) {
  if (opts.config_path.empty() && opts.scenario.empty()) {
    return absl::InvalidArgumentError("need --config PATH or --scenario ID");
  }
  risfeel::ConfigEntries entries;
  if (!opts.scenario.empty()) {
    auto text = risfeel::PresetText(opts.scenario);
    if (!text.ok()) return text.status();
    auto parsed = risfeel::ParseConfigText(*text);
    if (!parsed.ok()) return parsed.status();
    entries = *std::move(parsed);
  }
  if (!opts.config_path.empty()) {
    auto file = risfeel::ReadConfigFile(opts.config_path);
    if (!file.ok()) return file.status();
    entries = risfeel::MergeEntries(entries, *file);
  }
  risfeel::ConfigEntries overrides;
  if (!opts.seeds.empty()) {
    std::string seeds = "1";
    for (const auto& [key, value] : entries) {
      if (key == "experiment.seeds") seeds = value;
    }
    overrides.emplace_back(
        "experiment.seeds",
        absl::StrCat(seeds, ", ", absl::StrJoin(opts.seeds, ", ")));
  }
  if (!opts.out.empty())
    overrides.emplace_back("experiment.output_dir", opts.out);
  entries = risfeel::MergeEntries(entries, overrides);
  auto config = risfeel::BuildConfig(entries);
  if (!config.ok()) return config.status();
  return LoadedConfig{std::move(entries), *std::move(config)};
}

int Fail(const absl::Status& status, int code) {
  std::cerr << "risfeel: " << status.message() << "\n";
  return code;
}

absl::Status SaveResolvedConfig(const LoadedConfig& loaded) {
  std::error_code ec;
  std::filesystem::create_directories(loaded.config.output_dir, ec);
  if (ec) {
    return absl::UnavailableError(absl::StrCat(
        "cannot create ", loaded.config.output_dir, ": ", ec.message()));
  }
  return risfeel::WriteTextFile(
      absl::StrCat(loaded.config.output_dir, "/config.conf"),
      risfeel::FormatEntries(loaded.entries));
}

void PrintFinal(const risfeel::RunResult& result) {
  if (result.summary.empty()) return;
  const risfeel::SummaryRow& last = result.summary.back();
  std::cout << (result.sweep_value.empty() ? "run" : result.sweep_value)
            << ": round " << last.round << " test_acc "
            << risfeel::FormatDouble(last.test_acc_mean) << " over "
            << last.num_seeds << " seed(s)\n";
}

int RunCommand(const Options& opts) {
  auto loaded = LoadConfig(opts);
  if (!loaded.ok()) return Fail(loaded.status(), kExitConfigError);
  if (auto s = SaveResolvedConfig(*loaded); !s.ok()) {
    return Fail(s, kExitFailure);
  }
  auto result = risfeel::Run(loaded->config);
  if (!result.ok()) return Fail(result.status(), kExitFailure);
  PrintFinal(*result);
  std::cout << "wrote " << result->traces.size() << " trace(s) to "
            << loaded->config.output_dir << "\n";
  return kExitOk;
}

int SweepCommand(const Options& opts) {
  auto loaded = LoadConfig(opts);
  if (!loaded.ok()) return Fail(loaded.status(), kExitConfigError);
  if (loaded->config.sweep.key.empty()) {
    return Fail(absl::InvalidArgumentError("config has no [sweep] key"),
                kExitConfigError);
  }
  if (auto s = SaveResolvedConfig(*loaded); !s.ok()) {
    return Fail(s, kExitFailure);
  }
  auto results = risfeel::Sweep(loaded->config);
  if (!results.ok()) return Fail(results.status(), kExitFailure);
  for (const auto& result : *results) PrintFinal(result);
  std::cout << "wrote sweep over " << loaded->config.sweep.key << " to "
            << loaded->config.output_dir << "\n";
  return kExitOk;
}

int PlotCommand(const Options& opts) {
  std::string input = opts.input;
  std::string out = opts.out;
  if (input.empty()) {
    if (opts.config_path.empty() && opts.scenario.empty()) {
      return Fail(absl::InvalidArgumentError(
                      "plot needs --input PATH, --config PATH or --scenario"),
                  kExitConfigError);
    }
    auto loaded = LoadConfig(opts);
    if (!loaded.ok()) return Fail(loaded.status(), kExitConfigError);
    input = loaded->config.output_dir;
  }
  if (out.empty()) out = std::filesystem::is_directory(input) ? input : ".";
  std::vector<std::string> kinds;
  if (opts.kind == "all") {
    kinds = risfeel::PlotKindNames();
  } else {
    if (auto k = risfeel::ParsePlotKind(opts.kind); !k.ok()) {
      return Fail(k.status(), kExitConfigError);
    }
    kinds = {opts.kind};
  }
  auto records = risfeel::LoadTraces(input);
  if (!records.ok()) return Fail(records.status(), kExitFailure);
  std::error_code ec;
  std::filesystem::create_directories(out, ec);
  int written = 0;
  for (const std::string& name : kinds) {
    const risfeel::PlotKind kind = *risfeel::ParsePlotKind(name);
    auto charts = risfeel::BuildCharts(*records, kind);
    if (!charts.ok()) {
      if (opts.kind != "all") return Fail(charts.status(), kExitFailure);
      continue;
    }
    const std::string path = absl::StrCat(out, "/", name, ".svg");
    if (auto s = risfeel::WriteTextFile(path, risfeel::RenderSvg(*charts));
        !s.ok()) {
      return Fail(s, kExitFailure);
    }
    std::cout << "wrote " << path << "\n";
    ++written;
  }
  if (written == 0) {
    return Fail(absl::NotFoundError("no data: nothing to plot"), kExitFailure);
  }
  return kExitOk;
}

int ValidateCommand(const Options& opts) {
  auto loaded = LoadConfig(opts);
  if (!loaded.ok()) return Fail(loaded.status(), kExitConfigError);
  std::cout << risfeel::FormatEntries(loaded->entries) << "\nconfig OK\n";
  return kExitOk;
}

void AddConfigFlags(CLI::App* cmd, Options& opts) {
  cmd->add_option("--config", opts.config_path, "Config file (key = value)");
  cmd->add_option("--scenario", opts.scenario, "Built-in preset")
      ->check(CLI::IsMember({"A", "B", "C", "D", "a", "b", "c", "d"}));
  cmd->add_option("--seed", opts.seeds, "Seed appended to the seed list");
  cmd->add_option("--out", opts.out, "Output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator of RIS-assisted over-the-air federated learning"};
  app.require_subcommand(1);
  Options opts;

  CLI::App* run = app.add_subcommand("run", "Run every seed of a config");
  AddConfigFlags(run, opts);
  CLI::App* sweep = app.add_subcommand("sweep", "Run the config's [sweep]");
  AddConfigFlags(sweep, opts);
  CLI::App* plot = app.add_subcommand("plot", "Render SVG figures from traces");
  AddConfigFlags(plot, opts);
  plot->add_option("--input", opts.input, "Trace CSV file or directory");
  plot->add_option("--kind", opts.kind,
                   "mse_vs_n|acc_vs_n|acc_vs_round|acc_vs_L|privacy_tradeoff|"
                   "all");
  CLI::App* validate = app.add_subcommand("validate", "Check a config");
  AddConfigFlags(validate, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfigError;
  }
  if (run->parsed()) return RunCommand(opts);
  if (sweep->parsed()) return SweepCommand(opts);
  if (plot->parsed()) return PlotCommand(opts);
  if (validate->parsed()) return ValidateCommand(opts);
  return kExitFailure;
}
