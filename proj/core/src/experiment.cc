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

#include "risfeel/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/aircomp.h"
#include "risfeel/channel.h"
#include "risfeel/idx.h"
#include "risfeel/privacy.h"
#include "risfeel/random.h"
#include "risfeel/ris_optimizer.h"
#include "risfeel/selection.h"
#include "risfeel/status_macros.h"
#include "risfeel/training.h"

namespace risfeel {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Channel, selection and RIS state of one coherence block.
struct BlockState {
  int index = -1;
  ComplexMatrix h_eff;
  SelectionSet selected;
  Beamformer beamformer;
  // Present unless the run is error-free without privacy.
  std::optional<TransmitPlan> plan;
  double epsilon = kNaN;
};

std::vector<DeviceProfile> MakeProfiles(const ExperimentConfig& c,
                                        const std::vector<Dataset>& locals) {
  std::vector<DeviceProfile> profiles;
  for (size_t k = 0; k < locals.size(); ++k) {
    DeviceProfile p;
    p.data_size = locals[k].size();
    p.weight = c.weights == WeightScheme::kDataSize ? p.data_size : 1.0;
    p.power_budget = c.device_power_budgets.empty() ? c.power_budget
                                                    : c.device_power_budgets[k];
    profiles.push_back(p);
  }
  return profiles;
}

absl::StatusOr<BlockState> SetUpBlock(const ExperimentConfig& c, int block,
                                      const RandomStream& root,
                                      std::span<const DeviceProfile> profiles) {
  BlockState state;
  state.index = block;
  RandomStream channel_stream = root.Fork("channel").Fork(block);
  RISFEEL_ASSIGN_OR_RETURN(
      ChannelRealization real,
      SampleChannels(c.fading, c.num_devices, c.num_antennas, c.num_elements,
                     channel_stream));
  real.block_index = block;
  RandomStream opt_stream = root.Fork("optimizer").Fork(block);
  const int num_elements = real.num_elements();

  RisConfig theta = RisConfig::AllOnes(num_elements);
  std::optional<Beamformer> beamformer;
  std::optional<Complex> csit_free_scale;

  if (c.strategy == SelectionStrategy::kGreedyCodesign) {
    RISFEEL_ASSIGN_OR_RETURN(
        CodesignResult result,
        GreedyCodesign(real, profiles, c.noise_std, c.lambda,
                       c.optimizer_options, opt_stream));
    state.selected = std::move(result.selected);
    theta = std::move(result.theta);
    beamformer = std::move(result.beamformer);
  } else {
    if (c.strategy == SelectionStrategy::kAll) {
      state.selected = SelectionSet::All(c.num_devices);
    } else {
      RISFEEL_ASSIGN_OR_RETURN(ComplexMatrix initial,
                               EffectiveChannel(real, theta));
      const std::vector<double> gains = RowGains(initial);
      RISFEEL_ASSIGN_OR_RETURN(state.selected,
                               SelectDescendingGain(gains, c.select_count));
    }
    switch (c.optimizer) {
      case RisOptimizerKind::kNone:
        break;
      case RisOptimizerKind::kRandom:
        theta = RandomPhases(num_elements, c.optimizer_options.codebook,
                             opt_stream);
        break;
      case RisOptimizerKind::kMse: {
        RISFEEL_ASSIGN_OR_RETURN(
            MseSolution solution,
            OptimizeForSet(real, state.selected, profiles, c.noise_std,
                           c.optimizer_options, opt_stream));
        theta = std::move(solution.theta);
        beamformer = std::move(solution.beamformer);
        break;
      }
      case RisOptimizerKind::kCsitFree: {
        const std::vector<int>& members = state.selected.indices();
        const ChannelRealization sub = RestrictToDevices(real, members);
        std::vector<double> weights;
        for (int k : members) weights.push_back(profiles[k].weight);
        RISFEEL_ASSIGN_OR_RETURN(
            AlignmentResult result,
            OptimizeAlignmentCsitFree(sub, weights, c.optimizer_options,
                                      opt_stream));
        theta = std::move(result.theta);
        beamformer = Beamformer::Canonical(1);
        csit_free_scale = result.scale;
        break;
      }
    }
  }
  RISFEEL_ASSIGN_OR_RETURN(state.h_eff, EffectiveChannel(real, theta));
  if (!beamformer.has_value()) {
    RISFEEL_ASSIGN_OR_RETURN(
        beamformer, DominantBeamformer(state.h_eff, state.selected.indices()));
  }
  state.beamformer = std::move(*beamformer);

  const bool need_plan =
      c.mode == AggregationMode::kAirComp || c.privacy_enabled;
  if (need_plan) {
    if (csit_free_scale.has_value()) {
      // The alignment scale was fit to raw weights; rescale it to the
      // population-normalized weights used by the plan.
      double total = 0.0;
      for (const DeviceProfile& p : profiles) total += p.weight;
      RISFEEL_ASSIGN_OR_RETURN(state.plan,
                               PlanCsitFree(state.selected.indices(), profiles,
                                            *csit_free_scale * total));
    } else {
      ComplexMatrix h_plan = state.h_eff;
      if (c.csi_error_std > 0.0) {
        RandomStream csi_stream = root.Fork("csi").Fork(block);
        h_plan = PerturbChannel(state.h_eff, c.csi_error_std, csi_stream);
      }
      RISFEEL_ASSIGN_OR_RETURN(
          state.plan, PlanTransmissions(h_plan, state.selected.indices(),
                                        profiles, state.beamformer));
    }
  }
  if (c.privacy_enabled) {
    RISFEEL_ASSIGN_OR_RETURN(
        PrivacyReport report,
        PrivacyProxy(state.h_eff, *state.plan, c.privacy, c.noise_std));
    state.epsilon = report.system_epsilon;
  }
  return state;
}

// Population objective: sum_k w_k loss_k with weights normalized over all
// devices.
absl::StatusOr<double> PopulationLoss(const Model& model,
                                      const ModelVector& params,
                                      const std::vector<Dataset>& locals,
                                      std::span<const DeviceProfile> profiles) {
  double total_weight = 0.0;
  for (const DeviceProfile& p : profiles) total_weight += p.weight;
  double loss = 0.0;
  for (size_t k = 0; k < locals.size(); ++k) {
    if (profiles[k].weight == 0.0) continue;
    RISFEEL_ASSIGN_OR_RETURN(LossGradient lg,
                             model.LossAndGradient(params, locals[k]));
    loss += profiles[k].weight / total_weight * lg.loss;
  }
  return loss;
}

double MeanSquare(const ModelVector& v) {
  return v.size() == 0 ? 0.0 : v.squaredNorm() / v.size();
}

}  // namespace

absl::StatusOr<DataBundle> PrepareData(const ExperimentConfig& c,
                                       uint64_t seed) {
  DataBundle bundle;
  if (c.data.source == DataSource::kIdx) {
    RISFEEL_ASSIGN_OR_RETURN(
        bundle.train, LoadIdxDataset(c.data.train_images, c.data.train_labels));
    RISFEEL_ASSIGN_OR_RETURN(
        bundle.test, LoadIdxDataset(c.data.test_images, c.data.test_labels));
    if (bundle.train.num_features() != bundle.test.num_features()) {
      return absl::InvalidArgumentError(
          "IDX train and test images differ in size");
    }
    const int classes =
        std::max(bundle.train.num_classes, bundle.test.num_classes);
    bundle.train.num_classes = classes;
    bundle.test.num_classes = classes;
    return bundle;
  }
  RandomStream data_stream = RandomStream(seed).Fork("data");
  RandomStream task_stream = data_stream.Fork("task");
  RISFEEL_ASSIGN_OR_RETURN(
      GaussianMixtureTask task,
      MakeGaussianMixtureTask(c.data.classes, c.data.features,
                              c.data.separation, task_stream));
  task.noise_std = c.data.noise_std;
  RandomStream train_stream = data_stream.Fork("train");
  RandomStream test_stream = data_stream.Fork("test");
  bundle.train = task.Sample(c.data.train_size, train_stream);
  bundle.test = task.Sample(c.data.test_size, test_stream);
  return bundle;
}

absl::StatusOr<std::unique_ptr<Model>> MakeModel(const ExperimentConfig& c,
                                                 int num_features,
                                                 int num_classes) {
  if (num_features < 1 || num_classes < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("model needs >= 1 feature and >= 2 classes, got ",
                     num_features, " and ", num_classes));
  }
  if (c.model == ModelKind::kMlp) {
    return std::make_unique<Perceptron>(num_features, c.hidden, num_classes);
  }
  return std::make_unique<SoftmaxRegression>(num_features, num_classes);
}

absl::StatusOr<std::vector<RoundRecord>> RunSeed(
    const ExperimentConfig& c, uint64_t seed, absl::string_view sweep_value) {
  RISFEEL_RETURN_IF_ERROR(ValidateConfig(c));
  const RandomStream root(seed);
  RISFEEL_ASSIGN_OR_RETURN(DataBundle data, PrepareData(c, seed));
  RandomStream partition_stream = root.Fork("partition");
  RISFEEL_ASSIGN_OR_RETURN(
      std::vector<Dataset> locals,
      Partition(data.train, c.num_devices, c.data.partition, partition_stream));
  const std::vector<DeviceProfile> profiles = MakeProfiles(c, locals);
  RISFEEL_ASSIGN_OR_RETURN(
      std::unique_ptr<Model> model,
      MakeModel(c, data.train.num_features(), data.train.num_classes));
  RandomStream model_stream = root.Fork("model");
  ModelVector params = model->InitialParameters(model_stream);

  std::vector<RoundRecord> records;
  auto make_record = [&](int round) -> absl::StatusOr<RoundRecord> {
    RoundRecord r;
    r.scenario = c.scenario;
    r.seed = seed;
    r.sweep_value = std::string(sweep_value);
    r.round = round;
    RISFEEL_ASSIGN_OR_RETURN(r.train_loss,
                             PopulationLoss(*model, params, locals, profiles));
    RISFEEL_ASSIGN_OR_RETURN(r.test_acc, Evaluate(*model, params, data.test));
    return r;
  };
  {
    RISFEEL_ASSIGN_OR_RETURN(RoundRecord initial, make_record(0));
    initial.mse_empirical = kNaN;
    initial.mse_analytic = kNaN;
    initial.epsilon_proxy = kNaN;
    records.push_back(std::move(initial));
  }

  BlockState block;
  for (int round = 1; round <= c.train.rounds; ++round) {
    const auto start = std::chrono::steady_clock::now();
    const int block_index =
        c.block_rounds == 0 ? 0 : (round - 1) / c.block_rounds;
    if (block_index != block.index) {
      RISFEEL_ASSIGN_OR_RETURN(block,
                               SetUpBlock(c, block_index, root, profiles));
    }
    const std::vector<int>& members = block.selected.indices();

    const RandomStream round_stream = root.Fork("training").Fork(round);
    std::vector<ModelVector> updates;
    updates.reserve(members.size());
    for (int k : members) {
      RandomStream device_stream = round_stream.Fork(k);
      RISFEEL_ASSIGN_OR_RETURN(
          ModelVector delta,
          LocalUpdate(*model, params, locals[k], c.train, device_stream));
      updates.push_back(std::move(delta));
    }

    double total_weight = 0.0;
    for (const DeviceProfile& p : profiles) total_weight += p.weight;
    std::vector<double> weights;
    double selected_weight = 0.0;
    for (int k : members) {
      weights.push_back(profiles[k].weight / total_weight);
      selected_weight += weights.back();
    }

    RandomStream noise_stream = root.Fork("noise").Fork(round);
    ModelVector aggregated;
    RoundRecord record;
    if (c.mode == AggregationMode::kAirComp) {
      std::vector<double> artificial;
      if (c.privacy_enabled) {
        for (ModelVector& u : updates) u = ClipUpdate(u, c.privacy.clip_norm);
        for (int k : members) artificial.push_back(c.privacy.NoiseStd(k));
      }
      RISFEEL_ASSIGN_OR_RETURN(ModelVector exact,
                               WeightedSum(updates, weights));
      record.aggregate_power = MeanSquare(exact);
      RISFEEL_ASSIGN_OR_RETURN(
          AggregationReport report,
          TransmitAndAggregate(*block.plan, block.h_eff, block.beamformer,
                               updates, c.noise_std, artificial, noise_stream));
      aggregated = report.estimate / block.plan->selected_weight;
      record.mse_empirical = report.empirical_mse;
      record.mse_analytic = report.analytic_mse;
    } else {
      if (c.privacy_enabled) {
        for (size_t i = 0; i < members.size(); ++i) {
          RandomStream device_noise = noise_stream.Fork(members[i]);
          RISFEEL_ASSIGN_OR_RETURN(
              updates[i],
              ApplyMechanism(updates[i], c.privacy, members[i], device_noise));
        }
      }
      RISFEEL_ASSIGN_OR_RETURN(ModelVector exact,
                               WeightedSum(updates, weights));
      record.aggregate_power = MeanSquare(exact);
      aggregated = exact / selected_weight;
      record.mse_empirical = 0.0;
      record.mse_analytic = 0.0;
    }
    RISFEEL_ASSIGN_OR_RETURN(params, GlobalUpdate(params, aggregated));

    RISFEEL_ASSIGN_OR_RETURN(RoundRecord evaluated, make_record(round));
    evaluated.n_selected = block.selected.size();
    evaluated.selected = members;
    evaluated.mse_empirical = record.mse_empirical;
    evaluated.mse_analytic = record.mse_analytic;
    evaluated.aggregate_power = record.aggregate_power;
    evaluated.epsilon_proxy = block.epsilon;
    if (c.record_timing) {
      evaluated.ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    }
    records.push_back(std::move(evaluated));
  }
  return records;
}

absl::StatusOr<RunResult> RunExperiment(const ExperimentConfig& config,
                                        absl::string_view sweep_value) {
  RISFEEL_RETURN_IF_ERROR(ValidateConfig(config));
  RunResult result;
  result.sweep_value = std::string(sweep_value);
  for (uint64_t seed : config.seeds) {
    RISFEEL_ASSIGN_OR_RETURN(std::vector<RoundRecord> trace,
                             RunSeed(config, seed, sweep_value));
    result.traces.push_back(std::move(trace));
  }
  RISFEEL_ASSIGN_OR_RETURN(result.summary, Summarize(result.traces));
  return result;
}

absl::Status WriteRunResult(const RunResult& result,
                            const ExperimentConfig& config,
                            const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create ", dir, ": ", ec.message()));
  }
  for (size_t i = 0; i < result.traces.size(); ++i) {
    const std::string path =
        absl::StrCat(dir, "/trace_seed", config.seeds[i], ".csv");
    RISFEEL_RETURN_IF_ERROR(WriteTextFile(path, FormatTrace(result.traces[i])));
  }
  return WriteTextFile(absl::StrCat(dir, "/summary.csv"),
                       FormatSummary(result.summary));
}

absl::StatusOr<RunResult> Run(const ExperimentConfig& config) {
  RISFEEL_ASSIGN_OR_RETURN(RunResult result, RunExperiment(config));
  RISFEEL_RETURN_IF_ERROR(WriteRunResult(result, config, config.output_dir));
  return result;
}

absl::StatusOr<ExperimentConfig> ConfigForSweepValue(
    const ExperimentConfig& base, absl::string_view value) {
  if (base.sweep.key.empty()) {
    return absl::InvalidArgumentError("config has no sweep.key");
  }
  ExperimentConfig config = base;
  config.sweep = {};
  RISFEEL_RETURN_IF_ERROR(ApplySetting(config, base.sweep.key, value));
  RISFEEL_RETURN_IF_ERROR(ValidateConfig(config));
  return config;
}

ExperimentConfig ErrorFreeReference(const ExperimentConfig& base) {
  ExperimentConfig config = base;
  config.sweep = {};
  config.mode = AggregationMode::kErrorFree;
  config.strategy = SelectionStrategy::kAll;
  config.optimizer = RisOptimizerKind::kNone;
  config.privacy_enabled = false;
  return config;
}

absl::StatusOr<std::vector<RunResult>> SweepExperiment(
    const ExperimentConfig& base) {
  RISFEEL_RETURN_IF_ERROR(ValidateConfig(base));
  std::vector<RunResult> results;
  if (base.sweep.key.empty()) {
    RISFEEL_ASSIGN_OR_RETURN(RunResult result, RunExperiment(base));
    results.push_back(std::move(result));
  } else {
    for (const std::string& value : base.sweep.values) {
      RISFEEL_ASSIGN_OR_RETURN(ExperimentConfig config,
                               ConfigForSweepValue(base, value));
      RISFEEL_ASSIGN_OR_RETURN(RunResult result, RunExperiment(config, value));
      results.push_back(std::move(result));
    }
  }
  if (base.sweep.reference == SweepReference::kErrorFree) {
    RISFEEL_ASSIGN_OR_RETURN(
        RunResult result,
        RunExperiment(ErrorFreeReference(base), kErrorFreeLabel));
    results.push_back(std::move(result));
  }
  return results;
}

absl::Status WriteSweepResults(const std::vector<RunResult>& results,
                               const ExperimentConfig& base,
                               const std::string& dir) {
  std::string combined = absl::StrCat(kTraceSchema, "\n", kTraceHeader, "\n");
  std::string combined_summary =
      absl::StrCat(kSummarySchema, "\n", kSummaryHeader, "\n");
  for (const RunResult& result : results) {
    const std::string sub = result.sweep_value.empty()
                                ? dir
                                : absl::StrCat(dir, "/", result.sweep_value);
    RISFEEL_RETURN_IF_ERROR(WriteRunResult(result, base, sub));
    for (const auto& trace : result.traces) {
      for (const RoundRecord& r : trace) {
        absl::StrAppend(&combined, FormatTraceRow(r), "\n");
      }
    }
    for (const SummaryRow& row : result.summary) {
      absl::StrAppend(&combined_summary, FormatSummaryRow(row), "\n");
    }
  }
  RISFEEL_RETURN_IF_ERROR(
      WriteTextFile(absl::StrCat(dir, "/combined.csv"), combined));
  return WriteTextFile(absl::StrCat(dir, "/combined_summary.csv"),
                       combined_summary);
}

absl::StatusOr<std::vector<RunResult>> Sweep(const ExperimentConfig& base) {
  RISFEEL_ASSIGN_OR_RETURN(std::vector<RunResult> results,
                           SweepExperiment(base));
  RISFEEL_RETURN_IF_ERROR(WriteSweepResults(results, base, base.output_dir));
  return results;
}

}  // namespace risfeel
