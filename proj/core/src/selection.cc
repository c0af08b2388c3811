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

#include "risfeel/selection.h"

#include <algorithm>
#include <numeric>
#include <optional>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/status_macros.h"

namespace risfeel {

absl::StatusOr<SelectionSet> SelectionSet::Create(std::vector<int> indices,
                                                  int num_devices) {
  std::sort(indices.begin(), indices.end());
  for (size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] < 0 || indices[i] >= num_devices) {
      return absl::InvalidArgumentError(absl::StrCat(
          "device index ", indices[i], " out of range [0, ", num_devices, ")"));
    }
    if (i > 0 && indices[i] == indices[i - 1]) {
      return absl::InvalidArgumentError(
          absl::StrCat("device ", indices[i], " listed twice"));
    }
  }
  return SelectionSet(std::move(indices));
}

SelectionSet SelectionSet::All(int num_devices) {
  std::vector<int> all(num_devices);
  std::iota(all.begin(), all.end(), 0);
  return SelectionSet(std::move(all));
}

bool SelectionSet::contains(int k) const {
  return std::binary_search(indices_.begin(), indices_.end(), k);
}

std::vector<int> DescendingGainOrder(std::span<const double> gains) {
  std::vector<int> order(gains.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return gains[a] > gains[b]; });
  return order;
}

absl::StatusOr<SelectionSet> SelectDescendingGain(std::span<const double> gains,
                                                  int n) {
  const int num_devices = static_cast<int>(gains.size());
  if (n < 1 || n > num_devices) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot select ", n, " of ", num_devices, " devices"));
  }
  std::vector<int> order = DescendingGainOrder(gains);
  order.resize(n);
  return SelectionSet::Create(std::move(order), num_devices);
}

double SelectionLoss(const SelectionSet& selected,
                     std::span<const DeviceProfile> profiles) {
  double total = 0.0;
  double excluded = 0.0;
  for (int k = 0; k < static_cast<int>(profiles.size()); ++k) {
    total += profiles[k].data_size;
    if (!selected.contains(k)) excluded += profiles[k].data_size;
  }
  if (total <= 0.0) return 0.0;
  const double fraction = excluded / total;
  return fraction * fraction;
}

absl::StatusOr<CodesignObjective> EvaluateObjective(
    const SelectionSet& selected, const ChannelRealization& real,
    const RisConfig& theta, const Beamformer& f,
    std::span<const DeviceProfile> profiles, double noise_std, double lambda,
    double comm_scale) {
  if (selected.empty()) {
    return absl::InvalidArgumentError("selected device set is empty");
  }
  if (!(lambda >= 0.0) || !(comm_scale > 0.0)) {
    return absl::InvalidArgumentError("lambda must be >= 0 and comm_scale > 0");
  }
  RISFEEL_ASSIGN_OR_RETURN(
      double mse,
      MseObjective(real, theta, f, selected.indices(), profiles, noise_std));
  CodesignObjective obj;
  obj.selection_loss = SelectionLoss(selected, profiles);
  obj.comm_loss = mse / comm_scale;
  obj.lambda = lambda;
  obj.total = obj.selection_loss + lambda * obj.comm_loss;
  return obj;
}

absl::StatusOr<double> ReferenceCommLoss(
    const ChannelRealization& real, std::span<const DeviceProfile> profiles,
    double noise_std) {
  const std::vector<double> gains = RowGains(real.direct);
  const int best = DescendingGainOrder(gains).front();
  const std::vector<int> single = {best};
  RISFEEL_ASSIGN_OR_RETURN(Beamformer f,
                           DominantBeamformer(real.direct, single));
  RISFEEL_ASSIGN_OR_RETURN(TransmitPlan plan,
                           PlanTransmissions(real.direct, single, profiles, f));
  return AnalyticMse(plan, f, noise_std);
}

absl::StatusOr<MseSolution> OptimizeForSet(
    const ChannelRealization& real, const SelectionSet& selected,
    std::span<const DeviceProfile> profiles, double noise_std,
    const OptimizerOptions& options, RandomStream& stream) {
  if (real.num_elements() > 0) {
    return OptimizeMse(real, selected.indices(), profiles, noise_std, options,
                       stream);
  }
  MseSolution solution;
  solution.theta = RisConfig::AllOnes(0);
  RISFEEL_ASSIGN_OR_RETURN(solution.beamformer,
                           DominantBeamformer(real.direct, selected.indices()));
  RISFEEL_ASSIGN_OR_RETURN(
      solution.objective,
      MseObjective(real, solution.theta, solution.beamformer,
                   selected.indices(), profiles, noise_std));
  solution.traces.push_back({solution.objective});
  return solution;
}

absl::StatusOr<CodesignResult> GreedyCodesign(
    const ChannelRealization& real, std::span<const DeviceProfile> profiles,
    double noise_std, double lambda, const OptimizerOptions& options,
    RandomStream& stream) {
  const int num_devices = real.num_devices();
  if (num_devices < 1) {
    return absl::InvalidArgumentError("no devices to select from");
  }
  RISFEEL_ASSIGN_OR_RETURN(double reference,
                           ReferenceCommLoss(real, profiles, noise_std));
  const double comm_scale = reference > 0.0 ? reference : 1.0;

  RISFEEL_ASSIGN_OR_RETURN(
      ComplexMatrix initial,
      EffectiveChannel(real, RisConfig::AllOnes(real.num_elements())));
  // Candidates are scanned in descending gain order, so ties go to the
  // stronger device.
  const std::vector<int> order = DescendingGainOrder(RowGains(initial));

  auto evaluate = [&](std::vector<int> members,
                      uint64_t label) -> absl::StatusOr<CodesignResult> {
    CodesignResult result;
    RISFEEL_ASSIGN_OR_RETURN(
        result.selected, SelectionSet::Create(std::move(members), num_devices));
    RandomStream child = stream.Fork(label);
    RISFEEL_ASSIGN_OR_RETURN(MseSolution solution,
                             OptimizeForSet(real, result.selected, profiles,
                                            noise_std, options, child));
    result.theta = std::move(solution.theta);
    result.beamformer = std::move(solution.beamformer);
    RISFEEL_ASSIGN_OR_RETURN(
        result.objective, EvaluateObjective(result.selected, real, result.theta,
                                            result.beamformer, profiles,
                                            noise_std, lambda, comm_scale));
    return result;
  };

  std::vector<int> members;
  std::vector<bool> used(num_devices, false);
  std::optional<CodesignResult> incumbent;
  for (int step = 0; step < num_devices; ++step) {
    std::optional<CodesignResult> step_best;
    int pick = -1;
    for (int k : order) {
      if (used[k]) continue;
      std::vector<int> trial = members;
      trial.push_back(k);
      RISFEEL_ASSIGN_OR_RETURN(
          CodesignResult candidate,
          evaluate(std::move(trial),
                   static_cast<uint64_t>(step) * num_devices + k));
      if (!step_best ||
          candidate.objective.total < step_best->objective.total) {
        step_best = std::move(candidate);
        pick = k;
      }
    }
    used[pick] = true;
    members.push_back(pick);
    if (!incumbent || step_best->objective.total < incumbent->objective.total) {
      incumbent = std::move(step_best);
    }
  }
  return *std::move(incumbent);
}

}  // namespace risfeel
