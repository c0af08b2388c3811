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

#ifndef RISFEEL_SELECTION_H_
#define RISFEEL_SELECTION_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "risfeel/aircomp.h"
#include "risfeel/channel.h"
#include "risfeel/random.h"
#include "risfeel/ris_optimizer.h"

namespace risfeel {

// Sorted, duplicate-free set of device indices below the device count.
class SelectionSet {
 public:
  static absl::StatusOr<SelectionSet> Create(std::vector<int> indices,
                                             int num_devices);
  static SelectionSet All(int num_devices);

  SelectionSet() = default;

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains(int k) const;

  friend bool operator==(const SelectionSet&, const SelectionSet&) = default;

 private:
  explicit SelectionSet(std::vector<int> indices)
      : indices_(std::move(indices)) {}

  std::vector<int> indices_;
};

// Device indices by descending gain; ties keep the lower index first.
std::vector<int> DescendingGainOrder(std::span<const double> gains);

// The n devices with the largest gains.
absl::StatusOr<SelectionSet> SelectDescendingGain(std::span<const double> gains,
                                                  int n);

// Surrogate co-design objective: total = selection_loss + lambda * comm_loss.
struct CodesignObjective {
  double selection_loss = 0.0;
  double comm_loss = 0.0;
  double lambda = 0.0;
  double total = 0.0;
};

// (sum of excluded data sizes / sum of all data sizes)^2.
double SelectionLoss(const SelectionSet& selected,
                     std::span<const DeviceProfile> profiles);

// comm_loss is the aggregation MSE divided by `comm_scale`.
absl::StatusOr<CodesignObjective> EvaluateObjective(
    const SelectionSet& selected, const ChannelRealization& real,
    const RisConfig& theta, const Beamformer& f,
    std::span<const DeviceProfile> profiles, double noise_std, double lambda,
    double comm_scale = 1.0);

// Aggregation MSE of the single best device on the direct link alone with a
// matched receiver. Used to put the communication loss on an O(1) scale.
absl::StatusOr<double> ReferenceCommLoss(
    const ChannelRealization& real, std::span<const DeviceProfile> profiles,
    double noise_std);

struct CodesignResult {
  SelectionSet selected;
  RisConfig theta;
  Beamformer beamformer;
  CodesignObjective objective;
};

// Best (theta, f) for a fixed set: OptimizeMse when the realization has RIS
// elements, otherwise the dominant beamformer with no RIS.
absl::StatusOr<MseSolution> OptimizeForSet(
    const ChannelRealization& real, const SelectionSet& selected,
    std::span<const DeviceProfile> profiles, double noise_std,
    const OptimizerOptions& options, RandomStream& stream);

// Forward greedy co-design. Starting from the empty set, every step tries
// adding each remaining device, re-optimizes (theta, f) for each candidate
// set, and keeps the candidate with the lowest total objective; candidates
// are scanned in descending gain order (gains at all-ones phases), so ties go
// to the stronger device. Returns the best set seen along the path, which
// runs from one device to all devices. The communication loss is scaled by
// ReferenceCommLoss.
absl::StatusOr<CodesignResult> GreedyCodesign(
    const ChannelRealization& real, std::span<const DeviceProfile> profiles,
    double noise_std, double lambda, const OptimizerOptions& options,
    RandomStream& stream);

}  // namespace risfeel

#endif  // RISFEEL_SELECTION_H_
