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

#ifndef RISFEEL_RIS_OPTIMIZER_H_
#define RISFEEL_RIS_OPTIMIZER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "risfeel/aircomp.h"
#include "risfeel/channel.h"
#include "risfeel/linalg.h"
#include "risfeel/random.h"

namespace risfeel {

// Phase alphabet {2 pi q / Q : q = 0..Q-1}, or the full unit circle when
// `levels` is 0.
struct PhaseCodebook {
  int levels = 8;

  static PhaseCodebook Discrete(int levels) { return {levels}; }
  static PhaseCodebook Continuous() { return {0}; }

  bool continuous() const { return levels == 0; }
  Complex Level(int q) const;
};

absl::Status ValidateCodebook(const PhaseCodebook& codebook);

struct OptimizerOptions {
  PhaseCodebook codebook;
  // Maximum number of full coordinate sweeps per restart.
  int max_sweeps = 100;
  // Restart 0 starts from all-ones phases, the others from random phases.
  int restarts = 5;
};

struct MseSolution {
  RisConfig theta;
  Beamformer beamformer;
  double objective = 0.0;
  double eta = 0.0;
  int best_restart = 0;
  // Objective after initialization and after every accepted iteration, one
  // trace per restart.
  std::vector<std::vector<double>> traces;
};

struct AlignmentResult {
  RisConfig theta;
  // Least-squares scale c for the returned theta.
  Complex scale{0.0, 0.0};
  // sum_k |h_k(theta) - c w_k|^2.
  double residual = 0.0;
  int best_restart = 0;
  std::vector<std::vector<double>> traces;
};

enum class PhaseObjective { kMse, kAlignment };

struct BruteForceResult {
  RisConfig theta;
  double value = 0.0;
  int64_t evaluations = 0;
};

// Dominant left singular direction of the M x |S| matrix whose columns are
// the selected rows of `h_eff`, phase-normalized so its largest entry is real
// and positive.
absl::StatusOr<Beamformer> DominantBeamformer(const ComplexMatrix& h_eff,
                                              std::span<const int> selected);

// Aggregation MSE of the channel-inversion plan at (theta, f).
absl::StatusOr<double> MseObjective(const ChannelRealization& real,
                                    const RisConfig& theta, const Beamformer& f,
                                    std::span<const int> selected,
                                    std::span<const DeviceProfile> profiles,
                                    double noise_std);

// min_c sum_k |h_k - c w_k|^2 for a single-antenna channel vector. Writes the
// minimizing c to `scale` when non-null.
double AlignmentResidual(const Eigen::Ref<const ComplexVector>& h,
                         std::span<const double> weights, Complex* scale);

// Alternating minimization of the aggregation MSE for a fixed device set:
// beamformer update (accepted only if it does not increase the objective)
// followed by a coordinate sweep over the RIS phases. When no single phase
// change improves, joint changes of 2, 3, ... elements are tried while the
// neighborhood has at most 2e5 points. Requires a discrete codebook and
// L >= 1.
absl::StatusOr<MseSolution> OptimizeMse(const ChannelRealization& real,
                                        std::span<const int> selected,
                                        std::span<const DeviceProfile> profiles,
                                        double noise_std,
                                        const OptimizerOptions& options,
                                        RandomStream& stream);

// CSIT-free design: chooses theta so that every device's channel is close to
// c * w_k. Requires a single receive antenna. `weights` has one entry per
// device of `real`. With a discrete codebook, restarts after the first begin
// from the rounded result of a continuous descent from random phases, and
// stalls are escaped with the same joint moves as OptimizeMse.
absl::StatusOr<AlignmentResult> OptimizeAlignmentCsitFree(
    const ChannelRealization& real, std::span<const double> weights,
    const OptimizerOptions& options, RandomStream& stream);

// Exhaustive search over all Q^L codebook configurations (at most 1e6).
// The MSE objective uses DominantBeamformer at every point; the alignment
// objective uses the selected devices' profile weights.
absl::StatusOr<BruteForceResult> BruteForcePhases(
    const ChannelRealization& real, std::span<const int> selected,
    std::span<const DeviceProfile> profiles, double noise_std, int levels,
    PhaseObjective objective);

// I.i.d. uniform phases from the codebook.
RisConfig RandomPhases(int num_elements, const PhaseCodebook& codebook,
                       RandomStream& stream);

}  // namespace risfeel

#endif  // RISFEEL_RIS_OPTIMIZER_H_
