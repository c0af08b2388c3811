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

#ifndef RISFEEL_PRIVACY_H_
#define RISFEEL_PRIVACY_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "risfeel/aircomp.h"
#include "risfeel/linalg.h"
#include "risfeel/random.h"

namespace risfeel {

struct PrivacySpec {
  // Per-device artificial noise std; a single entry applies to every device.
  std::vector<double> artificial_noise_std;
  // L2 clipping bound on each local update (the sensitivity).
  double clip_norm = 1.0;
  double delta = 1e-5;

  // Noise std of device `k` (0 when no noise is configured).
  double NoiseStd(int k) const;
};

absl::Status ValidatePrivacySpec(const PrivacySpec& spec);

// Leakage proxy shaped like the Gaussian mechanism. This is a proxy score, not
// a formal differential-privacy guarantee.
struct PrivacyReport {
  // K x M; rows of unselected devices are zero.
  Eigen::MatrixXd epsilon_per_pair;
  // Max over pairs; +infinity when a pair carries signal with no noise.
  double system_epsilon = 0.0;
};

// delta_k * min(1, clip_norm / ||delta_k||).
ModelVector ClipUpdate(const ModelVector& delta_k, double clip_norm);

// Clips, then adds i.i.d. N(0, std^2) noise with the std of device `k`.
absl::StatusOr<ModelVector> ApplyMechanism(const ModelVector& delta_k,
                                           const PrivacySpec& spec, int k,
                                           RandomStream& stream);

// eps_{k,m} = |h_{k,m} b_k| clip sqrt(2 ln(1.25 / delta)) / sigma_m with
// sigma_m^2 = noise_std^2 + sum_j |h_{j,m} b_j|^2 std_j^2 over the plan's
// devices.
absl::StatusOr<PrivacyReport> PrivacyProxy(const ComplexMatrix& h_eff,
                                           const TransmitPlan& plan,
                                           const PrivacySpec& spec,
                                           double noise_std);

}  // namespace risfeel

#endif  // RISFEEL_PRIVACY_H_
