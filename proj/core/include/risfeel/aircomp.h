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

#ifndef RISFEEL_AIRCOMP_H_
#define RISFEEL_AIRCOMP_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "risfeel/linalg.h"
#include "risfeel/random.h"

namespace risfeel {

struct DeviceProfile {
  int data_size = 0;
  // Raw aggregation weight; normalized over the device population.
  double weight = 0.0;
  // Per-symbol transmit power limit.
  double power_budget = 1.0;
};

// Profiles with weight proportional to data size and a uniform power budget.
std::vector<DeviceProfile> DataSizeProfiles(std::span<const int> data_sizes,
                                            double power_budget);

// Receive combiner with unit Euclidean norm.
class Beamformer {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Fails unless ||coefficients|| = 1 within kNormTolerance.
  static absl::StatusOr<Beamformer> Create(ComplexVector coefficients);
  // Normalizes a nonzero direction.
  static absl::StatusOr<Beamformer> FromDirection(const ComplexVector& v);
  // First standard basis vector.
  static Beamformer Canonical(int num_antennas);

  Beamformer() = default;

  const ComplexVector& coefficients() const { return f_; }
  int size() const { return static_cast<int>(f_.size()); }

  // f^H h.
  Complex Combine(const Eigen::Ref<const ComplexVector>& h) const {
    return f_.dot(h);
  }

 private:
  explicit Beamformer(ComplexVector f) : f_(std::move(f)) {}

  ComplexVector f_;
};

// Transmit scalings and receiver normalization for one aggregation.
//
// Weights are normalized over the whole device population, so the noiseless
// estimate is sum_{k in S} w_k x_k and `selected_weight` = sum_{k in S} w_k.
// Dividing the estimate by `selected_weight` gives the federated average over
// the selected set. The transmitted signals b_k are the same under either
// normalization; only the receiver scale differs.
struct TransmitPlan {
  std::vector<int> devices;
  std::vector<double> weights;
  std::vector<Complex> scaling;
  // Common denoising factor; eta = |receive_scale|^2.
  double eta = 0.0;
  // Estimates are Re(f^H y / receive_scale).
  Complex receive_scale{0.0, 0.0};
  double selected_weight = 0.0;
};

struct AggregationReport {
  ModelVector estimate;
  // Mean over model entries of (estimate - sum_k w_k x_k)^2.
  double empirical_mse = 0.0;
  // Closed form: receiver noise plus artificial noise contribution.
  double analytic_mse = 0.0;
};

// Channel-inversion plan: b_k = sqrt(eta) w_k / (f^H h_k) with
// eta = min_k P_k |f^H h_k|^2 / w_k^2, so the binding device transmits at
// exactly its power budget. `h_eff` is K x M; `profiles` has K entries.
absl::StatusOr<TransmitPlan> PlanTransmissions(
    const ComplexMatrix& h_eff, std::span<const int> selected,
    std::span<const DeviceProfile> profiles, const Beamformer& f);

// CSIT-free plan for a single-antenna server: every device transmits at
// amplitude sqrt(P) and the receiver divides by scale * sqrt(P). Requires a
// common power budget across the selected devices.
absl::StatusOr<TransmitPlan> PlanCsitFree(
    std::span<const int> selected, std::span<const DeviceProfile> profiles,
    Complex scale);

// Multiplicative CSI error: returns h .* (1 + e), e ~ CN(0, error_std^2).
ComplexMatrix PerturbChannel(const ComplexMatrix& h_eff, double error_std,
                             RandomStream& stream);

// Superposes sum_k (f^H h_k) b_k (x_k + zeta_k) + f^H n per model entry and
// estimates Re(.) / receive_scale. Receiver noise is CN(0, noise_std^2) per
// antenna (noise_std / sqrt(2) per quadrature). `updates` and
// `artificial_noise_std` follow `plan.devices`; an empty
// `artificial_noise_std` means no artificial noise. Receiver noise is drawn
// from `stream` before any artificial noise.
absl::StatusOr<AggregationReport> TransmitAndAggregate(
    const TransmitPlan& plan, const ComplexMatrix& h_eff, const Beamformer& f,
    std::span<const ModelVector> updates, double noise_std,
    std::span<const double> artificial_noise_std, RandomStream& stream);

// Per-entry MSE of the real-part estimator: noise_std^2 ||f||^2 / (2 eta).
absl::StatusOr<double> AnalyticMse(const TransmitPlan& plan,
                                   const Beamformer& f, double noise_std);

// sum_i weights[i] * updates[i].
absl::StatusOr<ModelVector> WeightedSum(std::span<const ModelVector> updates,
                                        std::span<const double> weights);

}  // namespace risfeel

#endif  // RISFEEL_AIRCOMP_H_
