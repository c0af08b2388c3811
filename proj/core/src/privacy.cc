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

#include "risfeel/privacy.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/status_macros.h"

namespace risfeel {

double PrivacySpec::NoiseStd(int k) const {
  if (artificial_noise_std.empty()) return 0.0;
  if (artificial_noise_std.size() == 1) return artificial_noise_std[0];
  return artificial_noise_std[k];
}

absl::Status ValidatePrivacySpec(const PrivacySpec& spec) {
  if (!(spec.clip_norm > 0.0) || !std::isfinite(spec.clip_norm)) {
    return absl::InvalidArgumentError(
        absl::StrCat("clip_norm must be positive, got ", spec.clip_norm));
  }
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", spec.delta));
  }
  for (double s : spec.artificial_noise_std) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      return absl::InvalidArgumentError(
          absl::StrCat("artificial noise std must be >= 0, got ", s));
    }
  }
  return absl::OkStatus();
}

ModelVector ClipUpdate(const ModelVector& delta_k, double clip_norm) {
  const double norm = delta_k.norm();
  if (norm <= clip_norm) return delta_k;
  return delta_k * (clip_norm / norm);
}

absl::StatusOr<ModelVector> ApplyMechanism(const ModelVector& delta_k,
                                           const PrivacySpec& spec, int k,
                                           RandomStream& stream) {
  RISFEEL_RETURN_IF_ERROR(ValidatePrivacySpec(spec));
  if (spec.artificial_noise_std.size() > 1 &&
      (k < 0 || k >= static_cast<int>(spec.artificial_noise_std.size()))) {
    return absl::InvalidArgumentError(
        absl::StrCat("no artificial noise std for device ", k));
  }
  ModelVector out = ClipUpdate(delta_k, spec.clip_norm);
  const double std = spec.NoiseStd(k);
  if (std > 0.0) {
    for (Eigen::Index j = 0; j < out.size(); ++j)
      out[j] += std * stream.Normal();
  }
  return out;
}

absl::StatusOr<PrivacyReport> PrivacyProxy(const ComplexMatrix& h_eff,
                                           const TransmitPlan& plan,
                                           const PrivacySpec& spec,
                                           double noise_std) {
  RISFEEL_RETURN_IF_ERROR(ValidatePrivacySpec(spec));
  if (!(noise_std >= 0.0)) {
    return absl::InvalidArgumentError("noise_std must be >= 0");
  }
  if (plan.scaling.size() != plan.devices.size()) {
    return absl::InvalidArgumentError("plan scaling/device size mismatch");
  }
  const int num_devices = static_cast<int>(h_eff.rows());
  const int num_antennas = static_cast<int>(h_eff.cols());
  for (int k : plan.devices) {
    if (k < 0 || k >= num_devices) {
      return absl::InvalidArgumentError(
          absl::StrCat("plan device ", k, " out of range"));
    }
    if (spec.artificial_noise_std.size() > 1 &&
        k >= static_cast<int>(spec.artificial_noise_std.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("no artificial noise std for device ", k));
    }
  }
  const double mechanism =
      spec.clip_norm * std::sqrt(2.0 * std::log(1.25 / spec.delta));
  PrivacyReport report;
  report.epsilon_per_pair = Eigen::MatrixXd::Zero(num_devices, num_antennas);
  for (int m = 0; m < num_antennas; ++m) {
    double variance = noise_std * noise_std;
    for (size_t i = 0; i < plan.devices.size(); ++i) {
      const int k = plan.devices[i];
      const double amp = std::abs(h_eff(k, m) * plan.scaling[i]);
      const double s = spec.NoiseStd(k);
      variance += amp * amp * s * s;
    }
    const double sigma = std::sqrt(variance);
    for (size_t i = 0; i < plan.devices.size(); ++i) {
      const int k = plan.devices[i];
      const double amp = std::abs(h_eff(k, m) * plan.scaling[i]);
      double eps = 0.0;
      if (amp > 0.0) {
        eps = sigma > 0.0 ? amp * mechanism / sigma
                          : std::numeric_limits<double>::infinity();
      }
      report.epsilon_per_pair(k, m) = eps;
    }
  }
  report.system_epsilon = report.epsilon_per_pair.size() > 0
                              ? report.epsilon_per_pair.maxCoeff()
                              : 0.0;
  return report;
}

}  // namespace risfeel
