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

#include "risfeel/aircomp.h"

#include <cmath>
#include <limits>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace risfeel {
namespace {

constexpr double kDegenerateGain = 1e-12;

absl::Status CheckSelection(std::span<const int> selected, int num_devices) {
  if (selected.empty()) {
    return absl::InvalidArgumentError("selected device set is empty");
  }
  std::vector<bool> seen(num_devices, false);
  for (int k : selected) {
    if (k < 0 || k >= num_devices) {
      return absl::InvalidArgumentError(absl::StrCat(
          "device index ", k, " out of range [0, ", num_devices, ")"));
    }
    if (seen[k]) {
      return absl::InvalidArgumentError(
          absl::StrCat("device ", k, " selected twice"));
    }
    seen[k] = true;
  }
  return absl::OkStatus();
}

absl::StatusOr<double> TotalWeight(std::span<const DeviceProfile> profiles) {
  double total = 0.0;
  for (const DeviceProfile& p : profiles) {
    if (!(p.weight >= 0.0)) {
      return absl::InvalidArgumentError("aggregation weights must be >= 0");
    }
    if (!(p.power_budget > 0.0)) {
      return absl::InvalidArgumentError("power budgets must be positive");
    }
    total += p.weight;
  }
  if (!(total > 0.0)) {
    return absl::InvalidArgumentError("aggregation weights sum to zero");
  }
  return total;
}

}  // namespace

std::vector<DeviceProfile> DataSizeProfiles(std::span<const int> data_sizes,
                                            double power_budget) {
  std::vector<DeviceProfile> profiles;
  profiles.reserve(data_sizes.size());
  for (int d : data_sizes) {
    profiles.push_back({d, static_cast<double>(d), power_budget});
  }
  return profiles;
}

absl::StatusOr<Beamformer> Beamformer::Create(ComplexVector coefficients) {
  const double norm = coefficients.norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beamformer norm is ", norm, "; expected 1"));
  }
  return Beamformer(std::move(coefficients));
}

absl::StatusOr<Beamformer> Beamformer::FromDirection(const ComplexVector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    return absl::InvalidArgumentError("beamformer direction must be nonzero");
  }
  return Beamformer(v / norm);
}

Beamformer Beamformer::Canonical(int num_antennas) {
  ComplexVector f = ComplexVector::Zero(num_antennas);
  if (num_antennas > 0) f[0] = 1.0;
  return Beamformer(std::move(f));
}

absl::StatusOr<TransmitPlan> PlanTransmissions(
    const ComplexMatrix& h_eff, std::span<const int> selected,
    std::span<const DeviceProfile> profiles, const Beamformer& f) {
  const int num_devices = static_cast<int>(h_eff.rows());
  if (static_cast<int>(profiles.size()) != num_devices) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", profiles.size(), " profiles for ", num_devices, " devices"));
  }
  if (f.size() != h_eff.cols()) {
    return absl::InvalidArgumentError(absl::StrCat("beamformer has ", f.size(),
                                                   " taps; channel has ",
                                                   h_eff.cols(), " antennas"));
  }
  if (auto s = CheckSelection(selected, num_devices); !s.ok()) return s;
  auto total = TotalWeight(profiles);
  if (!total.ok()) return total.status();

  TransmitPlan plan;
  plan.devices.assign(selected.begin(), selected.end());
  std::vector<Complex> gains;
  double eta = std::numeric_limits<double>::infinity();
  for (int k : selected) {
    const double w = profiles[k].weight / *total;
    const Complex g = f.Combine(h_eff.row(k).transpose());
    if (w > 0.0 && !(std::abs(g) > kDegenerateGain)) {
      return absl::FailedPreconditionError(absl::StrCat(
          "device ", k,
          " has a degenerate effective channel |f^H h| = ", std::abs(g)));
    }
    plan.weights.push_back(w);
    plan.selected_weight += w;
    gains.push_back(g);
    if (w > 0.0) {
      eta = std::min(eta, profiles[k].power_budget * std::norm(g) / (w * w));
    }
  }
  if (!std::isfinite(eta)) {
    return absl::InvalidArgumentError("selected devices all have zero weight");
  }
  plan.eta = eta;
  plan.receive_scale = std::sqrt(eta);
  const double sqrt_eta = std::sqrt(eta);
  for (size_t i = 0; i < gains.size(); ++i) {
    plan.scaling.push_back(plan.weights[i] == 0.0
                               ? Complex(0.0, 0.0)
                               : sqrt_eta * plan.weights[i] / gains[i]);
  }
  return plan;
}

absl::StatusOr<TransmitPlan> PlanCsitFree(
    std::span<const int> selected, std::span<const DeviceProfile> profiles,
    Complex scale) {
  const int num_devices = static_cast<int>(profiles.size());
  if (auto s = CheckSelection(selected, num_devices); !s.ok()) return s;
  auto total = TotalWeight(profiles);
  if (!total.ok()) return total.status();
  if (!(std::abs(scale) > 0.0)) {
    return absl::FailedPreconditionError("CSIT-free alignment scale is zero");
  }
  const double power = profiles[selected[0]].power_budget;
  TransmitPlan plan;
  plan.devices.assign(selected.begin(), selected.end());
  for (int k : selected) {
    if (profiles[k].power_budget != power) {
      return absl::FailedPreconditionError(
          "CSIT-free transmission needs a common power budget");
    }
    const double w = profiles[k].weight / *total;
    plan.weights.push_back(w);
    plan.selected_weight += w;
    plan.scaling.push_back(std::sqrt(power));
  }
  plan.receive_scale = scale * std::sqrt(power);
  plan.eta = std::norm(plan.receive_scale);
  return plan;
}

ComplexMatrix PerturbChannel(const ComplexMatrix& h_eff, double error_std,
                             RandomStream& stream) {
  ComplexMatrix out = h_eff;
  if (error_std <= 0.0) return out;
  for (Eigen::Index k = 0; k < out.rows(); ++k) {
    for (Eigen::Index m = 0; m < out.cols(); ++m) {
      out(k, m) *= 1.0 + stream.ComplexGaussian(error_std * error_std);
    }
  }
  return out;
}

absl::StatusOr<AggregationReport> TransmitAndAggregate(
    const TransmitPlan& plan, const ComplexMatrix& h_eff, const Beamformer& f,
    std::span<const ModelVector> updates, double noise_std,
    std::span<const double> artificial_noise_std, RandomStream& stream) {
  const size_t n = plan.devices.size();
  if (updates.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "got ", updates.size(), " updates for ", n, " planned devices"));
  }
  if (!artificial_noise_std.empty() && artificial_noise_std.size() != n) {
    return absl::InvalidArgumentError(
        "artificial noise levels must match the planned devices");
  }
  if (f.size() != h_eff.cols()) {
    return absl::InvalidArgumentError("beamformer/channel antenna mismatch");
  }
  if (!(noise_std >= 0.0)) {
    return absl::InvalidArgumentError("noise_std must be >= 0");
  }
  if (!(std::abs(plan.receive_scale) > 0.0)) {
    return absl::InvalidArgumentError("plan has zero receive scale");
  }
  const Eigen::Index dim = n == 0 ? 0 : updates[0].size();
  for (const ModelVector& u : updates) {
    if (u.size() != dim) {
      return absl::InvalidArgumentError(
          absl::StrCat("update dimension ", u.size(), " != ", dim));
    }
  }
  for (int k : plan.devices) {
    if (k < 0 || k >= h_eff.rows()) {
      return absl::InvalidArgumentError("planned device outside channel");
    }
  }

  // End-to-end complex gain of each device after combining and scaling.
  std::vector<Complex> link(n);
  for (size_t i = 0; i < n; ++i) {
    link[i] = f.Combine(h_eff.row(plan.devices[i]).transpose()) *
              plan.scaling[i] / plan.receive_scale;
  }

  const Eigen::Index antennas = h_eff.cols();
  const double quad_std = noise_std / std::sqrt(2.0);
  const ComplexVector& fc = f.coefficients();
  std::vector<Complex> received(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    Complex combined_noise{0.0, 0.0};
    if (noise_std > 0.0) {
      for (Eigen::Index m = 0; m < antennas; ++m) {
        const double re = quad_std * stream.Normal();
        const double im = quad_std * stream.Normal();
        combined_noise += std::conj(fc[m]) * Complex(re, im);
      }
    }
    received[j] = combined_noise / plan.receive_scale;
  }
  for (size_t i = 0; i < n; ++i) {
    const double zeta_std =
        artificial_noise_std.empty() ? 0.0 : artificial_noise_std[i];
    if (!(zeta_std >= 0.0)) {
      return absl::InvalidArgumentError("artificial noise std must be >= 0");
    }
    const ModelVector& x = updates[i];
    for (Eigen::Index j = 0; j < dim; ++j) {
      const double zeta = zeta_std > 0.0 ? zeta_std * stream.Normal() : 0.0;
      received[j] += link[i] * (x[j] + zeta);
    }
  }

  AggregationReport report;
  report.estimate.resize(dim);
  double sq_err = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    double exact = 0.0;
    for (size_t i = 0; i < n; ++i) exact += plan.weights[i] * updates[i][j];
    report.estimate[j] = received[j].real();
    const double e = report.estimate[j] - exact;
    sq_err += e * e;
  }
  report.empirical_mse = dim > 0 ? sq_err / static_cast<double>(dim) : 0.0;

  double analytic = noise_std * noise_std * fc.squaredNorm() /
                    (2.0 * std::norm(plan.receive_scale));
  if (!artificial_noise_std.empty()) {
    for (size_t i = 0; i < n; ++i) {
      const double a = link[i].real() * artificial_noise_std[i];
      analytic += a * a;
    }
  }
  report.analytic_mse = analytic;
  return report;
}

absl::StatusOr<double> AnalyticMse(const TransmitPlan& plan,
                                   const Beamformer& f, double noise_std) {
  if (!(plan.eta > 0.0) || !std::isfinite(plan.eta)) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid plan: eta = ", plan.eta));
  }
  return noise_std * noise_std * f.coefficients().squaredNorm() /
         (2.0 * plan.eta);
}

absl::StatusOr<ModelVector> WeightedSum(std::span<const ModelVector> updates,
                                        std::span<const double> weights) {
  if (updates.size() != weights.size() || updates.empty()) {
    return absl::InvalidArgumentError(
        "weighted sum needs one weight per update and at least one update");
  }
  ModelVector out = ModelVector::Zero(updates[0].size());
  for (size_t i = 0; i < updates.size(); ++i) {
    if (updates[i].size() != out.size()) {
      return absl::InvalidArgumentError("update dimensions differ");
    }
    out += weights[i] * updates[i];
  }
  return out;
}

}  // namespace risfeel
