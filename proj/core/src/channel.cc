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

#include "risfeel/channel.h"

#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "risfeel/status_macros.h"

namespace risfeel {
namespace {

absl::Status ValidateLink(const LinkModel& link, const char* name) {
  switch (link.kind) {
    case LinkModel::Kind::kRayleigh:
    case LinkModel::Kind::kRician:
      if (!(link.variance > 0.0) || !std::isfinite(link.variance)) {
        return absl::InvalidArgumentError(
            absl::StrCat(name, " link variance must be positive"));
      }
      if (link.kind == LinkModel::Kind::kRician &&
          (!(link.k_factor >= 0.0) || !std::isfinite(link.k_factor))) {
        return absl::InvalidArgumentError(
            absl::StrCat(name, " link Rician k-factor must be >= 0"));
      }
      return absl::OkStatus();
    case LinkModel::Kind::kFixed:
      if (link.fixed_values.empty()) {
        return absl::InvalidArgumentError(
            absl::StrCat(name, " link fixed model needs at least one value"));
      }
      for (const Complex& v : link.fixed_values) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
          return absl::InvalidArgumentError(
              absl::StrCat(name, " link fixed values must be finite"));
        }
      }
      return absl::OkStatus();
  }
  return absl::InvalidArgumentError("unknown link model");
}

absl::StatusOr<ComplexMatrix> DrawLink(const LinkModel& link, int rows,
                                       int cols, const char* name,
                                       RandomStream& stream) {
  ComplexMatrix out(rows, cols);
  const int64_t entries = static_cast<int64_t>(rows) * cols;
  if (link.kind == LinkModel::Kind::kFixed) {
    const auto n = static_cast<int64_t>(link.fixed_values.size());
    if (n != 1 && n != entries) {
      return absl::InvalidArgumentError(
          absl::StrCat(name, " link fixed model has ", n,
                       " values; expected 1 or ", entries));
    }
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        out(r, c) = n == 1
                        ? link.fixed_values[0]
                        : link.fixed_values[static_cast<size_t>(r) * cols + c];
      }
    }
    return out;
  }
  const bool rician = link.kind == LinkModel::Kind::kRician;
  const double los_amp =
      rician ? std::sqrt(link.variance * link.k_factor / (link.k_factor + 1.0))
             : 0.0;
  const double scatter_var =
      rician ? link.variance / (link.k_factor + 1.0) : link.variance;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Complex h = stream.ComplexGaussian(scatter_var);
      if (rician) {
        // Line-of-sight component with a uniformly random phase per entry.
        const double phase = 2.0 * M_PI * stream.Uniform();
        h += std::polar(los_amp, phase);
      }
      out(r, c) = h;
    }
  }
  return out;
}

double Distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

LinkModel LinkModel::Rayleigh(double variance) {
  LinkModel m;
  m.kind = Kind::kRayleigh;
  m.variance = variance;
  return m;
}

LinkModel LinkModel::Rician(double k_factor, double variance) {
  LinkModel m;
  m.kind = Kind::kRician;
  m.k_factor = k_factor;
  m.variance = variance;
  return m;
}

LinkModel LinkModel::Fixed(std::vector<Complex> values) {
  LinkModel m;
  m.kind = Kind::kFixed;
  m.fixed_values = std::move(values);
  return m;
}

double PathLoss::AmplitudeAt(double distance) const {
  return std::sqrt(reference_gain *
                   std::pow(distance / reference_distance, -exponent));
}

absl::StatusOr<RisConfig> RisConfig::Create(ComplexVector phases) {
  for (Eigen::Index l = 0; l < phases.size(); ++l) {
    const double modulus = std::abs(phases[l]);
    if (!(std::abs(modulus - 1.0) <= kUnitTolerance)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "RIS phase ", l, " has modulus ", modulus, "; expected 1"));
    }
  }
  return RisConfig(std::move(phases));
}

RisConfig RisConfig::AllOnes(int num_elements) {
  return RisConfig(ComplexVector::Ones(num_elements));
}

absl::Status ValidateFadingSpec(const FadingSpec& spec, int num_devices) {
  RISFEEL_RETURN_IF_ERROR(ValidateLink(spec.direct, "direct"));
  RISFEEL_RETURN_IF_ERROR(ValidateLink(spec.ris_link, "RIS"));
  if (spec.path_loss.has_value()) {
    const PathLoss& pl = *spec.path_loss;
    if (!(pl.exponent >= 0.0)) {
      return absl::InvalidArgumentError("path-loss exponent must be >= 0");
    }
    if (!(pl.reference_distance > 0.0) || !(pl.reference_gain > 0.0)) {
      return absl::InvalidArgumentError(
          "path-loss reference distance and gain must be positive");
    }
    if (!spec.geometry.has_value()) {
      return absl::InvalidArgumentError("path loss requires a geometry");
    }
    if (static_cast<int>(spec.geometry->devices.size()) != num_devices) {
      return absl::InvalidArgumentError(
          absl::StrCat("geometry lists ", spec.geometry->devices.size(),
                       " device positions; expected ", num_devices));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<ChannelRealization> SampleChannels(const FadingSpec& spec,
                                                  int num_devices,
                                                  int num_antennas,
                                                  int num_elements,
                                                  RandomStream& stream) {
  if (num_devices < 1 || num_antennas < 1 || num_elements < 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid channel dimensions K=", num_devices,
                     " M=", num_antennas, " L=", num_elements));
  }
  RISFEEL_RETURN_IF_ERROR(ValidateFadingSpec(spec, num_devices));

  ChannelRealization real;
  RISFEEL_ASSIGN_OR_RETURN(
      real.direct,
      DrawLink(spec.direct, num_devices, num_antennas, "direct", stream));
  if (num_elements > 0) {
    RISFEEL_ASSIGN_OR_RETURN(real.device_to_ris,
                             DrawLink(spec.ris_link, num_devices, num_elements,
                                      "device-to-RIS", stream));
    RISFEEL_ASSIGN_OR_RETURN(real.ris_to_server,
                             DrawLink(spec.ris_link, num_antennas, num_elements,
                                      "RIS-to-server", stream));
  } else {
    real.device_to_ris.resize(num_devices, 0);
    real.ris_to_server.resize(num_antennas, 0);
  }

  if (spec.path_loss.has_value()) {
    const PathLoss& pl = *spec.path_loss;
    const Geometry& geo = *spec.geometry;
    const double ris_server = Distance(geo.ris, geo.server);
    for (int k = 0; k < num_devices; ++k) {
      const double d_direct = Distance(geo.devices[k], geo.server);
      const double d_ris = Distance(geo.devices[k], geo.ris);
      if (!(d_direct > 0.0) || (num_elements > 0 && !(d_ris > 0.0))) {
        return absl::InvalidArgumentError(
            absl::StrCat("device ", k, " is co-located with a link endpoint"));
      }
      real.direct.row(k) *= pl.AmplitudeAt(d_direct);
      if (num_elements > 0) real.device_to_ris.row(k) *= pl.AmplitudeAt(d_ris);
    }
    if (num_elements > 0) {
      if (!(ris_server > 0.0)) {
        return absl::InvalidArgumentError("RIS is co-located with the server");
      }
      real.ris_to_server *= pl.AmplitudeAt(ris_server);
    }
  }
  return real;
}

absl::StatusOr<ComplexMatrix> EffectiveChannel(const ChannelRealization& real,
                                               const RisConfig& theta) {
  if (theta.size() != real.num_elements()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "RIS config has ", theta.size(), " phases; realization has ",
        real.num_elements(), " elements"));
  }
  if (real.num_elements() == 0) return real.direct;
  // (A diag(theta)) G^T: entry (k, m) = sum_l G(m, l) theta_l A(k, l).
  return real.direct + (real.device_to_ris * theta.phases().asDiagonal()) *
                           real.ris_to_server.transpose();
}

double ChannelGain(const Eigen::Ref<const ComplexVector>& h) {
  return h.squaredNorm();
}

std::vector<double> RowGains(const ComplexMatrix& h_eff) {
  std::vector<double> gains(h_eff.rows());
  for (Eigen::Index k = 0; k < h_eff.rows(); ++k) {
    gains[k] = h_eff.row(k).squaredNorm();
  }
  return gains;
}

ChannelRealization RestrictToDevices(const ChannelRealization& real,
                                     std::span<const int> devices) {
  ChannelRealization out;
  const auto n = static_cast<Eigen::Index>(devices.size());
  out.direct.resize(n, real.direct.cols());
  out.device_to_ris.resize(n, real.device_to_ris.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    out.direct.row(i) = real.direct.row(devices[i]);
    out.device_to_ris.row(i) = real.device_to_ris.row(devices[i]);
  }
  out.ris_to_server = real.ris_to_server;
  out.block_index = real.block_index;
  return out;
}

}  // namespace risfeel
