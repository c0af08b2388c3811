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

#ifndef RISFEEL_CHANNEL_H_
#define RISFEEL_CHANNEL_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "risfeel/linalg.h"
#include "risfeel/random.h"

namespace risfeel {

// Fading law for one family of links (direct, or the two RIS hops).
struct LinkModel {
  enum class Kind { kRayleigh, kRician, kFixed };

  Kind kind = Kind::kRayleigh;
  // Mean power E|h|^2 of each coefficient.
  double variance = 1.0;
  // Ratio of line-of-sight to scattered power (Rician only).
  double k_factor = 0.0;
  // kFixed: either a single value broadcast to every entry, or one value per
  // entry in row-major order.
  std::vector<Complex> fixed_values;

  static LinkModel Rayleigh(double variance = 1.0);
  static LinkModel Rician(double k_factor, double variance = 1.0);
  static LinkModel Fixed(std::vector<Complex> values);
};

struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Log-distance amplitude scaling sqrt(reference_gain * (d / d0)^-exponent).
struct PathLoss {
  double exponent = 2.0;
  double reference_distance = 1.0;
  double reference_gain = 1.0;

  double AmplitudeAt(double distance) const;
};

struct Geometry {
  std::vector<Position> devices;
  Position ris;
  Position server;
};

struct FadingSpec {
  LinkModel direct = LinkModel::Rayleigh(1.0);
  LinkModel ris_link = LinkModel::Rician(10.0, 1.0);
  std::optional<PathLoss> path_loss;
  std::optional<Geometry> geometry;
};

// All channel coefficients of one coherence block.
//   direct(k, m):        device k -> server antenna m
//   device_to_ris(k, l): device k -> RIS element l
//   ris_to_server(m, l): RIS element l -> server antenna m
struct ChannelRealization {
  ComplexMatrix direct;
  ComplexMatrix device_to_ris;
  ComplexMatrix ris_to_server;
  int block_index = 0;

  int num_devices() const { return static_cast<int>(direct.rows()); }
  int num_antennas() const { return static_cast<int>(direct.cols()); }
  int num_elements() const { return static_cast<int>(device_to_ris.cols()); }
};

// Unit-modulus RIS phase-shift vector.
class RisConfig {
 public:
  static constexpr double kUnitTolerance = 1e-12;

  // Fails unless every entry has modulus 1 within kUnitTolerance.
  static absl::StatusOr<RisConfig> Create(ComplexVector phases);
  static RisConfig AllOnes(int num_elements);

  RisConfig() = default;

  const ComplexVector& phases() const { return phases_; }
  int size() const { return static_cast<int>(phases_.size()); }
  Complex operator[](int l) const { return phases_[l]; }

 private:
  explicit RisConfig(ComplexVector phases) : phases_(std::move(phases)) {}

  ComplexVector phases_;
};

absl::Status ValidateFadingSpec(const FadingSpec& spec, int num_devices);

// Draws one realization. Direct links first, then device-to-RIS, then
// RIS-to-server, each in row-major order.
absl::StatusOr<ChannelRealization> SampleChannels(const FadingSpec& spec,
                                                  int num_devices,
                                                  int num_antennas,
                                                  int num_elements,
                                                  RandomStream& stream);

// K x M matrix whose row k is h_d,k + G diag(theta) a_k.
absl::StatusOr<ComplexMatrix> EffectiveChannel(const ChannelRealization& real,
                                               const RisConfig& theta);

// Squared Euclidean norm.
double ChannelGain(const Eigen::Ref<const ComplexVector>& h);

// Per-device gains of the rows of an effective channel matrix.
std::vector<double> RowGains(const ComplexMatrix& h_eff);

// Keeps only the listed devices (in the given order).
ChannelRealization RestrictToDevices(const ChannelRealization& real,
                                     std::span<const int> devices);

}  // namespace risfeel

#endif  // RISFEEL_CHANNEL_H_
