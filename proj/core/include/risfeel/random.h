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

#ifndef RISFEEL_RANDOM_H_
#define RISFEEL_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

#include "risfeel/linalg.h"

namespace risfeel {

// A seeded pseudo-random stream. All randomness in the simulator flows
// through instances of this class; nothing reads ambient entropy or time.
//
// Streams form a hierarchy: Fork() derives a child whose seed depends only on
// the parent's seed and the label, never on how many values the parent has
// already produced. Forking the same label twice yields identical children.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed);

  RandomStream Fork(std::string_view label) const;
  RandomStream Fork(uint64_t index) const;

  uint64_t seed() const { return seed_; }

  // Standard normal draw.
  double Normal();
  // Uniform draw on [0, 1).
  double Uniform();
  // Uniform integer on [0, n). Requires n >= 1.
  size_t UniformIndex(size_t n);
  // Gamma(shape, 1) draw. Requires shape > 0.
  double Gamma(double shape);
  // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  Complex ComplexGaussian(double variance);

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// SplitMix64 finalizer; exposed for tests of the seed-derivation scheme.
uint64_t MixSeed(uint64_t value);

}  // namespace risfeel

#endif  // RISFEEL_RANDOM_H_
