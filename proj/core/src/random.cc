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

#include "risfeel/random.h"

#include <cmath>

namespace risfeel {
namespace {

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;

uint64_t HashLabel(std::string_view label) {
  uint64_t h = kFnvOffset;
  for (unsigned char c : label) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

}  // namespace

uint64_t MixSeed(uint64_t value) {
  uint64_t z = value + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RandomStream::RandomStream(uint64_t seed)
    : seed_(seed), engine_(MixSeed(seed)) {}

RandomStream RandomStream::Fork(std::string_view label) const {
  return RandomStream(MixSeed(seed_ ^ HashLabel(label)));
}

RandomStream RandomStream::Fork(uint64_t index) const {
  return RandomStream(MixSeed(MixSeed(seed_) + index));
}

double RandomStream::Normal() { return normal_(engine_); }

double RandomStream::Uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

size_t RandomStream::UniformIndex(size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(engine_);
}

double RandomStream::Gamma(double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

Complex RandomStream::ComplexGaussian(double variance) {
  const double s = std::sqrt(variance / 2.0);
  const double re = s * Normal();
  const double im = s * Normal();
  return {re, im};
}

}  // namespace risfeel
