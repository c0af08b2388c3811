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
#include <vector>

#include "gtest/gtest.h"
#include "test_util.h"

namespace risfeel {
namespace {

using ::risfeel::test::GaussianRealization;

TEST(SampleChannelsTest, FixedModelPassesValuesThrough) {
  FadingSpec spec;
  spec.direct = LinkModel::Fixed({Complex(1.0, 0.0)});
  RandomStream stream(1);
  ASSERT_OK_AND_ASSIGN(ChannelRealization real,
                       SampleChannels(spec, 2, 1, 0, stream));
  ASSERT_EQ(real.direct.rows(), 2);
  ASSERT_EQ(real.direct.cols(), 1);
  EXPECT_EQ(real.direct(0, 0), Complex(1.0, 0.0));
  EXPECT_EQ(real.direct(1, 0), Complex(1.0, 0.0));
  EXPECT_EQ(real.num_elements(), 0);
  EXPECT_EQ(real.device_to_ris.rows(), 2);
  EXPECT_EQ(real.ris_to_server.rows(), 1);
}

TEST(SampleChannelsTest, FixedModelPerEntryValuesAreRowMajor) {
  FadingSpec spec;
  spec.direct = LinkModel::Fixed({{1, 0}, {2, 0}, {3, 0}, {4, 0}});
  RandomStream stream(1);
  ASSERT_OK_AND_ASSIGN(ChannelRealization real,
                       SampleChannels(spec, 2, 2, 0, stream));
  EXPECT_EQ(real.direct(0, 1), Complex(2, 0));
  EXPECT_EQ(real.direct(1, 0), Complex(3, 0));
}

TEST(SampleChannelsTest, RayleighEntryPowerWithinThreeStandardErrors) {
  FadingSpec spec;
  spec.direct = LinkModel::Rayleigh(1.0);
  RandomStream stream(2024);
  const int draws = 100000;
  const int k = 20;
  std::vector<double> sum(k, 0.0), sum_sq(k, 0.0);
  for (int t = 0; t < draws; ++t) {
    ASSERT_OK_AND_ASSIGN(ChannelRealization real,
                         SampleChannels(spec, k, 1, 0, stream));
    for (int i = 0; i < k; ++i) {
      const double p = std::norm(real.direct(i, 0));
      sum[i] += p;
      sum_sq[i] += p * p;
    }
  }
  for (int i = 0; i < k; ++i) {
    const double mean = sum[i] / draws;
    const double var = sum_sq[i] / draws - mean * mean;
    const double se = std::sqrt(var / draws);
    EXPECT_LE(std::abs(mean - 1.0), 3.0 * se) << "device " << i;
  }
}

TEST(SampleChannelsTest, RicianMeanPowerMatchesVariance) {
  FadingSpec spec;
  spec.direct = LinkModel::Rician(10.0, 2.0);
  RandomStream stream(9);
  ASSERT_OK_AND_ASSIGN(ChannelRealization real,
                       SampleChannels(spec, 20000, 1, 0, stream));
  EXPECT_NEAR(real.direct.squaredNorm() / 20000, 2.0, 0.03);
}

TEST(SampleChannelsTest, PathLossHalvesAmplitudeAtDoubleDistance) {
  PathLoss pl{2.0, 10.0, 1.0};
  EXPECT_NEAR(pl.AmplitudeAt(20.0) / pl.AmplitudeAt(10.0), 0.5, 1e-15);

  FadingSpec spec;
  spec.direct = LinkModel::Fixed({Complex(1.0, 0.0)});
  spec.path_loss = pl;
  spec.geometry = Geometry{{{10, 0, 0}, {20, 0, 0}}, {0, 5, 0}, {0, 0, 0}};
  RandomStream stream(1);
  ASSERT_OK_AND_ASSIGN(ChannelRealization real,
                       SampleChannels(spec, 2, 1, 0, stream));
  EXPECT_NEAR(std::abs(real.direct(1, 0)) / std::abs(real.direct(0, 0)), 0.5,
              1e-15);
}

TEST(SampleChannelsTest, IdenticalSeedsGiveBitIdenticalRealizations) {
  FadingSpec spec;
  RandomStream a(11), b(11);
  ASSERT_OK_AND_ASSIGN(ChannelRealization ra, SampleChannels(spec, 5, 3, 8, a));
  ASSERT_OK_AND_ASSIGN(ChannelRealization rb, SampleChannels(spec, 5, 3, 8, b));
  EXPECT_EQ(ra.direct, rb.direct);
  EXPECT_EQ(ra.device_to_ris, rb.device_to_ris);
  EXPECT_EQ(ra.ris_to_server, rb.ris_to_server);
}

TEST(SampleChannelsTest, RejectsInvalidSpecs) {
  RandomStream stream(1);
  FadingSpec spec;
  spec.direct = LinkModel::Rayleigh(0.0);
  EXPECT_EQ(SampleChannels(spec, 2, 1, 0, stream).status().code(),
            absl::StatusCode::kInvalidArgument);
  spec.direct = LinkModel::Rician(-1.0, 1.0);
  EXPECT_FALSE(SampleChannels(spec, 2, 1, 0, stream).ok());
  spec.direct = LinkModel::Rayleigh(1.0);
  spec.path_loss = PathLoss{-1.0, 1.0, 1.0};
  spec.geometry = Geometry{{{1, 0, 0}, {2, 0, 0}}, {}, {}};
  EXPECT_FALSE(SampleChannels(spec, 2, 1, 0, stream).ok());
  spec.path_loss = PathLoss{};
  spec.geometry.reset();
  EXPECT_FALSE(SampleChannels(spec, 2, 1, 0, stream).ok());
  EXPECT_FALSE(SampleChannels(FadingSpec{}, 0, 1, 0, stream).ok());
}

TEST(EffectiveChannelTest, NoRisReturnsDirect) {
  RandomStream stream(3);
  ChannelRealization real = GaussianRealization(4, 2, 0, stream);
  ASSERT_OK_AND_ASSIGN(ComplexMatrix h,
                       EffectiveChannel(real, RisConfig::AllOnes(0)));
  EXPECT_EQ(h, real.direct);
}

TEST(EffectiveChannelTest, SingleElementHandComputed) {
  ChannelRealization real;
  real.direct = ComplexMatrix::Constant(1, 1, Complex(1, 0));
  real.ris_to_server = ComplexMatrix::Constant(1, 1, Complex(0.5, 0));
  real.device_to_ris = ComplexMatrix::Constant(1, 1, Complex(0, 2));
  ASSERT_OK_AND_ASSIGN(ComplexMatrix h,
                       EffectiveChannel(real, RisConfig::AllOnes(1)));
  EXPECT_EQ(h(0, 0), Complex(1, 1));
}

TEST(EffectiveChannelTest, MatchesNaiveTripleLoop) {
  RandomStream stream(4);
  ChannelRealization real = GaussianRealization(5, 3, 8, stream);
  ComplexVector phases(8);
  for (int l = 0; l < 8; ++l) phases[l] = std::polar(1.0, 0.7 * l + 0.1);
  ASSERT_OK_AND_ASSIGN(RisConfig theta, RisConfig::Create(phases));
  ASSERT_OK_AND_ASSIGN(ComplexMatrix h, EffectiveChannel(real, theta));
  for (int k = 0; k < 5; ++k) {
    for (int m = 0; m < 3; ++m) {
      Complex expected = real.direct(k, m);
      for (int l = 0; l < 8; ++l) {
        expected +=
            real.ris_to_server(m, l) * phases[l] * real.device_to_ris(k, l);
      }
      EXPECT_LE(std::abs(h(k, m) - expected), 1e-12);
    }
  }
}

TEST(EffectiveChannelTest, AffineInEachPhase) {
  RandomStream stream(5);
  ChannelRealization real = GaussianRealization(3, 2, 4, stream);
  ComplexVector base(4);
  for (int l = 0; l < 4; ++l) base[l] = std::polar(1.0, 0.3 * l);
  for (int l = 0; l < 4; ++l) {
    // Three collinear points theta_l = p0 + t (p1 - p0), t in {0, 1, 2}. The
    // middle value has modulus != 1, so compose directly.
    auto eval = [&](Complex value) {
      ComplexVector phases = base;
      phases[l] = value;
      ComplexMatrix out = real.direct;
      for (int k = 0; k < 3; ++k) {
        for (int m = 0; m < 2; ++m) {
          for (int j = 0; j < 4; ++j) {
            out(k, m) +=
                real.ris_to_server(m, j) * phases[j] * real.device_to_ris(k, j);
          }
        }
      }
      return out;
    };
    const Complex p0 = std::polar(1.0, 0.2), p1 = std::polar(1.0, 2.0);
    ComplexVector a = base, b = base;
    a[l] = p0;
    b[l] = p1;
    ASSERT_OK_AND_ASSIGN(RisConfig ta, RisConfig::Create(a));
    ASSERT_OK_AND_ASSIGN(RisConfig tb, RisConfig::Create(b));
    ASSERT_OK_AND_ASSIGN(ComplexMatrix ha, EffectiveChannel(real, ta));
    ASSERT_OK_AND_ASSIGN(ComplexMatrix hb, EffectiveChannel(real, tb));
    EXPECT_LE((ha - eval(p0)).norm(), 1e-12);
    const ComplexMatrix h2 = eval(p0 + 2.0 * (p1 - p0));
    EXPECT_LE((h2 - (ha + 2.0 * (hb - ha))).norm(), 1e-12);
  }
}

TEST(EffectiveChannelTest, ConjugationSymmetry) {
  RandomStream stream(6);
  ChannelRealization real = GaussianRealization(4, 2, 6, stream);
  ComplexVector phases(6);
  for (int l = 0; l < 6; ++l) phases[l] = std::polar(1.0, 1.1 * l);
  ChannelRealization conj = real;
  conj.direct = real.direct.conjugate();
  conj.device_to_ris = real.device_to_ris.conjugate();
  conj.ris_to_server = real.ris_to_server.conjugate();
  ASSERT_OK_AND_ASSIGN(RisConfig theta, RisConfig::Create(phases));
  ASSERT_OK_AND_ASSIGN(RisConfig theta_conj,
                       RisConfig::Create(phases.conjugate()));
  ASSERT_OK_AND_ASSIGN(ComplexMatrix h, EffectiveChannel(real, theta));
  ASSERT_OK_AND_ASSIGN(ComplexMatrix hc, EffectiveChannel(conj, theta_conj));
  EXPECT_LE((hc - h.conjugate()).norm(), 1e-12);
}

TEST(EffectiveChannelTest, DimensionMismatchIsAnError) {
  RandomStream stream(7);
  ChannelRealization real = GaussianRealization(2, 1, 3, stream);
  EXPECT_EQ(EffectiveChannel(real, RisConfig::AllOnes(2)).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(RisConfigTest, RejectsNonUnitPhases) {
  ComplexVector v(2);
  v << Complex(1, 0), Complex(1.0 + 1e-9, 0);
  EXPECT_FALSE(RisConfig::Create(v).ok());
  v[1] = std::polar(1.0, 0.5);
  EXPECT_TRUE(RisConfig::Create(v).ok());
}

TEST(ChannelGainTest, HandValues) {
  ComplexVector a(1);
  a << Complex(3, 4);
  EXPECT_DOUBLE_EQ(ChannelGain(a), 25.0);
  ComplexVector b(2);
  b << Complex(1, 0), Complex(0, 1);
  EXPECT_DOUBLE_EQ(ChannelGain(b), 2.0);
}

TEST(ChannelGainTest, MatchesElementwiseSummation) {
  RandomStream stream(8);
  for (int t = 0; t < 50; ++t) {
    ComplexVector h(4);
    double expected = 0.0;
    for (int i = 0; i < 4; ++i) {
      h[i] = stream.ComplexGaussian(1.0);
      expected += h[i].real() * h[i].real() + h[i].imag() * h[i].imag();
    }
    EXPECT_NEAR(ChannelGain(h), expected, 1e-14);
    EXPECT_GE(ChannelGain(h), 0.0);
  }
  EXPECT_EQ(ChannelGain(ComplexVector::Zero(3)), 0.0);
}

TEST(RestrictToDevicesTest, KeepsRowsInOrder) {
  RandomStream stream(9);
  ChannelRealization real = GaussianRealization(4, 2, 3, stream);
  const std::vector<int> keep = {3, 1};
  ChannelRealization sub = RestrictToDevices(real, keep);
  EXPECT_EQ(sub.direct.row(0), real.direct.row(3));
  EXPECT_EQ(sub.device_to_ris.row(1), real.device_to_ris.row(1));
  EXPECT_EQ(sub.ris_to_server, real.ris_to_server);
}

}  // namespace
}  // namespace risfeel
