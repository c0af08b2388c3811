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

#include "risfeel/selection.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "risfeel/channel.h"
#include "risfeel/ris_optimizer.h"
#include "test_util.h"

namespace risfeel {
namespace {

using ::risfeel::test::EqualProfiles;
using ::risfeel::test::GaussianRealization;
using ::risfeel::test::Range;

std::vector<DeviceProfile> RandomProfiles(int k, RandomStream& stream) {
  std::vector<DeviceProfile> out;
  for (int i = 0; i < k; ++i) {
    const int size = 20 + static_cast<int>(stream.UniformIndex(180));
    out.push_back({size, static_cast<double>(size), 1.0});
  }
  return out;
}

OptimizerOptions SmallOptions() {
  OptimizerOptions o;
  o.codebook = PhaseCodebook::Discrete(8);
  o.max_sweeps = 50;
  o.restarts = 3;
  return o;
}

TEST(SelectionSetTest, CreateSortsAndValidates) {
  ASSERT_OK_AND_ASSIGN(SelectionSet s, SelectionSet::Create({3, 1, 2}, 5));
  EXPECT_EQ(s.indices(), (std::vector<int>{1, 2, 3}));
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(0));
  EXPECT_FALSE(SelectionSet::Create({1, 1}, 5).ok());
  EXPECT_FALSE(SelectionSet::Create({5}, 5).ok());
  EXPECT_FALSE(SelectionSet::Create({-1}, 5).ok());
  EXPECT_EQ(SelectionSet::All(3).indices(), (std::vector<int>{0, 1, 2}));
}

TEST(SelectDescendingGainTest, Examples) {
  const std::vector<double> gains = {3, 1, 2};
  ASSERT_OK_AND_ASSIGN(SelectionSet s, SelectDescendingGain(gains, 2));
  EXPECT_EQ(s.indices(), (std::vector<int>{0, 2}));

  const std::vector<double> equal(4, 1.0);
  ASSERT_OK_AND_ASSIGN(SelectionSet tie, SelectDescendingGain(equal, 2));
  EXPECT_EQ(tie.indices(), (std::vector<int>{0, 1}));

  RandomStream stream(40);
  std::vector<double> random(20);
  for (double& g : random) g = stream.Uniform();
  ASSERT_OK_AND_ASSIGN(SelectionSet all, SelectDescendingGain(random, 20));
  EXPECT_EQ(all, SelectionSet::All(20));

  EXPECT_FALSE(SelectDescendingGain(gains, 0).ok());
  EXPECT_FALSE(SelectDescendingGain(gains, 4).ok());
}

TEST(SelectDescendingGainTest, PermutationEquivariant) {
  RandomStream stream(41);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> gains(12);
    for (double& g : gains) g = stream.Uniform();
    std::vector<int> perm = Range(12);
    for (int i = 11; i > 0; --i) {
      std::swap(perm[i], perm[stream.UniformIndex(i + 1)]);
    }
    // permuted[i] is the gain of original device perm[i].
    std::vector<double> permuted(12);
    for (int i = 0; i < 12; ++i) permuted[i] = gains[perm[i]];
    const int n = 1 + static_cast<int>(stream.UniformIndex(12));
    ASSERT_OK_AND_ASSIGN(SelectionSet a, SelectDescendingGain(gains, n));
    ASSERT_OK_AND_ASSIGN(SelectionSet b, SelectDescendingGain(permuted, n));
    std::vector<int> mapped;
    for (int i : b.indices()) mapped.push_back(perm[i]);
    std::sort(mapped.begin(), mapped.end());
    EXPECT_EQ(mapped, a.indices());
  }
}

TEST(SelectionLossTest, Examples) {
  const auto profiles = EqualProfiles(4);
  EXPECT_EQ(SelectionLoss(SelectionSet::All(4), profiles), 0.0);
  ASSERT_OK_AND_ASSIGN(SelectionSet half, SelectionSet::Create({0, 3}, 4));
  EXPECT_DOUBLE_EQ(SelectionLoss(half, profiles), 0.25);
}

TEST(EvaluateObjectiveTest, TotalCombinesComponents) {
  RandomStream stream(42);
  ChannelRealization real = GaussianRealization(5, 2, 3, stream);
  const auto profiles = RandomProfiles(5, stream);
  ASSERT_OK_AND_ASSIGN(SelectionSet s, SelectionSet::Create({0, 2, 4}, 5));
  const RisConfig theta = RisConfig::AllOnes(3);
  ASSERT_OK_AND_ASSIGN(ComplexMatrix h, EffectiveChannel(real, theta));
  ASSERT_OK_AND_ASSIGN(Beamformer f, DominantBeamformer(h, s.indices()));
  ASSERT_OK_AND_ASSIGN(
      CodesignObjective obj,
      EvaluateObjective(s, real, theta, f, profiles, 0.2, 0.7, 2.0));
  ASSERT_OK_AND_ASSIGN(TransmitPlan plan,
                       PlanTransmissions(h, s.indices(), profiles, f));
  ASSERT_OK_AND_ASSIGN(double mse, AnalyticMse(plan, f, 0.2));
  EXPECT_NEAR(obj.comm_loss, mse / 2.0, 1e-15);
  EXPECT_DOUBLE_EQ(obj.selection_loss, SelectionLoss(s, profiles));
  EXPECT_DOUBLE_EQ(obj.total, obj.selection_loss + 0.7 * obj.comm_loss);
  EXPECT_GE(obj.selection_loss, 0.0);
  EXPECT_GE(obj.comm_loss, 0.0);

  EXPECT_FALSE(
      EvaluateObjective(SelectionSet(), real, theta, f, profiles, 0.2, 1.0)
          .ok());
  EXPECT_FALSE(EvaluateObjective(s, real, theta, f, profiles, 0.2, -1.0).ok());
}

TEST(EvaluateObjectiveTest, NestedSetMonotonicity) {
  RandomStream stream(43);
  for (int trial = 0; trial < 50; ++trial) {
    ChannelRealization real = GaussianRealization(10, 2, 4, stream);
    const auto profiles = RandomProfiles(10, stream);
    const RisConfig theta = RandomPhases(4, PhaseCodebook::Discrete(8), stream);
    ComplexVector dir(2);
    dir << stream.ComplexGaussian(1.0), stream.ComplexGaussian(1.0);
    ASSERT_OK_AND_ASSIGN(Beamformer f, Beamformer::FromDirection(dir));
    std::vector<int> order = Range(10);
    for (int i = 9; i > 0; --i) {
      std::swap(order[i], order[stream.UniformIndex(i + 1)]);
    }
    CodesignObjective prev;
    for (int n = 1; n <= 10; ++n) {
      ASSERT_OK_AND_ASSIGN(
          SelectionSet s,
          SelectionSet::Create({order.begin(), order.begin() + n}, 10));
      ASSERT_OK_AND_ASSIGN(
          CodesignObjective obj,
          EvaluateObjective(s, real, theta, f, profiles, 0.1, 1.0));
      if (n > 1) {
        EXPECT_LE(obj.selection_loss, prev.selection_loss);
        EXPECT_GE(obj.comm_loss, prev.comm_loss);
      }
      prev = obj;
    }
  }
}

TEST(GreedyCodesignTest, ZeroLambdaSelectsEveryone) {
  RandomStream stream(44);
  for (int trial = 0; trial < 10; ++trial) {
    ChannelRealization real = GaussianRealization(8, 1, 4, stream);
    const auto profiles = RandomProfiles(8, stream);
    ASSERT_OK_AND_ASSIGN(
        CodesignResult res,
        GreedyCodesign(real, profiles, 0.1, 0.0, SmallOptions(), stream));
    EXPECT_EQ(res.selected, SelectionSet::All(8));
    EXPECT_EQ(res.objective.selection_loss, 0.0);
  }
}

TEST(GreedyCodesignTest, HugeLambdaSelectsBestDevice) {
  RandomStream stream(45);
  for (int trial = 0; trial < 20; ++trial) {
    ChannelRealization real = GaussianRealization(8, 1, 0, stream);
    const auto profiles = EqualProfiles(8);
    ASSERT_OK_AND_ASSIGN(
        CodesignResult res,
        GreedyCodesign(real, profiles, 0.1, 1e9, SmallOptions(), stream));
    const std::vector<double> gains = RowGains(real.direct);
    const int best = static_cast<int>(
        std::max_element(gains.begin(), gains.end()) - gains.begin());
    EXPECT_EQ(res.selected.indices(), std::vector<int>{best});
  }
}

TEST(GreedyCodesignTest, DominatesFullSetAndBestSingleDevice) {
  RandomStream stream(46);
  for (int trial = 0; trial < 20; ++trial) {
    ChannelRealization real = GaussianRealization(7, 2, 3, stream);
    const auto profiles = RandomProfiles(7, stream);
    const OptimizerOptions options = SmallOptions();
    ASSERT_OK_AND_ASSIGN(
        CodesignResult res,
        GreedyCodesign(real, profiles, 0.3, 1.0, options, stream));
    ASSERT_OK_AND_ASSIGN(double scale, ReferenceCommLoss(real, profiles, 0.3));
    ASSERT_OK_AND_ASSIGN(ComplexMatrix h0,
                         EffectiveChannel(real, RisConfig::AllOnes(3)));
    const int best = DescendingGainOrder(RowGains(h0)).front();
    for (const SelectionSet& s :
         {SelectionSet::All(7), *SelectionSet::Create({best}, 7)}) {
      ASSERT_OK_AND_ASSIGN(
          MseSolution sol,
          OptimizeForSet(real, s, profiles, 0.3, options, stream));
      ASSERT_OK_AND_ASSIGN(CodesignObjective obj,
                           EvaluateObjective(s, real, sol.theta, sol.beamformer,
                                             profiles, 0.3, 1.0, scale));
      // Optimizer restarts differ between runs, so allow the slack of a
      // different local optimum for the same set.
      EXPECT_LE(res.objective.total, obj.total * 1.05);
    }
    ASSERT_OK_AND_ASSIGN(
        CodesignObjective recheck,
        EvaluateObjective(res.selected, real, res.theta, res.beamformer,
                          profiles, 0.3, 1.0, scale));
    EXPECT_NEAR(recheck.total, res.objective.total, 1e-12);
  }
}

TEST(GreedyCodesignTest, WithinTenPercentOfExhaustiveSubsets) {
  RandomStream stream(47);
  const OptimizerOptions options = SmallOptions();
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ChannelRealization real = GaussianRealization(6, 1, 4, stream);
    const auto profiles = RandomProfiles(6, stream);
    const double noise = 0.05 + 0.5 * stream.Uniform();
    ASSERT_OK_AND_ASSIGN(
        CodesignResult res,
        GreedyCodesign(real, profiles, noise, 1.0, options, stream));
    ASSERT_OK_AND_ASSIGN(double scale,
                         ReferenceCommLoss(real, profiles, noise));
    double best = INFINITY;
    for (int mask = 1; mask < 64; ++mask) {
      std::vector<int> members;
      for (int k = 0; k < 6; ++k) {
        if (mask & (1 << k)) members.push_back(k);
      }
      ASSERT_OK_AND_ASSIGN(SelectionSet s, SelectionSet::Create(members, 6));
      ASSERT_OK_AND_ASSIGN(
          MseSolution opt,
          OptimizeForSet(real, s, profiles, noise, options, stream));
      best = std::min(best, SelectionLoss(s, profiles) + opt.objective / scale);
    }
    if (res.objective.total <= 1.10 * best) ++hits;
  }
  EXPECT_GE(hits, 90);
}

TEST(OptimizeForSetTest, NoElementsUsesDominantBeamformer) {
  RandomStream stream(48);
  ChannelRealization real = GaussianRealization(4, 3, 0, stream);
  const SelectionSet s = SelectionSet::All(4);
  ASSERT_OK_AND_ASSIGN(
      MseSolution sol,
      OptimizeForSet(real, s, EqualProfiles(4), 0.1, SmallOptions(), stream));
  EXPECT_EQ(sol.theta.size(), 0);
  ASSERT_OK_AND_ASSIGN(Beamformer f,
                       DominantBeamformer(real.direct, s.indices()));
  EXPECT_EQ(sol.beamformer.coefficients(), f.coefficients());
}

}  // namespace
}  // namespace risfeel
