// Copyright 2026 The Crowdstack Authors
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

#include "crowdstack/reward_design.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "crowdstack/errors.h"
#include "test_util.h"

namespace crowdstack {
namespace {

using testing::CanonicalGame;
using testing::kFatigued;
using testing::kHighSpirited;

// The worker's payoff written out from the parameters, for on-time
// two-task games.
double DirectWorkerPayoff(const GameSpec& g, TypeIndex t, TaskId s, TaskId c,
                          double mu) {
  double v = g.params.worker_reward[c - 1];
  if (!g.matching.Suits(c, t)) v -= g.params.mismatch_cost[c - 1][t];
  if (s != c) v -= mu;
  return v;
}

// Number of (type, recommendation) pairs where the strictly better task is
// the unsuited one.
int DirectViolations(const GameSpec& g, double mu) {
  int count = 0;
  for (TypeIndex t = 0; t < g.num_types(); ++t) {
    if (g.prior[t] == 0.0) continue;
    const TaskId a = g.matching.Suits(1, t) ? 1 : 2;
    const TaskId b = 3 - a;
    for (TaskId s = 1; s <= 2; ++s) {
      if (DirectWorkerPayoff(g, t, s, b, mu) > DirectWorkerPayoff(g, t, s, a, mu)) {
        ++count;
      }
    }
  }
  return count;
}

TEST(MuBoundsForTypeTest, CanonicalGame) {
  const GameSpec g = CanonicalGame();
  const MuInterval h = MuBoundsForType(kHighSpirited, g);
  EXPECT_EQ(h.lower, -4.0);
  EXPECT_EQ(h.upper, 4.0);
  EXPECT_TRUE(h.nonempty);
  // θ_f: A = 2, B = 1, κ(1,θ_f) = 8 → (10 − 6 − 8, 6 − 10 + 8).
  const MuInterval f = MuBoundsForType(kFatigued, g);
  EXPECT_EQ(f.lower, -4.0);
  EXPECT_EQ(f.upper, 4.0);
}

TEST(MuBoundsForTypeTest, EmptyWhenMismatchCostEqualsRewardGap) {
  GameSpec g = CanonicalGame();
  g.params.mismatch_cost[0][kFatigued] = 4.0;
  const MuInterval f = MuBoundsForType(kFatigued, g);
  EXPECT_EQ(f.lower, 0.0);
  EXPECT_EQ(f.upper, 0.0);
  EXPECT_FALSE(f.nonempty);
}

TEST(MuBoundsForTypeTest, Errors) {
  GameSpec late = CanonicalGame();
  late.tasks[1].completion_time = 9.0;
  EXPECT_THROW(MuBoundsForType(0, late), UnsupportedShapeError);

  GameSpec both = CanonicalGame();
  both.matching.Set(2, kHighSpirited, 0);  // 0 marks a suited task
  EXPECT_THROW(MuBoundsForType(kHighSpirited, both), DegenerateTypeError);
  both.matching.Set(1, kHighSpirited, 1);
  both.matching.Set(2, kHighSpirited, 1);
  EXPECT_THROW(MuBoundsForType(kHighSpirited, both), DegenerateTypeError);

  GameSpec bad = CanonicalGame();
  bad.params.mismatch_cost[0][kFatigued] = 10.5;  // κ > ψ(1)
  EXPECT_THROW(MuBoundsForType(kFatigued, bad), InvalidSpecError);
}

TEST(FeasibleMuRegionTest, CanonicalGame) {
  const MuRegion r = FeasibleMuRegion(CanonicalGame());
  EXPECT_EQ(r.interval.lower, -4.0);
  EXPECT_EQ(r.interval.upper, 4.0);
  EXPECT_TRUE(r.interval.nonempty);
  EXPECT_EQ(r.types, (std::vector<TypeIndex>{0, 1}));
}

TEST(FeasibleMuRegionTest, EmptyTypeBlocks) {
  GameSpec g = CanonicalGame();
  g.params.mismatch_cost[0][kFatigued] = 4.0;
  const MuRegion r = FeasibleMuRegion(g);
  EXPECT_FALSE(r.interval.nonempty);
  EXPECT_EQ(r.lower_binding, kFatigued);
  EXPECT_EQ(r.upper_binding, kFatigued);
}

TEST(FeasibleMuRegionTest, NarrowestTypeBinds) {
  GameSpec g = CanonicalGame();
  g.params.worker_reward = {10.0, 2.0};
  g.params.mismatch_cost = {{0.0, 9.0}, {0.0, 0.0}};
  // θ_h (A=1,B=2): (2 − 10 − 0, 10 − 2 + 0) = (−8, 8).
  // θ_f (A=2,B=1): (10 − 2 − 9, 2 − 10 + 9) = (−1, 1).
  const MuRegion r = FeasibleMuRegion(g);
  EXPECT_EQ(r.interval.lower, -1.0);
  EXPECT_EQ(r.interval.upper, 1.0);
  EXPECT_EQ(r.lower_binding, kFatigued);
  EXPECT_EQ(r.upper_binding, kFatigued);
  EXPECT_EQ(r.per_type[0].upper, 8.0);
}

TEST(FeasibleMuRegionTest, NoPositivePrior) {
  GameSpec g = testing::SingleMatchedTypeGame();
  g.prior = {0.0};
  EXPECT_THROW(FeasibleMuRegion(g), std::exception);
}

TEST(FeasibleMuRegionTest, SingleTypeEqualsItsBounds) {
  const GameSpec g = testing::SingleMatchedTypeGame();
  const MuRegion r = FeasibleMuRegion(g);
  const MuInterval own = MuBoundsForType(0, g);
  EXPECT_EQ(r.interval.lower, own.lower);
  EXPECT_EQ(r.interval.upper, own.upper);
}

TEST(FeasibleMuRegionTest, ZeroPriorTypesAreIgnored) {
  GameSpec g = CanonicalGame();
  g.matching.Set(1, kFatigued, 0);  // degenerate, but never drawn
  g.prior = {1.0, 0.0};
  const MuRegion r = FeasibleMuRegion(g);
  EXPECT_EQ(r.types, (std::vector<TypeIndex>{kHighSpirited}));
}

TEST(VerifySteeringTest, InsideTheRegion) {
  const SteeringVerdict v = VerifySteering(CanonicalGame(), 3.0);
  EXPECT_TRUE(v.steered());
  EXPECT_FALSE(v.on_boundary());
}

TEST(VerifySteeringTest, AboveTheUpperBound) {
  const SteeringVerdict v = VerifySteering(CanonicalGame(), 5.0);
  ASSERT_FALSE(v.steered());
  // θ_f recommended task 1 obeys: 10 − 8 = 2 beats 6 − 5 = 1.
  EXPECT_NE(std::find(v.violations.begin(), v.violations.end(),
                      SteeringViolation{kFatigued, 1, 1}),
            v.violations.end());
}

TEST(VerifySteeringTest, BelowAPositiveLowerBound) {
  GameSpec g = CanonicalGame();
  g.params.worker_reward = {6.0, 10.0};
  g.params.mismatch_cost = {{0.0, 0.0}, {0.0, 0.0}};
  g.prior = {1.0, 0.0};
  const MuInterval h = MuBoundsForType(kHighSpirited, g);
  EXPECT_EQ(h.lower, 4.0);
  const SteeringVerdict v = VerifySteering(g, h.lower - 1.0);
  EXPECT_NE(std::find(v.violations.begin(), v.violations.end(),
                      SteeringViolation{kHighSpirited, 1, 2}),
            v.violations.end());
}

TEST(VerifySteeringTest, BoundaryIsFlagged) {
  const SteeringVerdict v = VerifySteering(CanonicalGame(), 4.0);
  EXPECT_TRUE(v.on_boundary());
  EXPECT_EQ(v.boundary_types, (std::vector<TypeIndex>{0, 1}));
}

TEST(VerifySteeringTest, RejectsNegativeMuAndWrongShape) {
  EXPECT_THROW(VerifySteering(CanonicalGame(), -1.0), InvalidSpecError);
  GameSpec three = CanonicalGame();
  three.tasks.push_back({3, "t3", false, 5.0, 1.0, 0.0});
  EXPECT_THROW(VerifySteering(three, 1.0), UnsupportedShapeError);
}

TEST(MuRegionPropertyTest, NonemptinessCriterion) {
  std::mt19937_64 rng(51);
  testing::RandomSpecOptions opts;
  opts.max_types = 6;
  for (int iter = 0; iter < 2000; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    for (TypeIndex t = 0; t < g.num_types(); ++t) {
      const MuInterval m = MuBoundsForType(t, g);
      const TaskId a = g.matching.Suits(1, t) ? 1 : 2;
      const TaskId b = 3 - a;
      const double gap =
          g.params.worker_reward[b - 1] - g.params.worker_reward[a - 1];
      const double kappa = g.params.mismatch_cost[b - 1][t];
      EXPECT_EQ(m.nonempty, gap < kappa);
      EXPECT_NEAR(m.upper - m.lower, 2.0 * (kappa - gap), 1e-12);
    }
  }
}

TEST(MuRegionPropertyTest, InteriorIsSound) {
  std::mt19937_64 rng(53);
  testing::RandomSpecOptions opts;
  opts.max_types = 6;
  opts.allow_zero_prior = true;
  int checked = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    const MuRegion r = FeasibleMuRegion(g);
    const double lo = std::max(0.0, r.interval.lower) + 1e-6;
    const double hi = r.interval.upper - 1e-6;
    if (!(lo < hi)) continue;
    for (double w : {0.0, 0.5, 1.0}) {
      const double mu = lo + w * (hi - lo);
      EXPECT_TRUE(VerifySteering(g, mu).steered()) << "iter " << iter;
      EXPECT_EQ(DirectViolations(g, mu), 0) << "iter " << iter;
    }
    ++checked;
  }
  EXPECT_GT(checked, 500);
}

TEST(MuRegionPropertyTest, ExteriorIsSharp) {
  std::mt19937_64 rng(57);
  testing::RandomSpecOptions opts;
  opts.max_types = 6;
  int above = 0;
  int below = 0;
  for (int iter = 0; iter < 3000; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    const MuRegion r = FeasibleMuRegion(g);
    if (r.interval.upper >= 0.0) {
      const double mu = r.interval.upper + 1e-3;
      const SteeringVerdict v = VerifySteering(g, mu);
      bool binding_fails = false;
      for (const auto& x : v.violations) {
        binding_fails |= x.type == r.upper_binding;
      }
      EXPECT_TRUE(binding_fails) << "iter " << iter;
      ++above;
    }
    if (r.interval.lower > 1e-3) {
      const double mu = r.interval.lower - 1e-3;
      const SteeringVerdict v = VerifySteering(g, mu);
      bool binding_fails = false;
      for (const auto& x : v.violations) {
        binding_fails |= x.type == r.lower_binding;
      }
      EXPECT_TRUE(binding_fails) << "iter " << iter;
      ++below;
    }
  }
  EXPECT_GT(above, 1000);
  EXPECT_GT(below, 50);
}

}  // namespace
}  // namespace crowdstack
