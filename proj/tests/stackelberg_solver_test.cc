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

#include "crowdstack/stackelberg_solver.h"

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "crowdstack/errors.h"
#include "lp_oracle.h"
#include "test_util.h"

namespace crowdstack {
namespace {

using testing::CanonicalGame;
using testing::kFatigued;
using testing::kHighSpirited;

// Optimal commitment value built without the library solver: every profile
// LP is assembled here from the utility functions and solved by vertex
// enumeration.
double OracleCommitmentValue(const GameSpec& g) {
  const int k = g.num_tasks();
  const int n = g.num_types();
  std::int64_t cols = 1;
  for (int t = 0; t < n; ++t) cols *= k;
  double best = -std::numeric_limits<double>::infinity();
  for (std::int64_t j = 0; j < cols; ++j) {
    std::vector<TaskId> c(n);
    std::int64_t rest = j;
    for (int t = 0; t < n; ++t) {
      c[t] = static_cast<TaskId>(rest % k) + 1;
      rest /= k;
    }
    LinearProgram lp;
    lp.objective.assign(k, 0.0);
    for (int s = 1; s <= k; ++s) {
      for (int t = 0; t < n; ++t) {
        lp.objective[s - 1] += g.prior[t] * SystemUtility(s, c[t], t, g);
      }
    }
    for (int t = 0; t < n; ++t) {
      for (int alt = 1; alt <= k; ++alt) {
        if (alt == c[t]) continue;
        LinearConstraint row{std::vector<double>(k), 0.0};
        for (int s = 1; s <= k; ++s) {
          row.coefficients[s - 1] =
              WorkerUtility(s, alt, t, g) - WorkerUtility(s, c[t], t, g);
        }
        lp.le_constraints.push_back(row);
      }
    }
    lp.eq_constraints.push_back({std::vector<double>(k, 1.0), 1.0});
    if (const auto v = testing::VertexOracle(lp)) best = std::max(best, *v);
  }
  return best;
}

TEST(FollowerProfileTest, IndexIsABijection) {
  for (int k = 1; k <= 4; ++k) {
    for (int n = 1; n <= 4; ++n) {
      const std::int64_t count = ProfileCount(k, n);
      std::set<std::vector<TaskId>> seen;
      for (std::int64_t j = 0; j < count; ++j) {
        const FollowerProfile p = FollowerProfile::FromIndex(j, k, n);
        EXPECT_EQ(p.Index(k), j);
        for (TaskId c : p.assignment) {
          EXPECT_GE(c, 1);
          EXPECT_LE(c, k);
        }
        seen.insert(p.assignment);
      }
      EXPECT_EQ(static_cast<std::int64_t>(seen.size()), count);
    }
  }
}

TEST(FollowerProfileTest, FirstTypeIsLeastSignificant) {
  EXPECT_EQ((FollowerProfile{{2, 1}}).Index(2), 1);
  EXPECT_EQ((FollowerProfile{{1, 2}}).Index(2), 2);
  EXPECT_EQ((FollowerProfile{{3, 1, 2}}).Index(3), 2 + 0 + 9);
}

TEST(ProfileCountTest, CapacityBudget) {
  EXPECT_EQ(ProfileCount(2, 8), 256);
  EXPECT_EQ(ProfileCount(3, 4), 81);
  EXPECT_THROW(ProfileCount(2, 24), CapacityError);
  EXPECT_THROW(ProfileCount(2, 8, 511), CapacityError);
  EXPECT_EQ(ProfileCount(2, 8, 512), 256);
}

TEST(HarsanyiTransformTest, Dimensions) {
  const NormalFormGame small = HarsanyiTransform(CanonicalGame());
  EXPECT_EQ(small.rows(), 2);
  EXPECT_EQ(small.cols(), 4);

  GameSpec full = CanonicalGame();
  full.worker_types = EnumerateWorkerTypes(2);
  full.prior.assign(8, 0.125);
  full.matching = DefaultMatching(full.tasks, full.worker_types, 2);
  full.params.mismatch_cost.assign(2, std::vector<double>(8, 0.0));
  const NormalFormGame big = HarsanyiTransform(full);
  EXPECT_EQ(big.rows(), 2);
  EXPECT_EQ(big.cols(), 256);
}

TEST(HarsanyiTransformTest, CanonicalObedientCell) {
  // Profile (θ_h → 1, θ_f → 2) has index 2.
  const NormalFormGame game = HarsanyiTransform(CanonicalGame());
  EXPECT_DOUBLE_EQ(game.leader(1, 2), 8.5);
  EXPECT_DOUBLE_EQ(game.leader(2, 2), 8.5);
  // θ_h at s=1 obeys (10); θ_f at s=1 picks 2 (6 − 3).
  EXPECT_DOUBLE_EQ(game.follower(1, 2), 0.5 * 10 + 0.5 * 3);
}

TEST(HarsanyiTransformTest, CellsRecomputeBitIdentically) {
  std::mt19937_64 rng(21);
  testing::RandomSpecOptions opts;
  opts.max_tasks = 3;
  opts.max_types = 4;
  opts.on_time = false;
  opts.one_match_per_type = false;
  for (int iter = 0; iter < 50; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    const NormalFormGame game = HarsanyiTransform(g);
    for (std::int64_t j = 0; j < game.cols(); ++j) {
      const auto p = FollowerProfile::FromIndex(j, g.num_tasks(), g.num_types());
      for (TaskId s = 1; s <= g.num_tasks(); ++s) {
        double leader = 0.0;
        double follower = 0.0;
        for (TypeIndex t = 0; t < g.num_types(); ++t) {
          leader += g.prior[t] * SystemUtility(s, p.assignment[t], t, g);
          follower += g.prior[t] * WorkerUtility(s, p.assignment[t], t, g);
        }
        EXPECT_EQ(std::bit_cast<std::uint64_t>(game.leader(s, j)),
                  std::bit_cast<std::uint64_t>(leader));
        EXPECT_EQ(std::bit_cast<std::uint64_t>(game.follower(s, j)),
                  std::bit_cast<std::uint64_t>(follower));
      }
    }
  }
}

TEST(HarsanyiTransformTest, RejectsOversizeAndInvalid) {
  GameSpec g = CanonicalGame();
  EXPECT_THROW(HarsanyiTransform(g, 7), CapacityError);
  g.prior = {0.7, 0.7};
  EXPECT_THROW(HarsanyiTransform(g), InvalidSpecError);
}

TEST(HarsanyiTransformTest, CellAccessBounds) {
  const NormalFormGame game = HarsanyiTransform(CanonicalGame());
  EXPECT_THROW(game.leader(0, 0), IndexError);
  EXPECT_THROW(game.leader(1, 4), IndexError);
}

TEST(WriteNormalFormGameTest, Format) {
  std::ostringstream os;
  WriteNormalFormGame(HarsanyiTransform(CanonicalGame()), os);
  std::istringstream in(os.str());
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[0], "leader\t0\t1\t2\t3");
  EXPECT_EQ(lines[3], "follower\t0\t1\t2\t3");
  EXPECT_EQ(lines[1].substr(0, 2), "1\t");
  EXPECT_NE(lines[1].find("\t8.5\t"), std::string::npos);
}

TEST(ProfileProgramTest, Shape) {
  const GameSpec g = CanonicalGame();
  const LinearProgram lp = ProfileProgram(g, {{1, 2}});
  EXPECT_EQ(lp.num_variables(), 2);
  EXPECT_EQ(lp.le_constraints.size(), 2u);  // Θ·(K − 1)
  EXPECT_EQ(lp.eq_constraints.size(), 1u);
  EXPECT_THROW(ProfileProgram(g, {{1}}), StructuralError);
}

TEST(SolveMultipleLpsTest, CanonicalGame) {
  const SolveResult r = SolveMultipleLps(CanonicalGame());
  EXPECT_EQ(r.lps_solved, 4);
  EXPECT_NEAR(r.leader_value, 8.5, 1e-9);
  EXPECT_EQ(r.lp_statuses.optimal + r.lp_statuses.infeasible, 4);
  const CommitmentCheck check = CheckCommitment(CanonicalGame(), r);
  EXPECT_LE(check.max_constraint_violation, 1e-7);
  EXPECT_TRUE(check.inconsistent_types.empty());
}

TEST(SolveMultipleLpsTest, FullEnumerationSolvesEveryProfile) {
  GameSpec full = CanonicalGame();
  full.worker_types = EnumerateWorkerTypes(2);
  full.prior.assign(8, 0.125);
  full.matching = MatchingTable(2, 8);
  full.params.mismatch_cost.assign(2, std::vector<double>(8, 0.0));
  for (int t = 0; t < 8; ++t) {
    const bool suits_one = t < 4;
    full.matching.Set(1, t, suits_one ? 0 : 1);
    full.matching.Set(2, t, suits_one ? 1 : 0);
    if (!suits_one) full.params.mismatch_cost[0][t] = 8.0;
  }
  const SolveResult r = SolveMultipleLps(full);
  EXPECT_EQ(r.lps_solved, 256);
  EXPECT_GE(r.leader_value, 8.5 - 1e-9);
}

TEST(SolveMultipleLpsTest, SingleMatchedType) {
  const GameSpec g = testing::SingleMatchedTypeGame();
  const SolveResult r = SolveMultipleLps(g);
  EXPECT_NEAR(r.sigma.prob(1), 1.0, 1e-9);
  EXPECT_NEAR(r.leader_value, g.params.system_reward[0], 1e-9);
  EXPECT_EQ(r.profile.assignment, (std::vector<TaskId>{1}));
}

TEST(SolveMultipleLpsTest, CapacityError) {
  GameSpec g = CanonicalGame();
  SolverOptions options;
  options.cell_budget = 7;
  EXPECT_THROW(SolveMultipleLps(g, options), CapacityError);
}

TEST(SolveMultipleLpsTest, MatchesIndependentOracle) {
  std::mt19937_64 rng(31);
  testing::RandomSpecOptions opts;
  opts.max_tasks = 3;
  opts.max_types = 3;
  opts.on_time = false;
  opts.one_match_per_type = false;
  for (int iter = 0; iter < 150; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    const SolveResult r = SolveMultipleLps(g);
    const double oracle = OracleCommitmentValue(g);
    EXPECT_NEAR(r.leader_value, oracle, 1e-7 * (1.0 + std::fabs(oracle)))
        << "iter " << iter;
    EXPECT_EQ(r.lps_solved, ProfileCount(g.num_tasks(), g.num_types()));
  }
}

TEST(SolveMultipleLpsTest, DominatesObservedCommitment) {
  std::mt19937_64 rng(37);
  testing::RandomSpecOptions opts;
  opts.max_tasks = 3;
  opts.max_types = 4;
  opts.on_time = false;
  opts.one_match_per_type = false;
  for (int iter = 0; iter < 200; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    EXPECT_GE(SolveMultipleLps(g).leader_value,
              OptimalObservedActionCommitment(g).value - 1e-9);
  }
}

TEST(SolveMultipleLpsTest, CommitmentSatisfiesItsConstraints) {
  std::mt19937_64 rng(41);
  testing::RandomSpecOptions opts;
  opts.max_tasks = 3;
  opts.max_types = 4;
  opts.on_time = false;
  opts.one_match_per_type = false;
  for (int iter = 0; iter < 200; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    const SolveResult r = SolveMultipleLps(g);
    const CommitmentCheck check = CheckCommitment(g, r);
    EXPECT_LE(check.max_constraint_violation, 1e-7) << "iter " << iter;
    EXPECT_TRUE(check.inconsistent_types.empty()) << "iter " << iter;
    EXPECT_EQ(r.profile.Index(g.num_tasks()), r.profile_index);
  }
}

TEST(SolveMultipleLpsTest, ThreadCountDoesNotChangeTheResult) {
  std::mt19937_64 rng(43);
  testing::RandomSpecOptions opts;
  opts.min_types = 4;
  opts.max_types = 7;
  opts.one_match_per_type = false;
  for (int iter = 0; iter < 20; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    const SolveResult serial = SolveMultipleLps(g);
    for (int threads : {2, 3, 8}) {
      SolverOptions options;
      options.num_threads = threads;
      const SolveResult par = SolveMultipleLps(g, options);
      EXPECT_EQ(par.profile_index, serial.profile_index);
      EXPECT_EQ(par.sigma.probs(), serial.sigma.probs());
      EXPECT_EQ(std::bit_cast<std::uint64_t>(par.leader_value),
                std::bit_cast<std::uint64_t>(serial.leader_value));
      EXPECT_EQ(par.lp_statuses.optimal, serial.lp_statuses.optimal);
    }
  }
}

TEST(FollowerResponseToMixedTest, NearTiesFavourTheLeader) {
  GameSpec g = CanonicalGame();
  g.params.disobedience_cost = 4.0;  // θ_f indifferent at s = 1
  const MixedStrategy pure1({1.0, 0.0});
  EXPECT_EQ(FollowerResponseToMixed(pure1, kFatigued, g), 1);
  g.params.disobedience_cost = 4.0 - 1e-12;
  EXPECT_EQ(FollowerResponseToMixed(pure1, kFatigued, g), 1);
  g.params.disobedience_cost = 3.0;
  EXPECT_EQ(FollowerResponseToMixed(pure1, kFatigued, g), 2);
  EXPECT_EQ(FollowerResponseToMixed(pure1, kHighSpirited, g), 1);
}

TEST(BruteForceCommitmentValueTest, EdgeCases) {
  const GameSpec g = CanonicalGame();
  // σ = (0, 1): θ_h leaves for task 1 (10 from u(2,1)), θ_f obeys (7).
  EXPECT_DOUBLE_EQ(BruteForceCommitmentValue(g, 0), 8.5);
  EXPECT_NEAR(BruteForceCommitmentValue(g, 10), 8.5, 1e-12);
  EXPECT_THROW(BruteForceCommitmentValue(g, -1), DomainError);

  GameSpec three = CanonicalGame();
  three.tasks.push_back({3, "t3", false, 5.0, 1.0, 0.0});
  three.matching = MatchingTable(3, 2);
  three.matching.Set(1, 0, 0);
  three.matching.Set(2, 1, 0);
  three.params.system_reward.push_back(1.0);
  three.params.worker_reward.push_back(1.0);
  three.params.mismatch_cost.push_back({0.0, 0.0});
  EXPECT_THROW(BruteForceCommitmentValue(three, 10), UnsupportedShapeError);
}

TEST(BruteForceCommitmentValueTest, ConvergesToMultipleLps) {
  std::mt19937_64 rng(47);
  testing::RandomSpecOptions opts;
  opts.max_types = 4;
  opts.one_match_per_type = false;
  for (int iter = 0; iter < 100; ++iter) {
    const GameSpec g = testing::RandomSpec(rng, opts);
    const double exact = SolveMultipleLps(g).leader_value;
    const double grid = BruteForceCommitmentValue(g, 2000);
    EXPECT_LE(grid, exact + 1e-7) << "iter " << iter;
    EXPECT_GE(grid, exact - LeaderLipschitzBound(g) / 2000 - 1e-7)
        << "iter " << iter;
    EXPECT_LE(LeaderLipschitzBound(g), g.params.persuasion_inefficiency + 1e-12);
  }
}

}  // namespace
}  // namespace crowdstack
