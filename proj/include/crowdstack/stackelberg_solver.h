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

// Optimal leader commitment for the Bayesian game. The game is first
// flattened into a normal-form game whose follower columns are type -> task
// assignments (K^Θ of them); one LP per column then finds the best
// commitment that makes that column the follower's best response.

#ifndef CROWDSTACK_STACKELBERG_SOLVER_H_
#define CROWDSTACK_STACKELBERG_SOLVER_H_

#include <cstdint>
#include <ostream>
#include <vector>

#include "crowdstack/best_response.h"
#include "crowdstack/game_model.h"
#include "crowdstack/lp_core.h"

namespace crowdstack {

inline constexpr std::int64_t kDefaultCellBudget = 10'000'000;
// Follower indifference margin when responding to a mixed commitment.
inline constexpr double kMixedTieTolerance = 1e-9;

// A pure strategy of the Harsanyi-transformed follower: one task per type.
// Encoded as the mixed-radix number Σ_θ (c(θ) − 1)·K^θ.
struct FollowerProfile {
  std::vector<TaskId> assignment;  // indexed by type

  std::int64_t Index(int num_tasks) const;
  static FollowerProfile FromIndex(std::int64_t index, int num_tasks,
                                   int num_types);

  bool operator==(const FollowerProfile&) const = default;
};

// K^Θ, or CapacityError when K·K^Θ exceeds cell_budget.
std::int64_t ProfileCount(int num_tasks, int num_types,
                          std::int64_t cell_budget = kDefaultCellBudget);

class NormalFormGame {
 public:
  NormalFormGame(int rows, std::int64_t cols);

  int rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }

  // Row = recommended task (1-based), column = profile index.
  double leader(TaskId s, std::int64_t col) const;
  double follower(TaskId s, std::int64_t col) const;
  void set(TaskId s, std::int64_t col, double leader, double follower);

 private:
  std::size_t Offset(TaskId s, std::int64_t col) const;

  int rows_;
  std::int64_t cols_;
  std::vector<double> leader_;
  std::vector<double> follower_;
};

// Prior-weighted payoff matrices, K × K^Θ. Throws CapacityError rather than
// truncating when the matrices would exceed cell_budget cells.
NormalFormGame HarsanyiTransform(const GameSpec& spec,
                                 std::int64_t cell_budget = kDefaultCellBudget);

// Writes both matrices as tab-separated text: per matrix, a header line
// "<name>\t<profile 0>\t<profile 1>..." then one line per recommendation.
void WriteNormalFormGame(const NormalFormGame& game, std::ostream& os);

struct LpStatusTally {
  std::int64_t optimal = 0;
  std::int64_t infeasible = 0;
};

struct SolveResult {
  MixedStrategy sigma;
  FollowerProfile profile;
  std::int64_t profile_index = 0;
  double leader_value = 0.0;
  std::int64_t lps_solved = 0;
  LpStatusTally lp_statuses;
};

struct SolverOptions {
  std::int64_t cell_budget = kDefaultCellBudget;
  // LPs are split into contiguous blocks across this many threads. The
  // result does not depend on the thread count.
  int num_threads = 1;
};

// The LP for one follower profile: maximize the leader's prior-weighted
// payoff subject to every type preferring its assigned task to every
// alternative, over the probability simplex.
LinearProgram ProfileProgram(const GameSpec& spec,
                             const FollowerProfile& profile);

// Multiple-LPs method. Ties between profiles go to the smallest index.
SolveResult SolveMultipleLps(const GameSpec& spec,
                             const SolverOptions& options = {});

// Σ_s σ(s)·v(s, c, θ), the type's payoff for task c under commitment σ.
double FollowerValueUnderMixed(const MixedStrategy& sigma, TaskId chosen,
                               TypeIndex type, const GameSpec& spec);

// Σ_s σ(s)·u(s, c, θ).
double LeaderValueUnderMixed(const MixedStrategy& sigma, TaskId chosen,
                             TypeIndex type, const GameSpec& spec);

// The type's best task against a mixed commitment; near-ties (within
// kMixedTieTolerance) go to the leader, then to the smallest id.
TaskId FollowerResponseToMixed(const MixedStrategy& sigma, TypeIndex type,
                               const GameSpec& spec);

// Sweeps σ(1) over {0, 1/grid, ..., 1} (just 0 when grid == 0) and returns
// the best leader value against mixed-commitment best responses. Only for
// two-task games; a lower bound on SolveMultipleLps.
double BruteForceCommitmentValue(const GameSpec& spec, int grid);

// Largest slope of the leader's objective in σ(1) for a two-task game: the
// grid oracle is within this bound divided by the grid size of the optimum.
double LeaderLipschitzBound(const GameSpec& spec);

struct CommitmentCheck {
  // Largest amount by which a type prefers some alternative to its
  // assigned task under σ.
  double max_constraint_violation = 0.0;
  // Types whose assigned task is not a (leader-favoured) best response.
  std::vector<TypeIndex> inconsistent_types;
};

// Re-derives the winning LP's constraints from the spec and checks them at
// the returned σ.
CommitmentCheck CheckCommitment(const GameSpec& spec, const SolveResult& result,
                                double tolerance = kLpFeasibilityTolerance);

}  // namespace crowdstack

#endif  // CROWDSTACK_STACKELBERG_SOLVER_H_
