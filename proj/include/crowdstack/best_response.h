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

#ifndef CROWDSTACK_BEST_RESPONSE_H_
#define CROWDSTACK_BEST_RESPONSE_H_

#include <vector>

#include "crowdstack/game_model.h"

namespace crowdstack {

inline constexpr double kStrategySumTolerance = 1e-9;

struct BestResponse {
  TaskId chosen_task = 1;
  double utility = 0.0;
  // More than one task attained the worker's maximum.
  bool tie = false;
};

// The leader's commitment: probability of recommending each task.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  // Throws DomainError unless probs is a distribution (sum within 1e-9).
  explicit MixedStrategy(std::vector<double> probs);

  static MixedStrategy Pure(int num_tasks, TaskId task);

  int size() const { return static_cast<int>(probs_.size()); }
  // Probability of recommending task (1-based).
  double prob(TaskId task) const { return probs_.at(task - 1); }
  const std::vector<double>& probs() const { return probs_; }

  bool operator==(const MixedStrategy&) const = default;

 private:
  std::vector<double> probs_;
};

// Worker's reply to an observed recommendation. Ties go to the task that is
// best for the system, then to the smallest id.
BestResponse WorkerBestResponse(TaskId recommended, TypeIndex type,
                                const GameSpec& spec);

// Σ_θ π(θ) Σ_s σ(s)·u(s, c*(s,θ), θ) where c* answers the realized s.
// Summed θ-ascending, then s-ascending.
double LeaderExpectedUtility(const MixedStrategy& sigma, const GameSpec& spec);

struct PureCommitment {
  TaskId recommendation = 1;
  double value = 0.0;
};

// Best pure recommendation under observed-action semantics; ties to the
// smallest id. By linearity in σ this is also the optimum over mixed σ.
PureCommitment OptimalObservedActionCommitment(const GameSpec& spec);

}  // namespace crowdstack

#endif  // CROWDSTACK_BEST_RESPONSE_H_
