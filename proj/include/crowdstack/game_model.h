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

#ifndef CROWDSTACK_GAME_MODEL_H_
#define CROWDSTACK_GAME_MODEL_H_

#include <cstdint>
#include <string>
#include <vector>

namespace crowdstack {

// Task ids are 1-based (1..K). Worker type indices are 0-based (0..Θ-1) and
// follow the order of GameSpec::worker_types.
using TaskId = int;
using TypeIndex = int;

inline constexpr int kNumBetaCategories = 4;
// Largest K for which the full type enumeration is offered.
inline constexpr int kMaxEnumeratedTasks = 7;

struct TaskType {
  TaskId id = 1;
  std::string label;
  // Marks cognitive-atrophy-inducing work such as content moderation.
  bool strenuous = false;
  double deadline = 1.0;
  double completion_time = 1.0;
  // Metadata only; no utility references it.
  double posted_reward = 0.0;

  bool operator==(const TaskType&) const = default;
};

// A worker type: cognitive-atrophy category plus a strict preference order.
struct WorkerType {
  int beta_category = 1;                // 1 (high-spirited) .. 4 (fatigued)
  std::vector<TaskId> preference_order;  // permutation of 1..K

  bool operator==(const WorkerType&) const = default;
  auto operator<=>(const WorkerType&) const = default;
};

// m(k, θ): 0 when task k suits type θ, 1 when it does not.
class MatchingTable {
 public:
  MatchingTable() = default;
  // All entries start at `fill`.
  MatchingTable(int num_tasks, int num_types, int fill = 0);

  int num_tasks() const { return num_tasks_; }
  int num_types() const { return num_types_; }

  int At(TaskId task, TypeIndex type) const;
  void Set(TaskId task, TypeIndex type, int value);

  // True when task suits type (entry is 0).
  bool Suits(TaskId task, TypeIndex type) const { return At(task, type) == 0; }

  // Raw row-major [task][type] entries; validation inspects these directly.
  const std::vector<int>& entries() const { return entries_; }

  bool operator==(const MatchingTable&) const = default;

 private:
  int num_tasks_ = 0;
  int num_types_ = 0;
  std::vector<int> entries_;
};

struct UtilityParams {
  std::vector<double> system_reward;              // φ, per task
  std::vector<double> worker_reward;              // ψ, per task
  std::vector<std::vector<double>> mismatch_cost;  // κ, [task-1][type]
  double disobedience_cost = 0.0;                  // μ, worker side
  double persuasion_inefficiency = 0.0;            // λ, system side

  bool operator==(const UtilityParams&) const = default;
};

// One Bayesian Stackelberg instance.
struct GameSpec {
  std::vector<TaskType> tasks;
  std::vector<WorkerType> worker_types;
  std::vector<double> prior;
  MatchingTable matching;
  UtilityParams params;

  int num_tasks() const { return static_cast<int>(tasks.size()); }
  int num_types() const { return static_cast<int>(worker_types.size()); }

  const TaskType& task(TaskId id) const;
  double kappa(TaskId task, TypeIndex type) const;
  bool MeetsDeadline(TaskId task) const;

  bool operator==(const GameSpec&) const = default;
};

struct Violation {
  std::string field;
  std::string constraint;
  std::string observed;

  std::string ToString() const;
  bool operator==(const Violation&) const = default;
};

// Maps a cognitive-atrophy rate in [0, 1] to its category. Upper interval
// boundaries are closed: 0.25 -> 1, 0.50 -> 2, 0.75 -> 3. Throws DomainError
// outside [0, 1] (including NaN).
int BetaCategory(double beta);

// All 4·K! types ordered lexicographically by (beta_category, preference
// order). Type indices in this order define FollowerProfile encodings.
// Throws CapacityError when K > kMaxEnumeratedTasks, DomainError when K < 1.
std::vector<WorkerType> EnumerateWorkerTypes(int num_tasks);

// 4·K!, or CapacityError when K > kMaxEnumeratedTasks.
std::int64_t WorkerTypeCount(int num_tasks);

// True when the spec's type list is exactly EnumerateWorkerTypes(K).
bool HasFullTypeEnumeration(const GameSpec& spec);

// u(s, c, θ): φ_c, φ_c − λ when c ≠ s, or 0 when task c misses its deadline.
double SystemUtility(TaskId recommended, TaskId chosen, TypeIndex type,
                     const GameSpec& spec);

// v(s, c, θ): ψ_c − κ_{c,θ}·m(c,θ), less μ when c ≠ s, or 0 when task c
// misses its deadline.
double WorkerUtility(TaskId recommended, TaskId chosen, TypeIndex type,
                     const GameSpec& spec);

// Strenuous tasks suit a type iff its beta category is <= threshold; other
// tasks suit every type. Preference order plays no role.
MatchingTable DefaultMatching(const std::vector<TaskType>& tasks,
                              const std::vector<WorkerType>& worker_types,
                              int threshold);

// Every invariant breach in the spec; empty iff valid.
std::vector<Violation> Validate(const GameSpec& spec);

// Throws InvalidSpecError listing all violations when Validate is non-empty.
void ValidateOrThrow(const GameSpec& spec);

}  // namespace crowdstack

#endif  // CROWDSTACK_GAME_MODEL_H_
