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

#include "crowdstack/game_model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "crowdstack/errors.h"

namespace crowdstack {
namespace {

constexpr double kPriorSumTolerance = 1e-9;

std::string Real(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string TaskTypePair(TaskId task, TypeIndex type) {
  return "(" + std::to_string(task) + "," + std::to_string(type) + ")";
}

void CheckTask(TaskId task, int num_tasks) {
  if (task < 1 || task > num_tasks) {
    throw IndexError("task id " + std::to_string(task) + " outside 1.." +
                     std::to_string(num_tasks));
  }
}

void CheckType(TypeIndex type, int num_types) {
  if (type < 0 || type >= num_types) {
    throw IndexError("type index " + std::to_string(type) + " outside 0.." +
                     std::to_string(num_types - 1));
  }
}

bool IsPermutation(const std::vector<TaskId>& order, int num_tasks) {
  if (static_cast<int>(order.size()) != num_tasks) return false;
  std::vector<TaskId> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < num_tasks; ++i) {
    if (sorted[i] != i + 1) return false;
  }
  return true;
}

std::string Join(const std::vector<TaskId>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

}  // namespace

MatchingTable::MatchingTable(int num_tasks, int num_types, int fill)
    : num_tasks_(num_tasks),
      num_types_(num_types),
      entries_(static_cast<size_t>(num_tasks) * num_types, fill) {}

int MatchingTable::At(TaskId task, TypeIndex type) const {
  CheckTask(task, num_tasks_);
  CheckType(type, num_types_);
  return entries_[static_cast<size_t>(task - 1) * num_types_ + type];
}

void MatchingTable::Set(TaskId task, TypeIndex type, int value) {
  CheckTask(task, num_tasks_);
  CheckType(type, num_types_);
  entries_[static_cast<size_t>(task - 1) * num_types_ + type] = value;
}

const TaskType& GameSpec::task(TaskId id) const {
  CheckTask(id, num_tasks());
  return tasks[id - 1];
}

double GameSpec::kappa(TaskId task, TypeIndex type) const {
  CheckTask(task, static_cast<int>(params.mismatch_cost.size()));
  const auto& row = params.mismatch_cost[task - 1];
  CheckType(type, static_cast<int>(row.size()));
  return row[type];
}

bool GameSpec::MeetsDeadline(TaskId id) const {
  const TaskType& t = task(id);
  return t.completion_time <= t.deadline;
}

std::string Violation::ToString() const {
  return field + ": " + constraint + " (observed " + observed + ")";
}

int BetaCategory(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) {
    throw DomainError("cognitive atrophy rate " + Real(beta) +
                      " outside [0, 1]");
  }
  if (beta <= 0.25) return 1;
  if (beta <= 0.50) return 2;
  if (beta <= 0.75) return 3;
  return 4;
}

std::int64_t WorkerTypeCount(int num_tasks) {
  if (num_tasks < 1) {
    throw DomainError("task count must be >= 1, got " +
                      std::to_string(num_tasks));
  }
  if (num_tasks > kMaxEnumeratedTasks) {
    throw CapacityError("type enumeration supports at most " +
                        std::to_string(kMaxEnumeratedTasks) +
                        " tasks, got " + std::to_string(num_tasks));
  }
  std::int64_t factorial = 1;
  for (int k = 2; k <= num_tasks; ++k) factorial *= k;
  return kNumBetaCategories * factorial;
}

std::vector<WorkerType> EnumerateWorkerTypes(int num_tasks) {
  const std::int64_t count = WorkerTypeCount(num_tasks);
  std::vector<WorkerType> types;
  types.reserve(static_cast<size_t>(count));
  for (int category = 1; category <= kNumBetaCategories; ++category) {
    std::vector<TaskId> order(num_tasks);
    std::iota(order.begin(), order.end(), 1);
    // std::next_permutation walks permutations in lexicographic order.
    do {
      types.push_back(WorkerType{category, order});
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return types;
}

bool HasFullTypeEnumeration(const GameSpec& spec) {
  if (spec.num_tasks() < 1 || spec.num_tasks() > kMaxEnumeratedTasks) {
    return false;
  }
  if (spec.num_types() != WorkerTypeCount(spec.num_tasks())) return false;
  return spec.worker_types == EnumerateWorkerTypes(spec.num_tasks());
}

double SystemUtility(TaskId recommended, TaskId chosen, TypeIndex type,
                     const GameSpec& spec) {
  CheckTask(recommended, spec.num_tasks());
  CheckTask(chosen, spec.num_tasks());
  CheckType(type, spec.num_types());
  if (!spec.MeetsDeadline(chosen)) return 0.0;
  const double reward = spec.params.system_reward[chosen - 1];
  if (chosen == recommended) return reward;
  return reward - spec.params.persuasion_inefficiency;
}

double WorkerUtility(TaskId recommended, TaskId chosen, TypeIndex type,
                     const GameSpec& spec) {
  CheckTask(recommended, spec.num_tasks());
  CheckTask(chosen, spec.num_tasks());
  CheckType(type, spec.num_types());
  if (!spec.MeetsDeadline(chosen)) return 0.0;
  double value = spec.params.worker_reward[chosen - 1];
  // The κ term is skipped outright for suited tasks so that κ cannot leak
  // into the value (0·inf, signed zeros).
  if (!spec.matching.Suits(chosen, type)) value -= spec.kappa(chosen, type);
  if (chosen == recommended) return value;
  return value - spec.params.disobedience_cost;
}

MatchingTable DefaultMatching(const std::vector<TaskType>& tasks,
                              const std::vector<WorkerType>& worker_types,
                              int threshold) {
  if (threshold < 1 || threshold > kNumBetaCategories) {
    throw DomainError("matching threshold " + std::to_string(threshold) +
                      " outside 1..4");
  }
  const int num_tasks = static_cast<int>(tasks.size());
  const int num_types = static_cast<int>(worker_types.size());
  MatchingTable table(num_tasks, num_types, 0);
  for (int k = 0; k < num_tasks; ++k) {
    if (!tasks[k].strenuous) continue;
    for (int t = 0; t < num_types; ++t) {
      if (worker_types[t].beta_category > threshold) table.Set(k + 1, t, 1);
    }
  }
  return table;
}

std::vector<Violation> Validate(const GameSpec& spec) {
  std::vector<Violation> out;
  auto add = [&out](std::string field, std::string constraint,
                    std::string observed) {
    out.push_back({std::move(field), std::move(constraint),
                   std::move(observed)});
  };
  const int num_tasks = spec.num_tasks();
  const int num_types = spec.num_types();

  if (num_tasks < 2) {
    add("tasks", "at least 2 tasks required", std::to_string(num_tasks));
  }
  if (num_types < 1) {
    add("worker_types", "at least 1 worker type required",
        std::to_string(num_types));
  }

  for (int i = 0; i < num_tasks; ++i) {
    const TaskType& t = spec.tasks[i];
    const std::string where = "tasks[" + std::to_string(i) + "]";
    if (t.id != i + 1) {
      add(where + ".id", "ids must enumerate 1..K in order",
          std::to_string(t.id));
    }
    if (!(t.deadline > 0.0) || !std::isfinite(t.deadline)) {
      add(where + ".deadline", "must be positive and finite", Real(t.deadline));
    }
    if (!(t.completion_time > 0.0) || !std::isfinite(t.completion_time)) {
      add(where + ".completion_time", "must be positive and finite",
          Real(t.completion_time));
    }
    if (!(t.posted_reward >= 0.0) || !std::isfinite(t.posted_reward)) {
      add(where + ".posted_reward", "must be nonnegative and finite",
          Real(t.posted_reward));
    }
  }

  for (int i = 0; i < num_types; ++i) {
    const WorkerType& w = spec.worker_types[i];
    const std::string where = "worker_types[" + std::to_string(i) + "]";
    if (w.beta_category < 1 || w.beta_category > kNumBetaCategories) {
      add(where + ".beta_category", "must be in 1..4",
          std::to_string(w.beta_category));
    }
    if (!IsPermutation(w.preference_order, num_tasks)) {
      add(where + ".preference_order", "must be a permutation of 1..K",
          Join(w.preference_order));
    }
  }
  for (int i = 1; i < num_types; ++i) {
    for (int j = 0; j < i; ++j) {
      if (spec.worker_types[i] == spec.worker_types[j]) {
        add("worker_types[" + std::to_string(i) + "]",
            "types must be distinct", "duplicate of index " + std::to_string(j));
        break;
      }
    }
  }

  if (static_cast<int>(spec.prior.size()) != num_types) {
    add("prior", "length must equal the number of types",
        std::to_string(spec.prior.size()));
  } else {
    double sum = 0.0;
    bool finite = true;
    for (int i = 0; i < num_types; ++i) {
      const double p = spec.prior[i];
      if (!std::isfinite(p)) finite = false;
      if (!(p >= 0.0)) {
        add("prior[" + std::to_string(i) + "]", "must be nonnegative", Real(p));
      }
      sum += p;
    }
    if (finite && std::fabs(sum - 1.0) > kPriorSumTolerance) {
      add("prior", "must sum to 1 within 1e-9", "sum " + Real(sum));
    }
  }

  const MatchingTable& m = spec.matching;
  if (m.num_tasks() != num_tasks || m.num_types() != num_types) {
    add("matching", "shape must be K x Θ",
        std::to_string(m.num_tasks()) + "x" + std::to_string(m.num_types()));
  } else {
    for (int k = 1; k <= num_tasks; ++k) {
      for (int t = 0; t < num_types; ++t) {
        const int v = m.At(k, t);
        if (v != 0 && v != 1) {
          add("matching" + TaskTypePair(k, t), "must be 0 or 1",
              std::to_string(v));
        }
      }
    }
  }

  const UtilityParams& p = spec.params;
  auto check_per_task = [&](const std::vector<double>& v,
                            const std::string& name) {
    if (static_cast<int>(v.size()) != num_tasks) {
      add(name, "length must equal the number of tasks",
          std::to_string(v.size()));
      return false;
    }
    for (int k = 0; k < num_tasks; ++k) {
      if (!(v[k] >= 0.0) || !std::isfinite(v[k])) {
        add(name + "[" + std::to_string(k + 1) + "]",
            "must be nonnegative and finite", Real(v[k]));
      }
    }
    return true;
  };
  check_per_task(p.system_reward, "params.phi");
  const bool psi_ok = check_per_task(p.worker_reward, "params.psi");

  if (static_cast<int>(p.mismatch_cost.size()) != num_tasks) {
    add("params.kappa", "must have one row per task",
        std::to_string(p.mismatch_cost.size()));
  } else {
    for (int k = 1; k <= num_tasks; ++k) {
      const auto& row = p.mismatch_cost[k - 1];
      if (static_cast<int>(row.size()) != num_types) {
        add("params.kappa[" + std::to_string(k) + "]",
            "must have one entry per type", std::to_string(row.size()));
        continue;
      }
      for (int t = 0; t < num_types; ++t) {
        const double kappa = row[t];
        if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
          add("params.kappa" + TaskTypePair(k, t),
              "must be nonnegative and finite", Real(kappa));
        } else if (psi_ok && kappa > p.worker_reward[k - 1]) {
          add("params.kappa" + TaskTypePair(k, t),
              "must not exceed psi[" + std::to_string(k) +
                  "] = " + Real(p.worker_reward[k - 1]),
              Real(kappa));
        }
      }
    }
  }
  if (!(p.disobedience_cost >= 0.0) || !std::isfinite(p.disobedience_cost)) {
    add("params.mu", "must be nonnegative and finite",
        Real(p.disobedience_cost));
  }
  if (!(p.persuasion_inefficiency >= 0.0) ||
      !std::isfinite(p.persuasion_inefficiency)) {
    add("params.lambda", "must be nonnegative and finite",
        Real(p.persuasion_inefficiency));
  }
  return out;
}

void ValidateOrThrow(const GameSpec& spec) {
  const std::vector<Violation> violations = Validate(spec);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid game spec (" << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << ")";
  for (const Violation& v : violations) msg << "\n  " << v.ToString();
  throw InvalidSpecError(msg.str());
}

}  // namespace crowdstack
