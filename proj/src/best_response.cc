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

#include "crowdstack/best_response.h"

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "crowdstack/errors.h"

namespace crowdstack {

MixedStrategy::MixedStrategy(std::vector<double> probs)
    : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("mixed strategy is empty");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw DomainError("mixed strategy has invalid probability " +
                        std::to_string(p));
    }
    sum += p;
  }
  if (std::fabs(sum - 1.0) > kStrategySumTolerance) {
    throw DomainError("mixed strategy sums to " + std::to_string(sum));
  }
}

MixedStrategy MixedStrategy::Pure(int num_tasks, TaskId task) {
  if (task < 1 || task > num_tasks) {
    throw IndexError("task id " + std::to_string(task) + " outside 1.." +
                     std::to_string(num_tasks));
  }
  std::vector<double> probs(num_tasks, 0.0);
  probs[task - 1] = 1.0;
  return MixedStrategy(std::move(probs));
}

BestResponse WorkerBestResponse(TaskId recommended, TypeIndex type,
                                const GameSpec& spec) {
  BestResponse best;
  best.chosen_task = 1;
  best.utility = WorkerUtility(recommended, 1, type, spec);
  double best_system = SystemUtility(recommended, 1, type, spec);
  for (TaskId c = 2; c <= spec.num_tasks(); ++c) {
    const double v = WorkerUtility(recommended, c, type, spec);
    if (v > best.utility) {
      best.chosen_task = c;
      best.utility = v;
      best.tie = false;
      best_system = SystemUtility(recommended, c, type, spec);
    } else if (v == best.utility) {
      best.tie = true;
      const double u = SystemUtility(recommended, c, type, spec);
      if (u > best_system) {
        best.chosen_task = c;
        best_system = u;
      }
    }
  }
  return best;
}

double LeaderExpectedUtility(const MixedStrategy& sigma, const GameSpec& spec) {
  if (sigma.size() != spec.num_tasks()) {
    throw StructuralError("strategy has " + std::to_string(sigma.size()) +
                          " entries for " + std::to_string(spec.num_tasks()) +
                          " tasks");
  }
  double total = 0.0;
  for (TypeIndex t = 0; t < spec.num_types(); ++t) {
    double per_type = 0.0;
    for (TaskId s = 1; s <= spec.num_tasks(); ++s) {
      const TaskId c = WorkerBestResponse(s, t, spec).chosen_task;
      per_type += sigma.prob(s) * SystemUtility(s, c, t, spec);
    }
    total += spec.prior[t] * per_type;
  }
  return total;
}

PureCommitment OptimalObservedActionCommitment(const GameSpec& spec) {
  PureCommitment best;
  for (TaskId s = 1; s <= spec.num_tasks(); ++s) {
    const double value =
        LeaderExpectedUtility(MixedStrategy::Pure(spec.num_tasks(), s), spec);
    if (s == 1 || value > best.value) best = {s, value};
  }
  return best;
}

}  // namespace crowdstack
