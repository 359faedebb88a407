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

#include "crowdstack/simulation.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "crowdstack/errors.h"

namespace crowdstack {
namespace {

double UnitInterval(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Index i with cumulative[i-1] <= u < cumulative[i]. Zero-weight entries are
// never selected; round-off past the last cumulative value falls back to the
// last positive entry.
int Draw(const std::vector<double>& cumulative,
         const std::vector<double>& weights, double u) {
  for (size_t i = 0; i < cumulative.size(); ++i) {
    if (weights[i] > 0.0 && u < cumulative[i]) return static_cast<int>(i);
  }
  for (size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return static_cast<int>(i);
  }
  throw InternalError("sampling from an all-zero distribution");
}

std::vector<double> Cumulative(const std::vector<double>& w) {
  std::vector<double> c(w.size());
  double acc = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    acc += w[i];
    c[i] = acc;
  }
  return c;
}

}  // namespace

SimulationReport Simulate(const GameSpec& spec, const MixedStrategy& sigma,
                          std::int64_t rounds, std::uint64_t seed) {
  if (rounds < 1) {
    throw DomainError("rounds must be >= 1, got " + std::to_string(rounds));
  }
  ValidateOrThrow(spec);
  if (sigma.size() != spec.num_tasks()) {
    throw StructuralError("strategy has " + std::to_string(sigma.size()) +
                          " entries for " + std::to_string(spec.num_tasks()) +
                          " tasks");
  }

  // Best responses depend only on (s, θ); tabulate them once.
  const int num_tasks = spec.num_tasks();
  const int num_types = spec.num_types();
  struct Outcome {
    double leader;
    double worker;
    bool obeyed;
    bool matched;
  };
  std::vector<Outcome> table(static_cast<size_t>(num_tasks) * num_types);
  for (TypeIndex t = 0; t < num_types; ++t) {
    for (TaskId s = 1; s <= num_tasks; ++s) {
      const BestResponse br = WorkerBestResponse(s, t, spec);
      table[static_cast<size_t>(t) * num_tasks + (s - 1)] = {
          SystemUtility(s, br.chosen_task, t, spec), br.utility,
          br.chosen_task == s, spec.matching.Suits(br.chosen_task, t)};
    }
  }

  const std::vector<double> type_cdf = Cumulative(spec.prior);
  const std::vector<double> task_cdf = Cumulative(sigma.probs());
  std::mt19937_64 rng(seed);

  SimulationReport report;
  report.rounds = rounds;
  report.seed = seed;
  report.per_type_counts.assign(num_types, 0);
  double leader_sum = 0.0;
  double leader_sq_sum = 0.0;
  double worker_sum = 0.0;
  std::int64_t obeyed = 0;
  std::int64_t matched = 0;
  for (std::int64_t r = 0; r < rounds; ++r) {
    const int t = Draw(type_cdf, spec.prior, UnitInterval(rng));
    const int s = Draw(task_cdf, sigma.probs(), UnitInterval(rng)) + 1;
    const Outcome& o = table[static_cast<size_t>(t) * num_tasks + (s - 1)];
    ++report.per_type_counts[t];
    leader_sum += o.leader;
    leader_sq_sum += o.leader * o.leader;
    worker_sum += o.worker;
    obeyed += o.obeyed ? 1 : 0;
    matched += o.matched ? 1 : 0;
  }
  const double n = static_cast<double>(rounds);
  report.mean_leader_utility = leader_sum / n;
  report.mean_worker_utility = worker_sum / n;
  if (rounds > 1) {
    const double var =
        (leader_sq_sum - leader_sum * leader_sum / n) / (n - 1.0);
    report.leader_utility_sd = std::sqrt(std::max(var, 0.0));
  }
  report.obedience_rate = static_cast<double>(obeyed) / n;
  report.match_rate = static_cast<double>(matched) / n;
  return report;
}

}  // namespace crowdstack
