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

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "crowdstack/best_response.h"
#include "crowdstack/errors.h"

namespace crowdstack {
namespace {

// Relative width of the band around an endpoint reported as "boundary".
constexpr double kBoundaryTolerance = 1e-9;

void RequireTwoTasks(const GameSpec& spec) {
  if (spec.num_tasks() != 2) {
    throw UnsupportedShapeError(
        "disobedience-cost bounds are derived for two-task games only; got " +
        std::to_string(spec.num_tasks()) + " tasks");
  }
}

bool OnEndpoint(double mu, double endpoint) {
  return std::fabs(mu - endpoint) <=
         kBoundaryTolerance * std::max(1.0, std::fabs(endpoint));
}

}  // namespace

MuInterval MuBoundsForType(TypeIndex type, const GameSpec& spec) {
  RequireTwoTasks(spec);
  ValidateOrThrow(spec);
  for (TaskId k = 1; k <= 2; ++k) {
    if (!spec.MeetsDeadline(k)) {
      throw UnsupportedShapeError("task " + std::to_string(k) +
                                  " misses its deadline; the bounds assume "
                                  "both tasks complete in time");
    }
  }
  const bool suits1 = spec.matching.Suits(1, type);
  const bool suits2 = spec.matching.Suits(2, type);
  if (suits1 == suits2) {
    throw DegenerateTypeError(
        "type " + std::to_string(type) +
        (suits1 ? " suits both tasks" : " suits neither task") +
        "; bounds need exactly one matched task");
  }
  const TaskId matched = suits1 ? 1 : 2;
  const TaskId unmatched = suits1 ? 2 : 1;
  const double psi_a = spec.params.worker_reward[matched - 1];
  const double psi_b = spec.params.worker_reward[unmatched - 1];
  const double kappa_b = spec.kappa(unmatched, type);

  MuInterval interval;
  // Matched recommendation: ψ(A) > ψ(B) − κ(B,θ) − μ.
  interval.lower = psi_b - psi_a - kappa_b;
  // Mismatched recommendation: ψ(A) − μ > ψ(B) − κ(B,θ).
  interval.upper = psi_a - psi_b + kappa_b;
  interval.nonempty = interval.lower < interval.upper;
  return interval;
}

MuRegion FeasibleMuRegion(const GameSpec& spec) {
  RequireTwoTasks(spec);
  ValidateOrThrow(spec);
  MuRegion region;
  bool first = true;
  for (TypeIndex t = 0; t < spec.num_types(); ++t) {
    if (!(spec.prior[t] > 0.0)) continue;
    const MuInterval own = MuBoundsForType(t, spec);
    region.types.push_back(t);
    region.per_type.push_back(own);
    if (first || own.lower > region.interval.lower) {
      region.interval.lower = own.lower;
      region.lower_binding = t;
    }
    if (first || own.upper < region.interval.upper) {
      region.interval.upper = own.upper;
      region.upper_binding = t;
    }
    first = false;
  }
  if (first) throw DomainError("no worker type has positive prior");
  region.interval.nonempty = region.interval.lower < region.interval.upper;
  // A type whose own interval is empty blocks by itself.
  for (size_t i = 0; i < region.per_type.size(); ++i) {
    if (!region.per_type[i].nonempty) {
      region.lower_binding = region.upper_binding = region.types[i];
      break;
    }
  }
  return region;
}

SteeringVerdict VerifySteering(const GameSpec& spec, double mu) {
  RequireTwoTasks(spec);
  GameSpec probe = spec;
  probe.params.disobedience_cost = mu;
  ValidateOrThrow(probe);

  SteeringVerdict verdict;
  verdict.mu = mu;
  for (TypeIndex t = 0; t < probe.num_types(); ++t) {
    if (!(probe.prior[t] > 0.0)) continue;
    for (TaskId s = 1; s <= 2; ++s) {
      const TaskId c = WorkerBestResponse(s, t, probe).chosen_task;
      if (!probe.matching.Suits(c, t)) verdict.violations.push_back({t, s, c});
    }
    const bool degenerate =
        probe.matching.Suits(1, t) == probe.matching.Suits(2, t);
    if (!degenerate && probe.MeetsDeadline(1) && probe.MeetsDeadline(2)) {
      const MuInterval own = MuBoundsForType(t, probe);
      if (OnEndpoint(mu, own.lower) || OnEndpoint(mu, own.upper)) {
        verdict.boundary_types.push_back(t);
      }
    }
  }
  return verdict;
}

}  // namespace crowdstack
