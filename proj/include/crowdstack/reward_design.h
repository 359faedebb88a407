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

// Disobedience-cost design for two-task games.
//
// For a type θ that suits task A and not task B, a worker obeys a matched
// recommendation (s = A) iff
//     μ > ψ(B) − ψ(A) − κ(B,θ)
// and walks away from a mismatched one (s = B) iff
//     μ < ψ(A) − ψ(B) + κ(B,θ).
// Every type ends up on its matched task exactly when μ lies strictly inside
// the intersection of these open intervals over the types with positive
// prior.

#ifndef CROWDSTACK_REWARD_DESIGN_H_
#define CROWDSTACK_REWARD_DESIGN_H_

#include <vector>

#include "crowdstack/game_model.h"

namespace crowdstack {

// Open interval (lower, upper).
struct MuInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool nonempty = false;
};

// Throws UnsupportedShapeError unless K == 2 and both tasks meet their
// deadlines; DegenerateTypeError when the type suits both tasks or neither.
MuInterval MuBoundsForType(TypeIndex type, const GameSpec& spec);

struct MuRegion {
  MuInterval interval;
  // Types with positive prior, in index order, and their own intervals.
  std::vector<TypeIndex> types;
  std::vector<MuInterval> per_type;
  // Types attaining the region's lower bound (obey-when-matched side) and
  // upper bound (refuse-when-mismatched side). When the region is empty
  // these two form the blocking pair; they coincide when a single type's
  // own interval is empty.
  TypeIndex lower_binding = 0;
  TypeIndex upper_binding = 0;
};

// Intersection over every type with positive prior. Throws like
// MuBoundsForType.
MuRegion FeasibleMuRegion(const GameSpec& spec);

struct SteeringViolation {
  TypeIndex type = 0;
  TaskId recommended = 1;
  TaskId chosen = 1;

  bool operator==(const SteeringViolation&) const = default;
};

struct SteeringVerdict {
  double mu = 0.0;
  std::vector<SteeringViolation> violations;
  // Types for which μ sits on an interval endpoint; the outcome there is
  // decided by tie-breaking rather than by the strict bounds.
  std::vector<TypeIndex> boundary_types;

  bool steered() const { return violations.empty(); }
  bool on_boundary() const { return !boundary_types.empty(); }
};

// Replaces μ and checks that every type with positive prior picks a task
// it suits under each recommendation. Throws UnsupportedShapeError unless
// K == 2 and InvalidSpecError for a negative μ.
SteeringVerdict VerifySteering(const GameSpec& spec, double mu);

}  // namespace crowdstack

#endif  // CROWDSTACK_REWARD_DESIGN_H_
