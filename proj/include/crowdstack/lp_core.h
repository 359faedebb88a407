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

// Dense two-phase primal simplex for the small LPs of the Multiple-LPs
// method. Problems have a handful of variables and a few dozen rows, so the
// solver favours robustness (Bland's rule, explicit artificials) over speed.

#ifndef CROWDSTACK_LP_CORE_H_
#define CROWDSTACK_LP_CORE_H_

#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

namespace crowdstack {

// Smallest pivot element accepted by the ratio test.
inline constexpr double kLpPivotTolerance = 1e-9;
// Reduced-cost, phase-one infeasibility and post-solve feasibility checks.
inline constexpr double kLpFeasibilityTolerance = 1e-7;

struct LinearConstraint {
  std::vector<double> coefficients;
  double bound = 0.0;
};

// maximize objective·x  s.t.  le rows a·x <= b,  eq rows a·x = b,  x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<LinearConstraint> le_constraints;
  std::vector<LinearConstraint> eq_constraints;

  int num_variables() const { return static_cast<int>(objective.size()); }
  int num_constraints() const {
    return static_cast<int>(le_constraints.size() + eq_constraints.size());
  }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view LpStatusName(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::kInfeasible;
  // Both present iff status == kOptimal. value is objective·solution.
  std::optional<std::vector<double>> solution;
  std::optional<double> value;
  int pivots = 0;
};

struct LpOptions {
  // When set, the tableau is printed after every pivot.
  std::ostream* trace = nullptr;
};

// Throws StructuralError when a constraint's length differs from the
// objective's.
LpOutcome SolveLp(const LinearProgram& lp, const LpOptions& options = {});

// Largest violation of any constraint (or of x >= 0) at x.
double MaxConstraintViolation(const LinearProgram& lp,
                              const std::vector<double>& x);

}  // namespace crowdstack

#endif  // CROWDSTACK_LP_CORE_H_
