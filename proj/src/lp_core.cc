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

#include "crowdstack/lp_core.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <string>
#include <vector>

#include "crowdstack/errors.h"

namespace crowdstack {
namespace {

// Bland's rule terminates; this only guards against a logic bug.
constexpr int kMaxPivots = 1000000;
// Ratios this close to the minimum are treated as tied for Bland's rule.
constexpr double kRatioTieTolerance = 1e-12;

enum class ColumnKind { kStructural, kSlack, kArtificial };

// Dense tableau. Row i reads basis[i] = rhs[i] - Σ_j rows[i][j] x_j over the
// nonbasic j; reduced[j] is the objective gain per unit of column j.
class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::ostream* trace) : trace_(trace) {
    num_structural_ = lp.num_variables();
    struct Row {
      std::vector<double> a;
      double b;
      bool is_eq;
    };
    std::vector<Row> input;
    for (const auto& c : lp.le_constraints) {
      input.push_back({c.coefficients, c.bound, false});
    }
    for (const auto& c : lp.eq_constraints) {
      input.push_back({c.coefficients, c.bound, true});
    }

    // Normalize to b >= 0. A negated <= row becomes >=.
    std::vector<int> sense(input.size());  // +1 <=, -1 >=, 0 =
    for (size_t i = 0; i < input.size(); ++i) {
      sense[i] = input[i].is_eq ? 0 : 1;
      if (input[i].b < 0.0) {
        for (double& v : input[i].a) v = -v;
        input[i].b = -input[i].b;
        sense[i] = -sense[i];
      }
    }

    kinds_.assign(num_structural_, ColumnKind::kStructural);
    std::vector<int> slack_col(input.size(), -1);
    std::vector<int> artificial_col(input.size(), -1);
    for (size_t i = 0; i < input.size(); ++i) {
      if (sense[i] != 0) {
        slack_col[i] = static_cast<int>(kinds_.size());
        kinds_.push_back(ColumnKind::kSlack);
      }
    }
    for (size_t i = 0; i < input.size(); ++i) {
      if (sense[i] != 1) {
        artificial_col[i] = static_cast<int>(kinds_.size());
        kinds_.push_back(ColumnKind::kArtificial);
      }
    }

    const int cols = num_columns();
    rows_.assign(input.size(), std::vector<double>(cols, 0.0));
    rhs_.resize(input.size());
    basis_.resize(input.size());
    for (size_t i = 0; i < input.size(); ++i) {
      std::copy(input[i].a.begin(), input[i].a.end(), rows_[i].begin());
      rhs_[i] = input[i].b;
      if (sense[i] == 1) {
        rows_[i][slack_col[i]] = 1.0;
        basis_[i] = slack_col[i];
      } else {
        if (sense[i] == -1) rows_[i][slack_col[i]] = -1.0;
        rows_[i][artificial_col[i]] = 1.0;
        basis_[i] = artificial_col[i];
      }
    }
  }

  int num_columns() const { return static_cast<int>(kinds_.size()); }
  int pivots() const { return pivots_; }

  std::vector<double> PhaseOneCost() const {
    std::vector<double> cost(num_columns(), 0.0);
    for (int j = 0; j < num_columns(); ++j) {
      if (kinds_[j] == ColumnKind::kArtificial) cost[j] = -1.0;
    }
    return cost;
  }

  bool HasArtificials() const {
    return std::find(kinds_.begin(), kinds_.end(), ColumnKind::kArtificial) !=
           kinds_.end();
  }

  // Loads cost vector (one entry per column) and prices out the basis.
  void SetObjective(const std::vector<double>& cost) {
    cost_ = cost;
    reduced_ = cost;
    for (size_t i = 0; i < rows_.size(); ++i) {
      const double cb = cost_[basis_[i]];
      if (cb == 0.0) continue;
      for (int j = 0; j < num_columns(); ++j) reduced_[j] -= cb * rows_[i][j];
    }
  }

  // Runs simplex iterations until optimal (true) or unbounded (false).
  bool Optimize(bool allow_artificials) {
    while (true) {
      int enter = -1;
      for (int j = 0; j < num_columns(); ++j) {
        if (!allow_artificials && kinds_[j] == ColumnKind::kArtificial) {
          continue;
        }
        if (reduced_[j] > kLpFeasibilityTolerance) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best_ratio = 0.0;
      for (size_t i = 0; i < rows_.size(); ++i) {
        const double a = rows_[i][enter];
        if (a <= kLpPivotTolerance) continue;
        const double ratio = rhs_[i] / a;
        const double slack = kRatioTieTolerance * (1.0 + std::fabs(best_ratio));
        if (leave < 0 || ratio < best_ratio - slack) {
          best_ratio = ratio;
          leave = static_cast<int>(i);
        } else if (ratio <= best_ratio + slack && basis_[i] < basis_[leave]) {
          leave = static_cast<int>(i);
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
  }

  double ObjectiveValue() const {
    double z = 0.0;
    for (size_t i = 0; i < rows_.size(); ++i) z += cost_[basis_[i]] * rhs_[i];
    return z;
  }

  // After phase one: pivot basic artificials out, or drop their rows when
  // the row is a combination of the others.
  void EvictArtificials() {
    for (size_t i = 0; i < rows_.size();) {
      if (kinds_[basis_[i]] != ColumnKind::kArtificial) {
        ++i;
        continue;
      }
      int enter = -1;
      for (int j = 0; j < num_columns(); ++j) {
        if (kinds_[j] != ColumnKind::kArtificial &&
            std::fabs(rows_[i][j]) > kLpPivotTolerance) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) {
        Pivot(static_cast<int>(i), enter);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  std::vector<double> StructuralSolution() const {
    std::vector<double> x(num_structural_, 0.0);
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < num_structural_) x[basis_[i]] = rhs_[i];
    }
    return x;
  }

 private:
  void Pivot(int row, int col) {
    if (++pivots_ > kMaxPivots) {
      throw InternalError("simplex exceeded pivot limit");
    }
    std::vector<double>& pr = rows_[row];
    const double p = pr[col];
    for (double& v : pr) v /= p;
    rhs_[row] /= p;
    pr[col] = 1.0;
    for (size_t i = 0; i < rows_.size(); ++i) {
      if (static_cast<int>(i) == row) continue;
      const double f = rows_[i][col];
      if (f == 0.0) continue;
      for (int j = 0; j < num_columns(); ++j) rows_[i][j] -= f * pr[j];
      rows_[i][col] = 0.0;
      rhs_[i] -= f * rhs_[row];
    }
    const double f = reduced_[col];
    if (f != 0.0) {
      for (int j = 0; j < num_columns(); ++j) reduced_[j] -= f * pr[j];
      reduced_[col] = 0.0;
    }
    basis_[row] = col;
    if (trace_ != nullptr) Dump(row, col);
  }

  void Dump(int row, int col) const {
    std::ostream& os = *trace_;
    os << "pivot " << pivots_ << ": row " << row << ", column " << col << "\n";
    os << std::setprecision(6);
    for (size_t i = 0; i < rows_.size(); ++i) {
      os << "  x" << basis_[i] << " |";
      for (double v : rows_[i]) os << ' ' << std::setw(10) << v;
      os << " | " << std::setw(10) << rhs_[i] << "\n";
    }
    os << "  red |";
    for (double v : reduced_) os << ' ' << std::setw(10) << v;
    os << "\n";
  }

  std::ostream* trace_;
  int num_structural_ = 0;
  std::vector<ColumnKind> kinds_;
  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
  std::vector<int> basis_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  int pivots_ = 0;
};

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void CheckShape(const LinearProgram& lp) {
  const size_t n = lp.objective.size();
  auto check = [n](const std::vector<LinearConstraint>& rows,
                   const char* kind) {
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].coefficients.size() != n) {
        throw StructuralError(std::string(kind) + " constraint " +
                              std::to_string(i) + " has " +
                              std::to_string(rows[i].coefficients.size()) +
                              " coefficients, objective has " +
                              std::to_string(n));
      }
    }
  };
  check(lp.le_constraints, "inequality");
  check(lp.eq_constraints, "equality");
}

}  // namespace

std::string_view LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "unknown";
}

LpOutcome SolveLp(const LinearProgram& lp, const LpOptions& options) {
  CheckShape(lp);
  Tableau tableau(lp, options.trace);
  LpOutcome outcome;

  if (tableau.HasArtificials()) {
    // Maximize minus the sum of artificials.
    const std::vector<double> phase_one = tableau.PhaseOneCost();
    tableau.SetObjective(phase_one);
    tableau.Optimize(/*allow_artificials=*/true);
    if (-tableau.ObjectiveValue() > kLpFeasibilityTolerance) {
      outcome.status = LpStatus::kInfeasible;
      outcome.pivots = tableau.pivots();
      return outcome;
    }
    tableau.EvictArtificials();
  }

  std::vector<double> cost(tableau.num_columns(), 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), cost.begin());
  tableau.SetObjective(cost);
  if (!tableau.Optimize(/*allow_artificials=*/false)) {
    outcome.status = LpStatus::kUnbounded;
    outcome.pivots = tableau.pivots();
    return outcome;
  }
  outcome.status = LpStatus::kOptimal;
  outcome.solution = tableau.StructuralSolution();
  outcome.value = Dot(lp.objective, *outcome.solution);
  outcome.pivots = tableau.pivots();
  return outcome;
}

double MaxConstraintViolation(const LinearProgram& lp,
                              const std::vector<double>& x) {
  CheckShape(lp);
  if (x.size() != lp.objective.size()) {
    throw StructuralError("point has " + std::to_string(x.size()) +
                          " entries, program has " +
                          std::to_string(lp.objective.size()));
  }
  double worst = 0.0;
  for (double v : x) worst = std::max(worst, -v);
  for (const auto& c : lp.le_constraints) {
    worst = std::max(worst, Dot(c.coefficients, x) - c.bound);
  }
  for (const auto& c : lp.eq_constraints) {
    worst = std::max(worst, std::fabs(Dot(c.coefficients, x) - c.bound));
  }
  return worst;
}

}  // namespace crowdstack
