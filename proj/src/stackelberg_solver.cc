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

#include "crowdstack/stackelberg_solver.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "crowdstack/errors.h"

namespace crowdstack {
namespace {

// Best feasible profile within a contiguous block of profile indices.
struct BlockResult {
  bool found = false;
  std::int64_t index = 0;
  double value = 0.0;
  std::vector<double> x;
  LpStatusTally tally;
};

BlockResult SolveBlock(const GameSpec& spec, std::int64_t begin,
                       std::int64_t end) {
  BlockResult block;
  const int num_tasks = spec.num_tasks();
  const int num_types = spec.num_types();
  for (std::int64_t j = begin; j < end; ++j) {
    const FollowerProfile profile =
        FollowerProfile::FromIndex(j, num_tasks, num_types);
    const LpOutcome outcome = SolveLp(ProfileProgram(spec, profile));
    switch (outcome.status) {
      case LpStatus::kOptimal:
        ++block.tally.optimal;
        if (!block.found || *outcome.value > block.value) {
          block.found = true;
          block.index = j;
          block.value = *outcome.value;
          block.x = *outcome.solution;
        }
        break;
      case LpStatus::kInfeasible:
        ++block.tally.infeasible;
        break;
      case LpStatus::kUnbounded:
        throw InternalError("profile LP " + std::to_string(j) +
                            " is unbounded over the probability simplex");
    }
  }
  return block;
}

// Simplex output can carry round-off just outside the simplex.
MixedStrategy ToStrategy(std::vector<double> x) {
  double sum = 0.0;
  for (double& v : x) {
    v = std::max(v, 0.0);
    sum += v;
  }
  if (!(sum > 0.0)) throw InternalError("LP returned an all-zero strategy");
  for (double& v : x) v /= sum;
  return MixedStrategy(std::move(x));
}

std::string FormatCell(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::int64_t FollowerProfile::Index(int num_tasks) const {
  std::int64_t index = 0;
  std::int64_t weight = 1;
  for (TaskId c : assignment) {
    index += (c - 1) * weight;
    weight *= num_tasks;
  }
  return index;
}

FollowerProfile FollowerProfile::FromIndex(std::int64_t index, int num_tasks,
                                           int num_types) {
  FollowerProfile profile;
  profile.assignment.resize(num_types);
  for (int t = 0; t < num_types; ++t) {
    profile.assignment[t] = static_cast<TaskId>(index % num_tasks) + 1;
    index /= num_tasks;
  }
  return profile;
}

std::int64_t ProfileCount(int num_tasks, int num_types,
                          std::int64_t cell_budget) {
  if (num_tasks < 1 || num_types < 1) {
    throw DomainError("profile count needs K >= 1 and Θ >= 1");
  }
  std::int64_t cols = 1;
  for (int t = 0; t < num_types; ++t) {
    if (cols > cell_budget / num_tasks / num_tasks) {
      throw CapacityError("K^Θ = " + std::to_string(num_tasks) + "^" +
                          std::to_string(num_types) +
                          " follower profiles exceed the cell budget of " +
                          std::to_string(cell_budget));
    }
    cols *= num_tasks;
  }
  return cols;
}

NormalFormGame::NormalFormGame(int rows, std::int64_t cols)
    : rows_(rows),
      cols_(cols),
      leader_(static_cast<std::size_t>(rows) * cols, 0.0),
      follower_(static_cast<std::size_t>(rows) * cols, 0.0) {}

std::size_t NormalFormGame::Offset(TaskId s, std::int64_t col) const {
  if (s < 1 || s > rows_ || col < 0 || col >= cols_) {
    throw IndexError("cell (" + std::to_string(s) + ", " +
                     std::to_string(col) + ") outside the normal-form game");
  }
  return static_cast<std::size_t>(s - 1) * cols_ + col;
}

double NormalFormGame::leader(TaskId s, std::int64_t col) const {
  return leader_[Offset(s, col)];
}

double NormalFormGame::follower(TaskId s, std::int64_t col) const {
  return follower_[Offset(s, col)];
}

void NormalFormGame::set(TaskId s, std::int64_t col, double leader,
                         double follower) {
  const std::size_t at = Offset(s, col);
  leader_[at] = leader;
  follower_[at] = follower;
}

NormalFormGame HarsanyiTransform(const GameSpec& spec,
                                 std::int64_t cell_budget) {
  ValidateOrThrow(spec);
  const int num_tasks = spec.num_tasks();
  const int num_types = spec.num_types();
  const std::int64_t cols = ProfileCount(num_tasks, num_types, cell_budget);
  NormalFormGame game(num_tasks, cols);
  for (std::int64_t j = 0; j < cols; ++j) {
    const FollowerProfile profile =
        FollowerProfile::FromIndex(j, num_tasks, num_types);
    for (TaskId s = 1; s <= num_tasks; ++s) {
      double leader = 0.0;
      double follower = 0.0;
      for (TypeIndex t = 0; t < num_types; ++t) {
        const TaskId c = profile.assignment[t];
        leader += spec.prior[t] * SystemUtility(s, c, t, spec);
        follower += spec.prior[t] * WorkerUtility(s, c, t, spec);
      }
      game.set(s, j, leader, follower);
    }
  }
  return game;
}

void WriteNormalFormGame(const NormalFormGame& game, std::ostream& os) {
  auto write_block = [&](const char* name, bool leader) {
    os << name;
    for (std::int64_t j = 0; j < game.cols(); ++j) os << '\t' << j;
    os << '\n';
    for (TaskId s = 1; s <= game.rows(); ++s) {
      os << s;
      for (std::int64_t j = 0; j < game.cols(); ++j) {
        os << '\t'
           << FormatCell(leader ? game.leader(s, j) : game.follower(s, j));
      }
      os << '\n';
    }
  };
  write_block("leader", true);
  write_block("follower", false);
}

LinearProgram ProfileProgram(const GameSpec& spec,
                             const FollowerProfile& profile) {
  const int num_tasks = spec.num_tasks();
  const int num_types = spec.num_types();
  if (static_cast<int>(profile.assignment.size()) != num_types) {
    throw StructuralError("profile assigns " +
                          std::to_string(profile.assignment.size()) +
                          " types, game has " + std::to_string(num_types));
  }
  LinearProgram lp;
  lp.objective.assign(num_tasks, 0.0);
  for (TaskId s = 1; s <= num_tasks; ++s) {
    double coeff = 0.0;
    for (TypeIndex t = 0; t < num_types; ++t) {
      coeff += spec.prior[t] * SystemUtility(s, profile.assignment[t], t, spec);
    }
    lp.objective[s - 1] = coeff;
  }
  // Σ_s σ(s)·(v(s, c', θ) − v(s, c(θ), θ)) <= 0 for every alternative c'.
  for (TypeIndex t = 0; t < num_types; ++t) {
    const TaskId assigned = profile.assignment[t];
    for (TaskId alt = 1; alt <= num_tasks; ++alt) {
      if (alt == assigned) continue;
      LinearConstraint row;
      row.coefficients.resize(num_tasks);
      for (TaskId s = 1; s <= num_tasks; ++s) {
        row.coefficients[s - 1] =
            WorkerUtility(s, alt, t, spec) - WorkerUtility(s, assigned, t, spec);
      }
      row.bound = 0.0;
      lp.le_constraints.push_back(std::move(row));
    }
  }
  lp.eq_constraints.push_back({std::vector<double>(num_tasks, 1.0), 1.0});
  return lp;
}

SolveResult SolveMultipleLps(const GameSpec& spec,
                             const SolverOptions& options) {
  ValidateOrThrow(spec);
  const int num_tasks = spec.num_tasks();
  const int num_types = spec.num_types();
  const std::int64_t cols =
      ProfileCount(num_tasks, num_types, options.cell_budget);

  const std::int64_t workers = std::clamp<std::int64_t>(
      options.num_threads, 1, std::max<std::int64_t>(cols, 1));
  std::vector<BlockResult> blocks(static_cast<std::size_t>(workers));
  if (workers == 1) {
    blocks[0] = SolveBlock(spec, 0, cols);
  } else {
    std::vector<std::exception_ptr> errors(blocks.size());
    {
      std::vector<std::jthread> threads;
      for (std::int64_t w = 0; w < workers; ++w) {
        const std::int64_t begin = cols * w / workers;
        const std::int64_t end = cols * (w + 1) / workers;
        threads.emplace_back([&, w, begin, end] {
          try {
            blocks[w] = SolveBlock(spec, begin, end);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Blocks are contiguous and ascending, so "first strictly greater" in
  // block order matches a serial scan.
  const BlockResult* best = nullptr;
  LpStatusTally tally;
  for (const BlockResult& b : blocks) {
    tally.optimal += b.tally.optimal;
    tally.infeasible += b.tally.infeasible;
    if (b.found && (best == nullptr || b.value > best->value)) best = &b;
  }
  if (best == nullptr) {
    throw InternalError("all " + std::to_string(cols) +
                        " profile LPs are infeasible");
  }

  SolveResult result;
  result.sigma = ToStrategy(best->x);
  result.profile_index = best->index;
  result.profile = FollowerProfile::FromIndex(best->index, num_tasks, num_types);
  result.leader_value = best->value;
  result.lps_solved = tally.optimal + tally.infeasible;
  result.lp_statuses = tally;
  return result;
}

double FollowerValueUnderMixed(const MixedStrategy& sigma, TaskId chosen,
                               TypeIndex type, const GameSpec& spec) {
  double v = 0.0;
  for (TaskId s = 1; s <= spec.num_tasks(); ++s) {
    v += sigma.prob(s) * WorkerUtility(s, chosen, type, spec);
  }
  return v;
}

double LeaderValueUnderMixed(const MixedStrategy& sigma, TaskId chosen,
                             TypeIndex type, const GameSpec& spec) {
  double u = 0.0;
  for (TaskId s = 1; s <= spec.num_tasks(); ++s) {
    u += sigma.prob(s) * SystemUtility(s, chosen, type, spec);
  }
  return u;
}

TaskId FollowerResponseToMixed(const MixedStrategy& sigma, TypeIndex type,
                               const GameSpec& spec) {
  const int num_tasks = spec.num_tasks();
  std::vector<double> values(num_tasks);
  double top = -std::numeric_limits<double>::infinity();
  for (TaskId c = 1; c <= num_tasks; ++c) {
    values[c - 1] = FollowerValueUnderMixed(sigma, c, type, spec);
    top = std::max(top, values[c - 1]);
  }
  TaskId best = 0;
  double best_leader = 0.0;
  for (TaskId c = 1; c <= num_tasks; ++c) {
    if (values[c - 1] < top - kMixedTieTolerance) continue;
    const double u = LeaderValueUnderMixed(sigma, c, type, spec);
    if (best == 0 || u > best_leader) {
      best = c;
      best_leader = u;
    }
  }
  return best;
}

double BruteForceCommitmentValue(const GameSpec& spec, int grid) {
  if (spec.num_tasks() != 2) {
    throw UnsupportedShapeError(
        "grid commitment search needs exactly 2 tasks, got " +
        std::to_string(spec.num_tasks()));
  }
  if (grid < 0) {
    throw DomainError("grid size must be >= 0, got " + std::to_string(grid));
  }
  ValidateOrThrow(spec);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    const double p = grid == 0 ? 0.0 : static_cast<double>(i) / grid;
    const MixedStrategy sigma({p, 1.0 - p});
    double value = 0.0;
    for (TypeIndex t = 0; t < spec.num_types(); ++t) {
      const TaskId c = FollowerResponseToMixed(sigma, t, spec);
      value += spec.prior[t] * LeaderValueUnderMixed(sigma, c, t, spec);
    }
    best = std::max(best, value);
  }
  return best;
}

double LeaderLipschitzBound(const GameSpec& spec) {
  if (spec.num_tasks() != 2) {
    throw UnsupportedShapeError("Lipschitz bound defined for 2 tasks only");
  }
  double bound = 0.0;
  for (TypeIndex t = 0; t < spec.num_types(); ++t) {
    double slope = 0.0;
    for (TaskId c = 1; c <= 2; ++c) {
      slope = std::max(slope, std::fabs(SystemUtility(1, c, t, spec) -
                                        SystemUtility(2, c, t, spec)));
    }
    bound += spec.prior[t] * slope;
  }
  return bound;
}

CommitmentCheck CheckCommitment(const GameSpec& spec, const SolveResult& result,
                                double tolerance) {
  CommitmentCheck check;
  const LinearProgram lp = ProfileProgram(spec, result.profile);
  check.max_constraint_violation =
      MaxConstraintViolation(lp, result.sigma.probs());
  for (TypeIndex t = 0; t < spec.num_types(); ++t) {
    const TaskId assigned = result.profile.assignment[t];
    const double v_assigned =
        FollowerValueUnderMixed(result.sigma, assigned, t, spec);
    const double u_assigned =
        LeaderValueUnderMixed(result.sigma, assigned, t, spec);
    bool consistent = true;
    for (TaskId c = 1; c <= spec.num_tasks(); ++c) {
      if (c == assigned) continue;
      const double v = FollowerValueUnderMixed(result.sigma, c, t, spec);
      if (v > v_assigned + tolerance) {
        consistent = false;
      } else if (v >= v_assigned - tolerance) {
        // Tied: the leader-favoured choice must not leave objective gain
        // beyond the LP tolerance on the table.
        const double u = LeaderValueUnderMixed(result.sigma, c, t, spec);
        if (spec.prior[t] * (u - u_assigned) > tolerance) consistent = false;
      }
    }
    if (!consistent) check.inconsistent_types.push_back(t);
  }
  return check;
}

}  // namespace crowdstack
