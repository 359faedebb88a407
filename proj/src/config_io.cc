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

#include "crowdstack/config_io.h"

#include <string>
#include <vector>

namespace crowdstack {
namespace {

const Json& Require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError(where + ": missing key '" + key + "'");
  }
  return *it;
}

double Number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ConfigError(where + ": expected a number");
  return v.get<double>();
}

int Integer(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<int>();
}

std::vector<double> NumberArray(const Json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    out.push_back(Number(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::vector<std::vector<double>> NumberMatrix(const Json& v,
                                              const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected a 2-D array");
  std::vector<std::vector<double>> out;
  for (size_t i = 0; i < v.size(); ++i) {
    out.push_back(NumberArray(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

TaskType ParseTask(const Json& t, const std::string& where) {
  TaskType task;
  task.id = Integer(Require(t, "id", where), where + ".id");
  if (auto it = t.find("label"); it != t.end()) {
    if (!it->is_string()) throw ConfigError(where + ".label: expected a string");
    task.label = it->get<std::string>();
  }
  if (auto it = t.find("strenuous"); it != t.end()) {
    if (!it->is_boolean()) {
      throw ConfigError(where + ".strenuous: expected a boolean");
    }
    task.strenuous = it->get<bool>();
  }
  task.deadline = Number(Require(t, "deadline", where), where + ".deadline");
  task.completion_time = Number(Require(t, "completion_time", where),
                                where + ".completion_time");
  if (auto it = t.find("posted_reward"); it != t.end()) {
    task.posted_reward = Number(*it, where + ".posted_reward");
  }
  return task;
}

WorkerType ParseType(const Json& t, const std::string& where) {
  WorkerType type;
  const bool has_rate = t.is_object() && t.contains("beta");
  const bool has_category = t.is_object() && t.contains("beta_category");
  if (has_rate == has_category) {
    throw ConfigError(where + ": give exactly one of 'beta' or 'beta_category'");
  }
  if (has_rate) {
    const double beta = Number(t.at("beta"), where + ".beta");
    try {
      type.beta_category = BetaCategory(beta);
    } catch (const std::domain_error& e) {
      throw ConfigError(where + ".beta: " + e.what());
    }
  } else {
    type.beta_category =
        Integer(t.at("beta_category"), where + ".beta_category");
  }
  const Json& order = Require(t, "preference_order", where);
  if (!order.is_array()) {
    throw ConfigError(where + ".preference_order: expected an array");
  }
  for (size_t i = 0; i < order.size(); ++i) {
    type.preference_order.push_back(Integer(
        order[i], where + ".preference_order[" + std::to_string(i) + "]"));
  }
  return type;
}

}  // namespace

GameSpec GameSpecFromJson(const Json& doc) {
  try {
    GameSpec spec;
    const Json& tasks = Require(doc, "tasks", "config");
    if (!tasks.is_array()) throw ConfigError("tasks: expected an array");
    for (size_t i = 0; i < tasks.size(); ++i) {
      spec.tasks.push_back(ParseTask(tasks[i], "tasks[" + std::to_string(i) + "]"));
    }

    const Json& types = Require(doc, "types", "config");
    if (types.is_string()) {
      if (types.get<std::string>() != "enumerate") {
        throw ConfigError("types: expected \"enumerate\" or an array");
      }
      try {
        spec.worker_types = EnumerateWorkerTypes(spec.num_tasks());
      } catch (const std::domain_error& e) {
        throw ConfigError(std::string("types: ") + e.what());
      }
    } else if (types.is_array()) {
      for (size_t i = 0; i < types.size(); ++i) {
        spec.worker_types.push_back(
            ParseType(types[i], "types[" + std::to_string(i) + "]"));
      }
    } else {
      throw ConfigError("types: expected \"enumerate\" or an array");
    }

    spec.prior = NumberArray(Require(doc, "prior", "config"), "prior");

    const Json& matching = Require(doc, "matching", "config");
    if (matching.is_object()) {
      const Json& rule = Require(matching, "rule", "matching");
      if (!rule.is_string() || rule.get<std::string>() != "default") {
        throw ConfigError("matching.rule: only \"default\" is defined");
      }
      const int threshold =
          Integer(Require(matching, "threshold", "matching"),
                  "matching.threshold");
      if (threshold < 1 || threshold > kNumBetaCategories) {
        throw ConfigError("matching.threshold: must be in 1..4, got " +
                          std::to_string(threshold));
      }
      spec.matching =
          DefaultMatching(spec.tasks, spec.worker_types, threshold);
    } else if (matching.is_array()) {
      const int num_tasks = static_cast<int>(matching.size());
      const int num_types =
          num_tasks == 0 ? 0 : static_cast<int>(matching[0].size());
      spec.matching = MatchingTable(num_tasks, num_types);
      for (int k = 0; k < num_tasks; ++k) {
        const std::string where = "matching[" + std::to_string(k) + "]";
        if (!matching[k].is_array() ||
            static_cast<int>(matching[k].size()) != num_types) {
          throw ConfigError(where + ": rows must all have " +
                            std::to_string(num_types) + " entries");
        }
        for (int t = 0; t < num_types; ++t) {
          spec.matching.Set(
              k + 1, t,
              Integer(matching[k][t], where + "[" + std::to_string(t) + "]"));
        }
      }
    } else {
      throw ConfigError("matching: expected a rule object or a 2-D array");
    }

    const Json& params = Require(doc, "params", "config");
    spec.params.system_reward =
        NumberArray(Require(params, "phi", "params"), "params.phi");
    spec.params.worker_reward =
        NumberArray(Require(params, "psi", "params"), "params.psi");
    spec.params.mismatch_cost =
        NumberMatrix(Require(params, "kappa", "params"), "params.kappa");
    spec.params.disobedience_cost =
        Number(Require(params, "mu", "params"), "params.mu");
    spec.params.persuasion_inefficiency =
        Number(Require(params, "lambda", "params"), "params.lambda");
    return spec;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

Json GameSpecToJson(const GameSpec& spec) {
  Json doc;
  doc["tasks"] = Json::array();
  for (const TaskType& t : spec.tasks) {
    doc["tasks"].push_back({{"id", t.id},
                            {"label", t.label},
                            {"strenuous", t.strenuous},
                            {"deadline", t.deadline},
                            {"completion_time", t.completion_time},
                            {"posted_reward", t.posted_reward}});
  }
  doc["types"] = Json::array();
  for (const WorkerType& w : spec.worker_types) {
    doc["types"].push_back({{"beta_category", w.beta_category},
                            {"preference_order", w.preference_order}});
  }
  doc["prior"] = spec.prior;
  Json matching = Json::array();
  for (TaskId k = 1; k <= spec.matching.num_tasks(); ++k) {
    Json row = Json::array();
    for (TypeIndex t = 0; t < spec.matching.num_types(); ++t) {
      row.push_back(spec.matching.At(k, t));
    }
    matching.push_back(std::move(row));
  }
  doc["matching"] = std::move(matching);
  doc["params"] = {{"phi", spec.params.system_reward},
                   {"psi", spec.params.worker_reward},
                   {"kappa", spec.params.mismatch_cost},
                   {"mu", spec.params.disobedience_cost},
                   {"lambda", spec.params.persuasion_inefficiency}};
  return doc;
}

Json ToJson(const MixedStrategy& sigma) { return Json(sigma.probs()); }

Json ToJson(const SolveResult& r) {
  return {{"sigma", ToJson(r.sigma)},
          {"profile", r.profile.assignment},
          {"profile_index", r.profile_index},
          {"leader_value", r.leader_value},
          {"lps_solved", r.lps_solved},
          {"lp_statuses",
           {{"optimal", r.lp_statuses.optimal},
            {"infeasible", r.lp_statuses.infeasible}}}};
}

Json ToJson(const PureCommitment& c) {
  return {{"recommendation", c.recommendation}, {"value", c.value}};
}

Json ToJson(const MuInterval& i) {
  return {{"lower", i.lower}, {"upper", i.upper}, {"nonempty", i.nonempty}};
}

Json ToJson(const MuRegion& region) {
  Json per_type = Json::array();
  for (size_t i = 0; i < region.types.size(); ++i) {
    Json entry = ToJson(region.per_type[i]);
    entry["type"] = region.types[i];
    per_type.push_back(std::move(entry));
  }
  Json doc = {{"region", ToJson(region.interval)},
              {"per_type", std::move(per_type)},
              {"lower_binding_type", region.lower_binding},
              {"upper_binding_type", region.upper_binding}};
  if (!region.interval.nonempty) {
    doc["blocking_types"] = {region.lower_binding, region.upper_binding};
  }
  return doc;
}

Json ToJson(const SteeringVerdict& v) {
  Json violations = Json::array();
  for (const SteeringViolation& x : v.violations) {
    violations.push_back(
        {{"type", x.type}, {"recommended", x.recommended}, {"chosen", x.chosen}});
  }
  return {{"mu", v.mu},
          {"steered", v.steered()},
          {"violations", std::move(violations)},
          {"boundary", v.on_boundary()},
          {"boundary_types", v.boundary_types}};
}

Json ToJson(const SimulationReport& r) {
  return {{"rounds", r.rounds},
          {"mean_leader_utility", r.mean_leader_utility},
          {"mean_worker_utility", r.mean_worker_utility},
          {"leader_utility_sd", r.leader_utility_sd},
          {"obedience_rate", r.obedience_rate},
          {"match_rate", r.match_rate},
          {"per_type_counts", r.per_type_counts},
          {"seed", r.seed},
          {"rng", r.rng}};
}

SolveResult SolveResultFromJson(const Json& doc) {
  try {
    SolveResult r;
    r.sigma = MixedStrategy(doc.at("sigma").get<std::vector<double>>());
    r.profile.assignment = doc.at("profile").get<std::vector<TaskId>>();
    r.profile_index = doc.at("profile_index").get<std::int64_t>();
    r.leader_value = doc.at("leader_value").get<double>();
    r.lps_solved = doc.at("lps_solved").get<std::int64_t>();
    r.lp_statuses.optimal = doc.at("lp_statuses").at("optimal").get<std::int64_t>();
    r.lp_statuses.infeasible =
        doc.at("lp_statuses").at("infeasible").get<std::int64_t>();
    return r;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed solve result: ") + e.what());
  }
}

SimulationReport SimulationReportFromJson(const Json& doc) {
  try {
    SimulationReport r;
    r.rounds = doc.at("rounds").get<std::int64_t>();
    r.mean_leader_utility = doc.at("mean_leader_utility").get<double>();
    r.mean_worker_utility = doc.at("mean_worker_utility").get<double>();
    r.leader_utility_sd = doc.at("leader_utility_sd").get<double>();
    r.obedience_rate = doc.at("obedience_rate").get<double>();
    r.match_rate = doc.at("match_rate").get<double>();
    r.per_type_counts = doc.at("per_type_counts").get<std::vector<std::int64_t>>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.rng = doc.at("rng").get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed simulation report: ") + e.what());
  }
}

}  // namespace crowdstack
