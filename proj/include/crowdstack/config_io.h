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

// JSON game configuration and result payloads.
//
// Config schema:
//   tasks:    [{id, label?, strenuous?, deadline, completion_time,
//               posted_reward?}]
//   types:    "enumerate" | [{beta | beta_category, preference_order}]
//   prior:    [real; Θ]
//   matching: {"rule": "default", "threshold": 1..4} | [[0|1; Θ]; K]
//   params:   {phi: [K], psi: [K], kappa: [[Θ]; K], mu, lambda}
//
// Serialization always writes explicit types (beta_category) and an explicit
// matching table, so parse(serialize(spec)) == spec.

#ifndef CROWDSTACK_CONFIG_IO_H_
#define CROWDSTACK_CONFIG_IO_H_

#include <stdexcept>
#include <string>

#include "crowdstack/best_response.h"
#include "crowdstack/game_model.h"
#include "crowdstack/reward_design.h"
#include "crowdstack/simulation.h"
#include "crowdstack/stackelberg_solver.h"
#include "json.hpp"

namespace crowdstack {

using Json = nlohmann::json;

// Malformed document: missing keys, wrong JSON types, bad enumerations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Builds a GameSpec without validating it; callers run Validate to collect
// semantic violations.
GameSpec GameSpecFromJson(const Json& doc);
Json GameSpecToJson(const GameSpec& spec);

Json ToJson(const MixedStrategy& sigma);
Json ToJson(const SolveResult& result);
Json ToJson(const PureCommitment& commitment);
Json ToJson(const MuInterval& interval);
Json ToJson(const MuRegion& region);
Json ToJson(const SteeringVerdict& verdict);
Json ToJson(const SimulationReport& report);

SolveResult SolveResultFromJson(const Json& doc);
SimulationReport SimulationReportFromJson(const Json& doc);

}  // namespace crowdstack

#endif  // CROWDSTACK_CONFIG_IO_H_
