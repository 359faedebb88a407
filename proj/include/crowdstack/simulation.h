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

#ifndef CROWDSTACK_SIMULATION_H_
#define CROWDSTACK_SIMULATION_H_

#include <cstdint>
#include <string>
#include <vector>

#include "crowdstack/best_response.h"
#include "crowdstack/game_model.h"

namespace crowdstack {

// Draws use std::mt19937_64 (bit-exact across standard libraries). Each
// 64-bit output is mapped to [0, 1) through its top 53 bits and then to a
// category by inverse CDF over the cumulative weights.
inline constexpr char kSimulationRng[] = "mt19937_64/inverse-cdf-53";

struct SimulationReport {
  std::int64_t rounds = 0;
  double mean_leader_utility = 0.0;
  double mean_worker_utility = 0.0;
  // Sample standard deviation of the per-round leader utility.
  double leader_utility_sd = 0.0;
  double obedience_rate = 0.0;
  double match_rate = 0.0;
  std::vector<std::int64_t> per_type_counts;
  std::uint64_t seed = 0;
  std::string rng = kSimulationRng;
};

// Plays `rounds` independent one-shot rounds: θ ~ π, then s ~ σ, then the
// worker's best response to the realized s. Identical arguments give a
// bit-identical report. Throws DomainError for rounds < 1.
SimulationReport Simulate(const GameSpec& spec, const MixedStrategy& sigma,
                          std::int64_t rounds, std::uint64_t seed);

}  // namespace crowdstack

#endif  // CROWDSTACK_SIMULATION_H_
