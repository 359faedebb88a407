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

#include "crowdstack/cli.h"

#include <openssl/evp.h>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crowdstack/best_response.h"
#include "crowdstack/config_io.h"
#include "crowdstack/errors.h"
#include "crowdstack/game_model.h"
#include "crowdstack/reward_design.h"
#include "crowdstack/simulation.h"
#include "crowdstack/stackelberg_solver.h"

namespace crowdstack {
namespace {

// Input problems that should surface as exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedConfig {
  GameSpec spec;
  std::string digest;
};

LoadedConfig LoadConfig(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  Json doc;
  try {
    doc = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw UsageError("config '" + path + "' is not valid JSON: " + e.what());
  }
  LoadedConfig loaded{GameSpecFromJson(doc), ContentDigest(bytes)};
  ValidateOrThrow(loaded.spec);
  if (!HasFullTypeEnumeration(loaded.spec)) {
    err << "note: restricted type list (" << loaded.spec.num_types()
        << " types";
    if (loaded.spec.num_tasks() <= kMaxEnumeratedTasks) {
      err << " of " << WorkerTypeCount(loaded.spec.num_tasks());
    }
    err << ")\n";
  }
  return loaded;
}

std::vector<double> ParseCsv(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    while (first < last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      throw UsageError("--sigma: cannot parse '" + item + "' as a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError("--sigma: empty list");
  return out;
}

Json Document(const std::vector<std::string>& args, const Json& digest,
              Json payload) {
  Json command = Json::array();
  for (size_t i = 1; i < args.size(); ++i) command.push_back(args[i]);
  return {{"command", std::move(command)},
          {"input_digest", digest},
          {"payload", std::move(payload)},
          {"version", kToolkitVersion}};
}

void Emit(std::ostream& out, const Json& doc) { out << doc.dump(2) << "\n"; }

}  // namespace

std::string ContentDigest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw InternalError("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex = "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    hex += kHex[md[i] >> 4];
    hex += kHex[md[i] & 0xf];
  }
  return hex;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Leader commitments and reward design for crowd task "
               "recommendation games"};
  app.require_subcommand(1);

  int enum_tasks = 0;
  auto* enumerate = app.add_subcommand(
      "enumerate-types", "List every worker type for K tasks");
  enumerate->add_option("--tasks", enum_tasks, "Number of task types K")
      ->required();

  std::string config;
  std::string method = "multilp";
  int grid = 1000;
  int threads = 1;
  auto* solve = app.add_subcommand("solve", "Optimal leader commitment");
  solve->add_option("config", config, "Game config (JSON)")->required();
  solve->add_option("--method", method, "multilp | observed | grid")
      ->check(CLI::IsMember({"multilp", "observed", "grid"}));
  solve->add_option("--grid", grid, "Grid steps for --method grid")
      ->check(CLI::NonNegativeNumber);
  solve->add_option("--threads", threads, "Worker threads for multilp")
      ->check(CLI::PositiveNumber);

  auto* design = app.add_subcommand(
      "design-mu", "Disobedience-cost interval that steers every type");
  design->add_option("config", config, "Game config (JSON)")->required();

  double mu = 0.0;
  auto* verify = app.add_subcommand(
      "verify-steering", "Check best responses at a given disobedience cost");
  verify->add_option("config", config, "Game config (JSON)")->required();
  verify->add_option("--mu", mu, "Disobedience cost to test")->required();

  std::string sigma_csv;
  bool from_solve = false;
  std::int64_t rounds = 100000;
  std::uint64_t seed = 42;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo replay");
  simulate->add_option("config", config, "Game config (JSON)")->required();
  auto* sigma_opt =
      simulate->add_option("--sigma", sigma_csv, "Comma-separated σ");
  auto* from_solve_opt = simulate->add_flag(
      "--from-solve", from_solve, "Use the multilp commitment as σ");
  sigma_opt->excludes(from_solve_opt);
  simulate->add_option("--rounds", rounds, "Rounds to play")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed, "Generator seed");

  std::string out_path;
  auto* transform = app.add_subcommand(
      "transform", "Dump the Harsanyi-transformed normal-form game");
  transform->add_option("config", config, "Game config (JSON)")->required();
  transform->add_option("--out", out_path, "Matrix dump path")->required();

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*enumerate) {
      if (enum_tasks < 1 || enum_tasks > kMaxEnumeratedTasks) {
        err << "error: --tasks must be in 1.." << kMaxEnumeratedTasks
            << " (capacity of the type enumeration), got " << enum_tasks
            << "\n";
        return kExitInputError;
      }
      const std::vector<WorkerType> types = EnumerateWorkerTypes(enum_tasks);
      Json listing = Json::array();
      for (size_t i = 0; i < types.size(); ++i) {
        listing.push_back({{"index", i},
                           {"beta_category", types[i].beta_category},
                           {"preference_order", types[i].preference_order}});
      }
      Emit(out, Document(args, nullptr,
                         {{"tasks", enum_tasks},
                          {"count", types.size()},
                          {"types", std::move(listing)}}));
      return kExitOk;
    }

    const LoadedConfig loaded = LoadConfig(config, err);
    const GameSpec& spec = loaded.spec;

    if (*solve) {
      Json payload;
      if (method == "multilp") {
        SolverOptions options;
        options.num_threads = threads;
        const SolveResult result = SolveMultipleLps(spec, options);
        payload = ToJson(result);
        err << "solved " << result.lps_solved << " LPs ("
            << result.lp_statuses.optimal << " optimal, "
            << result.lp_statuses.infeasible << " infeasible)\n";
      } else if (method == "observed") {
        payload = ToJson(OptimalObservedActionCommitment(spec));
      } else {
        payload = {{"grid", grid},
                   {"value", BruteForceCommitmentValue(spec, grid)}};
      }
      payload["method"] = method;
      Emit(out, Document(args, loaded.digest, std::move(payload)));
      return kExitOk;
    }

    if (*design) {
      const MuRegion region = FeasibleMuRegion(spec);
      for (size_t i = 0; i < region.types.size(); ++i) {
        if (!region.per_type[i].nonempty) {
          err << "type " << region.types[i]
              << ": empty interval (reward gap psi(B) - psi(A) is not below "
                 "kappa(B))\n";
        }
      }
      if (!region.interval.nonempty) {
        err << "no disobedience cost steers every type; blocking types "
            << region.lower_binding << " and " << region.upper_binding << "\n";
      }
      Emit(out, Document(args, loaded.digest, ToJson(region)));
      return kExitOk;
    }

    if (*verify) {
      const SteeringVerdict verdict = VerifySteering(spec, mu);
      if (verdict.on_boundary()) {
        err << "notice: mu = " << mu
            << " lies on an interval boundary; the outcome there depends on "
               "tie-breaking\n";
      }
      for (const SteeringViolation& v : verdict.violations) {
        err << "violation: type " << v.type << " recommended task "
            << v.recommended << " chooses unsuited task " << v.chosen << "\n";
      }
      Emit(out, Document(args, loaded.digest, ToJson(verdict)));
      return verdict.steered() ? kExitOk : kExitSemanticNegative;
    }

    if (*simulate) {
      MixedStrategy sigma;
      if (from_solve) {
        sigma = SolveMultipleLps(spec).sigma;
      } else if (!sigma_csv.empty()) {
        try {
          sigma = MixedStrategy(ParseCsv(sigma_csv));
        } catch (const DomainError& e) {
          throw UsageError(std::string("--sigma: ") + e.what());
        }
      } else {
        throw UsageError("simulate needs --sigma or --from-solve");
      }
      const SimulationReport report = Simulate(spec, sigma, rounds, seed);
      Json payload = ToJson(report);
      payload["sigma"] = ToJson(sigma);
      Emit(out, Document(args, loaded.digest, std::move(payload)));
      return kExitOk;
    }

    if (*transform) {
      const NormalFormGame game = HarsanyiTransform(spec);
      std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
      if (!file) throw UsageError("cannot write '" + out_path + "'");
      WriteNormalFormGame(game, file);
      file.close();
      if (!file) throw UsageError("failed writing '" + out_path + "'");
      Emit(out, Document(args, loaded.digest,
                         {{"rows", game.rows()},
                          {"cols", game.cols()},
                          {"out", out_path},
                          {"full_type_enumeration",
                           HasFullTypeEnumeration(spec)}}));
      return kExitOk;
    }
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return kExitCapacity;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    // InvalidSpec, UnsupportedShape, DegenerateType, Structural.
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace crowdstack
