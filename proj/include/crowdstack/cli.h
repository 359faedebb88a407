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

#ifndef CROWDSTACK_CLI_H_
#define CROWDSTACK_CLI_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace crowdstack {

inline constexpr char kToolkitVersion[] = "crowdstack 0.1.0";

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitSemanticNegative = 1,  // e.g. steering violated
  kExitInputError = 2,
  kExitCapacity = 3,
  kExitInternal = 4,
};

// Runs one command. args[0] is the program name. Exactly one result document
// goes to `out`; diagnostics go to `err`.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

// "sha256:<hex>" of the given bytes.
std::string ContentDigest(std::string_view bytes);

}  // namespace crowdstack

#endif  // CROWDSTACK_CLI_H_
