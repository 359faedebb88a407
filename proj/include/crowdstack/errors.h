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

#ifndef CROWDSTACK_ERRORS_H_
#define CROWDSTACK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace crowdstack {

// Value outside the mathematical domain of an operation (e.g. beta > 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Task id or type index out of range.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Mismatched vector/matrix dimensions handed to a numeric routine.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request whose size exceeds a configured budget. Never truncated.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operation only defined for a particular game shape (e.g. two tasks).
class UnsupportedShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A worker type that matches every task or none.
class DegenerateTypeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A spec failing validation. what() lists every violation, one per line.
class InvalidSpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace crowdstack

#endif  // CROWDSTACK_ERRORS_H_
