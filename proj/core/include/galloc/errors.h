// Copyright 2026 The galloc Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GALLOC_ERRORS_H_
#define GALLOC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace galloc {

// Bad input or an infeasible request: invalid instance files, unstable
// assignments handed to routines that need stable ones, oversized boxes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration or exhaustive check was refused by its size guard.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

// The instance violates the gapless condition (or a route repeated a
// rotation while the condition was assumed).
class GaplessViolationError : public Error {
 public:
  using Error::Error;
};

// A structural property guaranteed by the theory failed at runtime. This is
// never a user error; it means either a bug or a counterexample.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace galloc

#endif  // GALLOC_ERRORS_H_
