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

// Exact decimal edge costs.

#ifndef GALLOC_COST_H_
#define GALLOC_COST_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "galloc/model.h"

namespace galloc {

// mantissa * 10^-scale.
struct Decimal {
  std::int64_t mantissa = 0;
  int scale = 0;

  static Decimal FromInt(std::int64_t value) { return {value, 0}; }
  // Accepts [-]digits[.digits][e[+-]digits]. Throws Error on malformed or
  // out-of-range input.
  static Decimal Parse(std::string_view text);
  // Uses the shortest decimal representation that round-trips.
  static Decimal FromDouble(double value);

  // Value rescaled to 10^-target_scale; throws Error on overflow.
  std::int64_t ScaledTo(int target_scale) const;
  std::string ToString() const;
  bool operator==(const Decimal& other) const;
};

// One cost per edge, aligned with the instance's edge indices.
struct CostVector {
  std::vector<Decimal> costs;

  int common_scale() const;
  // Costs as integers at common_scale().
  std::vector<std::int64_t> Scaled() const;
};

// Total cost sum c(e) x(e), exact.
Decimal TotalCost(const CostVector& costs, const Assignment& x);

}  // namespace galloc

#endif  // GALLOC_COST_H_
