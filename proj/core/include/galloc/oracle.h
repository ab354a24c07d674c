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

// Brute-force ground truth for small instances.

#ifndef GALLOC_ORACLE_H_
#define GALLOC_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "galloc/choice.h"
#include "galloc/model.h"
#include "galloc/poset.h"

namespace galloc {

inline constexpr std::int64_t kDefaultEnumerationLimit = 10'000'000;

struct EnumeratedLattice {
  std::vector<Assignment> elements;  // Mixed-radix order over edges.
  // order[i][j] compares element i with element j over firms.
  std::vector<std::vector<Preference>> order;
  int min_index = -1;
  int max_index = -1;

  int size() const { return static_cast<int>(elements.size()); }
  const Assignment& min() const { return elements[min_index]; }
  const Assignment& max() const { return elements[max_index]; }
  // Least upper / greatest lower bound of i and j; -1 if it does not exist.
  int Join(int i, int j) const;
  int Meet(int i, int j) const;
  int IndexOf(const Assignment& x) const;
};

// Throws LimitExceeded if prod (b(e) + 1) exceeds the limit.
EnumeratedLattice EnumerateStable(const Instance& instance,
                                  std::int64_t limit = kDefaultEnumerationLimit);

struct LatticeReport {
  bool passed = true;
  bool is_lattice = true;
  bool distributive = true;
  bool polarity = true;
  bool unisize = true;
  bool deficit_fixed = true;
  std::vector<std::string> violations;
};

LatticeReport VerifyLatticeProperties(const Instance& instance,
                                      const EnumeratedLattice& lattice);

// All closed functions, in mixed-radix order over elements. Throws
// LimitExceeded if prod (tau + 1) exceeds the limit.
std::vector<ClosedFunction> EnumerateClosedFunctions(
    const RotationPoset& poset, std::int64_t limit = kDefaultEnumerationLimit);

}  // namespace galloc

#endif  // GALLOC_ORACLE_H_
