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

// Test-side restatement of the model straight from the definitions. It reads
// only the raw instance data and shares no algorithm with the library, so
// library results can be checked against it.

#ifndef GALLOC_TESTS_REFERENCE_H_
#define GALLOC_TESTS_REFERENCE_H_

#include <cstdint>
#include <vector>

#include "galloc/model.h"

namespace galloc::testing {

using Vec = std::vector<std::int64_t>;

// Takes units greedily in order until the quota is used up.
Vec RefLinearChoice(const Vec& z, std::int64_t quota);

// Keeps the k + min(|z|, q) smallest labels of the lower set of z, found by
// scanning label thresholds.
Vec RefTableauChoice(const std::vector<std::vector<int>>& filling,
                     std::int64_t quota, const Vec& z);

// The three-column filling written out cell by cell.
std::vector<std::vector<int>> RefAlternatingFilling(std::int64_t q);

// The chain z^0..z^q of the alternating tableau.
Vec RefAlternatingChain(std::int64_t q, std::int64_t i);

class RefModel {
 public:
  explicit RefModel(const RawInstance& raw);

  int num_edges() const { return static_cast<int>(caps_.size()); }
  const Vec& capacities() const { return caps_; }

  bool IsStable(const Vec& x) const;
  // x is weakly below y for every firm, by revealed preference.
  bool FirmsWeaklyBelow(const Vec& x, const Vec& y) const;
  // Firm f's vector in its specification's edge order.
  Vec FirmLocal(const Vec& x, int f) const;
  int num_firms() const { return static_cast<int>(firms_.size()); }

  // All stable vectors in lexicographic order. Prunes partial vectors whose
  // worker or firm loads exceed the quota, which no acceptable vector does
  // under quota-bounded rules.
  std::vector<Vec> EnumerateStable() const;
  // The element weakly below (above) all others; empty if none exists.
  Vec Least(const std::vector<Vec>& set) const;
  Vec Greatest(const std::vector<Vec>& set) const;

 private:
  struct Vertex {
    std::vector<int> edges;  // Order of the rule.
    bool linear = true;
    std::int64_t quota = 0;
    std::vector<std::vector<int>> filling;
  };
  Vec Local(const Vertex& v, const Vec& x) const;
  Vec Choose(const Vertex& v, const Vec& z) const;
  bool Interesting(const Vertex& v, const Vec& z, int slot) const;

  Vec caps_;
  std::vector<int> edge_worker_;
  std::vector<int> edge_firm_;
  std::vector<Vertex> workers_;
  std::vector<Vertex> firms_;
};

}  // namespace galloc::testing

#endif  // GALLOC_TESTS_REFERENCE_H_
