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

#ifndef GALLOC_STABILITY_H_
#define GALLOC_STABILITY_H_

#include <span>
#include <vector>

#include "galloc/choice.h"
#include "galloc/model.h"

namespace galloc {

// True iff raising z at local position `slot` by one changes the choice:
// C(z + 1^slot) != z. Saturated positions are never interesting. Throws
// Error if z is not acceptable.
bool IsInteresting(const ChoiceEvaluator& choice, std::span<const Count> z,
                   int slot);
// Same test at an endpoint v of edge e under x.
bool IsInteresting(const Instance& instance, const Assignment& x, VertexRef v,
                   EdgeIndex e);

bool IsAcceptable(const Instance& instance, const Assignment& x);

struct StabilityReport {
  bool stable = true;
  std::vector<EdgeIndex> blocking_edges;
  std::vector<VertexRef> unacceptable_vertices;
  std::vector<int> quota_violations;  // Worker indices.
};

// Edges with an unacceptable endpoint are not tested for blocking.
StabilityReport CheckStability(const Instance& instance, const Assignment& x);
bool IsStable(const Instance& instance, const Assignment& x);

// Componentwise revealed-preference comparison over all firms (workers).
// kLess means x is below y. Throws Error on unacceptable input.
Preference CompareFirms(const Instance& instance, const Assignment& x,
                        const Assignment& y);
Preference CompareWorkers(const Instance& instance, const Assignment& x,
                          const Assignment& y);

// True iff CompareFirms(x, y) is kLess or kEqual.
bool FirmsWeaklyBelow(const Instance& instance, const Assignment& x,
                      const Assignment& y);

}  // namespace galloc

#endif  // GALLOC_STABILITY_H_
