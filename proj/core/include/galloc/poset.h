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

// The weighted poset of rotations, closed functions on it, and the
// min-cost stable assignment through a minimum cut.

#ifndef GALLOC_POSET_H_
#define GALLOC_POSET_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "galloc/cost.h"
#include "galloc/model.h"
#include "galloc/rotation.h"

namespace galloc {

enum class PosetMode { kGapless, kGeneral };

const char* PosetModeName(PosetMode mode);

struct PosetElement {
  Rotation rotation;
  int occurrence = 0;  // 0-based index among elements with the same key.
  Count tau = 0;
};

struct RotationPoset {
  PosetMode mode = PosetMode::kGapless;
  std::vector<PosetElement> elements;
  // (i, j): element i immediately precedes element j. Sorted.
  std::vector<std::pair<int, int>> hasse_edges;
  Assignment xmin;
  Assignment xmax;

  int size() const { return static_cast<int>(elements.size()); }
  std::vector<std::vector<int>> Successors() const;
  std::vector<std::vector<int>> Predecessors() const;
  // Kahn order with smallest index first.
  std::vector<int> TopologicalOrder() const;
  // reach[i][j]: i strictly precedes j.
  std::vector<std::vector<bool>> Reachability() const;
  std::vector<int> MinimalElements() const;
  // Acyclic, transitively reduced, and xmin + sum tau * chi = xmax. Throws
  // InvariantViolation otherwise.
  void Validate(const Instance& instance) const;
};

struct PosetOptions {
  // Proceed when the gapless condition cannot be decided on the boxes.
  bool trust_gapless = false;
  std::int64_t step_budget = 1'000'000;
  bool verify_steps = false;
};

// Throws GaplessViolationError if a firm violates the gapless condition or a
// route repeats a rotation.
RotationPoset BuildPosetGapless(const Instance& instance,
                                const PosetOptions& options = {});
// Occurrence poset; rotations may appear several times.
RotationPoset BuildPosetGeneral(const Instance& instance,
                                const PosetOptions& options = {});

struct ClosedFunction {
  std::vector<Count> values;
  auto operator<=>(const ClosedFunction&) const = default;
};

bool IsClosed(const RotationPoset& poset, const ClosedFunction& xi);

// Throws Error if x is not stable.
ClosedFunction Omega(const Instance& instance, const RotationPoset& poset,
                     const Assignment& x);
// Throws Error if xi is not closed; InvariantViolation if the result is not
// stable.
Assignment OmegaInverse(const Instance& instance, const RotationPoset& poset,
                        const ClosedFunction& xi);

// Network for the closure problem. Node 0 is the source, node 1 the sink,
// node 2 + i is poset element i.
struct CutNetwork {
  struct Arc {
    int from;
    int to;
    std::int64_t capacity;
  };
  static constexpr int kSource = 0;
  static constexpr int kSink = 1;
  int num_nodes = 2;
  std::vector<Arc> arcs;
  std::int64_t infinity = 1;
};

// Rotation costs c(plus) - c(minus) at the common decimal scale.
std::vector<std::int64_t> RotationCosts(const RotationPoset& poset,
                                        const CostVector& costs);

CutNetwork BuildCutNetwork(const RotationPoset& poset,
                           const std::vector<std::int64_t>& rotation_costs);

struct MinCut {
  std::int64_t value = 0;
  // Nodes that can still reach the sink in the residual network, sink
  // excluded. This is the smallest sink side among minimum cuts.
  std::vector<bool> sink_side;
};

MinCut SolveMinCut(const CutNetwork& network);

struct MinCostResult {
  Assignment x;
  Decimal cost;
  std::vector<int> ideal;  // Sorted element indices.
};

// Throws Error for posets in general mode.
MinCostResult MinCostStable(const Instance& instance,
                            const RotationPoset& poset,
                            const CostVector& costs);

}  // namespace galloc

#endif  // GALLOC_POSET_H_
