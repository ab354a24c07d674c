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

// Rotations of a stable assignment: the exchange graph, its cleaning, the
// cycle decomposition, and maximal feasible weights.

#ifndef GALLOC_ROTATION_H_
#define GALLOC_ROTATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "galloc/model.h"

namespace galloc {

// At a firm, `entering` is accepted and `displaced` loses one unit:
// C_f(x_f + 1^entering) = x_f + 1^entering - 1^displaced.
struct Tandem {
  EdgeIndex entering;
  EdgeIndex displaced;
  auto operator<=>(const Tandem&) const = default;
};

struct DirectedEdge {
  EdgeIndex edge;
  bool worker_to_firm;
};

// For each worker, the edge it would move one unit onto (if any), and the
// edge its firm would give up in exchange (if any).
struct AuxiliaryGraph {
  std::vector<std::optional<EdgeIndex>> entering;   // Per worker.
  std::vector<std::optional<EdgeIndex>> displaced;  // Per worker.

  bool empty() const;
  std::vector<Tandem> TandemsAt(const Instance& instance, int firm) const;
  std::vector<DirectedEdge> DirectedEdges() const;
};

// The cleaned exchange graph: every remaining worker has one entering and
// one leaving arc.
struct ActiveGraph : AuxiliaryGraph {
  std::vector<int> Workers() const;
  std::vector<int> Firms(const Instance& instance) const;
};

// Alternating edge sequence entering_0, displaced_0, entering_1, ... where
// entering_i is the move of worker i of the cycle and displaced_i is given up
// at its firm. The sequence starts at the smallest worker index on the
// cycle, which makes it a canonical identity across assignments.
using RotationKey = std::vector<EdgeIndex>;

struct Rotation {
  RotationKey cycle;
  std::vector<EdgeIndex> plus_edges;   // Sorted.
  std::vector<EdgeIndex> minus_edges;  // Sorted.

  const RotationKey& key() const { return cycle; }
  std::vector<Tandem> tandems() const;
  std::map<int, std::vector<Tandem>> TandemsByFirm(
      const Instance& instance) const;
  // Alternating vertex sequence w_0, f_0, w_1, f_1, ...
  std::vector<VertexRef> Vertices(const Instance& instance) const;
};

std::string FormatKey(const Instance& instance, const RotationKey& key);

struct WeightedRotation {
  Rotation rotation;
  Count tau = 0;
  // Firm evaluations spent by the weight search.
  std::int64_t oracle_calls = 0;
};

// Throws Error if x is not stable.
AuxiliaryGraph BuildAuxiliaryGraph(const Instance& instance,
                                   const Assignment& x);

enum class CleaningOrder { kForward, kReverse };

ActiveGraph Clean(const Instance& instance, const AuxiliaryGraph& aux,
                  CleaningOrder order = CleaningOrder::kForward);

// Sorted by key. Throws InvariantViolation if the graph is unbalanced.
std::vector<Rotation> ExtractRotations(const Instance& instance,
                                       const ActiveGraph& gamma);

// The rotations exposed at a stable x.
std::vector<Rotation> RotationsAt(const Instance& instance,
                                  const Assignment& x);

// Every tandem of the rotation survives a shift of the given weight, and the
// shift stays in the box.
bool WeightIsFeasible(const Instance& instance, const Assignment& x,
                      const Rotation& rotation, Count weight);

// Upper bound from the box alone.
Count BoxWeightBound(const Instance& instance, const Assignment& x,
                     const Rotation& rotation);

// Largest feasible weight by bisection. Throws Error if weight 1 is not
// feasible, and InvariantViolation if the search exceeds its call budget.
WeightedRotation MaxFeasibleWeight(const Instance& instance,
                                   const Assignment& x,
                                   const Rotation& rotation);

// Reference implementation by linear scan.
Count MaxFeasibleWeightByScan(const Instance& instance, const Assignment& x,
                              const Rotation& rotation);

// Throws Error if the weight is not feasible. With `verify`, the result is
// re-checked for stability (InvariantViolation on failure).
Assignment ApplyRotation(const Instance& instance, const Assignment& x,
                         const Rotation& rotation, Count weight,
                         bool verify = false);

struct RotationEvents {
  std::vector<EdgeIndex> emptied;    // Minus edges that reached zero.
  std::vector<EdgeIndex> saturated;  // Plus edges that reached capacity.
  std::vector<Tandem> broken;        // Tandems that fail one step further.

  bool any() const {
    return !emptied.empty() || !saturated.empty() || !broken.empty();
  }
};

// Reports why `tau` cannot be increased. Throws InvariantViolation if no
// reason is found.
RotationEvents ClassifyEvents(const Instance& instance, const Assignment& x,
                              const Rotation& rotation, Count tau);

}  // namespace galloc

#endif  // GALLOC_ROTATION_H_
