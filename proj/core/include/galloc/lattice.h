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

// Walking the lattice of stable assignments: the firm-worst stable
// assignment (two independent algorithms) and routes of rotations up to the
// firm-best one.

#ifndef GALLOC_LATTICE_H_
#define GALLOC_LATTICE_H_

#include <cstdint>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "galloc/model.h"
#include "galloc/rotation.h"

namespace galloc {

struct AlkanGaleResult {
  Assignment x;
  // Number of rounds that lowered the offer bounds.
  std::int64_t iterations = 0;
};

// Offer/reject iteration from the full box downward. Throws
// InvariantViolation if the result is unstable or the round count exceeds
// |E| * max capacity.
AlkanGaleResult XminAlkanGale(const Instance& instance);

struct DescentOptions {
  // Cross-check every bisection against a linear scan; on disagreement fall
  // back to unit steps.
  bool check_monotone = false;
  std::int64_t step_budget = 1'000'000;
};

struct DescentStats {
  std::int64_t steps = 0;
  std::int64_t unit_fallbacks = 0;
};

// Grows an assignment from zero along exchange paths of deficit workers
// until it is stable.
Assignment Stage1FindStable(const Instance& instance,
                            const DescentOptions& options = {},
                            DescentStats* stats = nullptr);

// Edges that a reversed step may lower (one per full worker) and raise.
struct ReversalSets {
  std::vector<EdgeIndex> minus;                       // Sorted.
  std::vector<std::vector<EdgeIndex>> plus_by_worker;  // Local order.
  std::vector<std::vector<EdgeIndex>> minus_by_firm;
  std::vector<std::vector<EdgeIndex>> plus_by_firm;
  std::vector<std::optional<EdgeIndex>> last_by_worker;
  // Unsaturated edges of workers below quota. They never move in a descent
  // but can still block the shifted assignment.
  std::vector<std::vector<EdgeIndex>> open_by_firm;
};

ReversalSets BuildReversalSets(const Instance& instance, const Assignment& x);

// (raised, lowered) pair at a firm.
struct FirmPair {
  EdgeIndex raised;
  EdgeIndex lowered;
  auto operator<=>(const FirmPair&) const = default;
};

// Legal pairs (raised, lowered) at firm f after which no other raisable
// edge, and no open edge of a worker below quota, is interesting to f.
std::vector<FirmPair> EssentialFirmPairs(const Instance& instance,
                                         const Assignment& x,
                                         const ReversalSets& sets, int f);
// Pairs whose exchange keeps the firm's vector acceptable.
std::vector<FirmPair> LegalFirmPairs(const Instance& instance,
                                     const Assignment& x,
                                     const ReversalSets& sets, int f);

// Each lowered edge a gives nodes f^a -> w^a; each raised edge c gives
// w^c -> f^c; legal worker pairs link w^a -> w^c and essential firm pairs
// link f^c -> f^a.
struct ReversalGraph {
  struct Node {
    EdgeIndex edge;
    Side side;
    bool lowered;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<int>> out;  // Sorted adjacency.

  // First simple cycle in a deterministic DFS, as node indices.
  std::optional<std::vector<int>> FindCycle() const;
};

ReversalGraph BuildReversalGraph(const Instance& instance, const Assignment& x,
                                 const ReversalSets& sets);

// Walks a stable x down to the firm-worst stable assignment along reversed
// rotations. Throws Error if x is not stable.
Assignment Stage2DescendToXmin(const Instance& instance, const Assignment& x,
                               const DescentOptions& options = {},
                               DescentStats* stats = nullptr);

// Stage 1 followed by stage 2.
Assignment XminByDescent(const Instance& instance,
                         const DescentOptions& options = {});

struct RouteStep {
  Assignment before;
  Rotation rotation;
  Count weight = 0;
  Assignment after;
};

struct Route {
  Assignment start;
  Assignment end;
  std::vector<RouteStep> steps;
};

enum class TieBreak { kSmallestKey, kLargestKey, kRandom };

struct RouteOptions {
  TieBreak tie_break = TieBreak::kSmallestKey;
  std::uint64_t seed = 0;
  // Whether a repeated rotation is a contradiction. Unset: decided from the
  // instance.
  std::optional<bool> gapless;
  // Rotations never chosen while another one is available.
  std::optional<RotationKey> avoid;
  bool verify_steps = false;
};

// Non-excessive route from `start` (stable) to the firm-best stable
// assignment, with length monitors.
Route BuildRoute(const Instance& instance, const Assignment& start,
                 const RouteOptions& options = {});
// From the firm-worst stable assignment.
Route BuildFullRoute(const Instance& instance,
                     const RouteOptions& options = {});

// Greedy non-excessive route from `start` up to a stable `target` above it:
// each step takes the largest weight that stays below target. Throws Error if
// target is not stable or not above start.
Route BuildRouteTo(const Instance& instance, const Assignment& start,
                   const Assignment& target);

struct RoutePairMultiset {
  std::multiset<std::pair<RotationKey, Count>> pairs;
  bool operator==(const RoutePairMultiset&) const = default;
};

RoutePairMultiset RoutePairs(const Route& route);

// |V| |E|^2 under the gapless condition, max capacity * |E|^2 otherwise.
std::int64_t RouteLengthBound(const Instance& instance, bool gapless);

}  // namespace galloc

#endif  // GALLOC_LATTICE_H_
