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

#include "galloc/rotation.h"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

#include "galloc/errors.h"
#include "galloc/stability.h"

namespace galloc {
namespace {

bool Equal(std::span<const Count> a, std::span<const Count> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

int CeilLog2(Count n) {
  int bits = 0;
  while ((Count{1} << bits) < n) ++bits;
  return bits;
}

}  // namespace

bool AuxiliaryGraph::empty() const {
  return std::none_of(entering.begin(), entering.end(),
                      [](const auto& a) { return a.has_value(); });
}

std::vector<Tandem> AuxiliaryGraph::TandemsAt(const Instance& instance,
                                              int firm) const {
  std::vector<Tandem> result;
  for (size_t w = 0; w < entering.size(); ++w) {
    if (entering[w] && displaced[w] &&
        instance.edge(*entering[w]).firm == firm) {
      result.push_back({*entering[w], *displaced[w]});
    }
  }
  return result;
}

std::vector<DirectedEdge> AuxiliaryGraph::DirectedEdges() const {
  std::vector<DirectedEdge> result;
  for (size_t w = 0; w < entering.size(); ++w) {
    if (entering[w]) result.push_back({*entering[w], true});
    if (displaced[w]) result.push_back({*displaced[w], false});
  }
  return result;
}

std::vector<int> ActiveGraph::Workers() const {
  std::vector<int> result;
  for (size_t w = 0; w < entering.size(); ++w) {
    if (entering[w]) result.push_back(static_cast<int>(w));
  }
  return result;
}

std::vector<int> ActiveGraph::Firms(const Instance& instance) const {
  std::set<int> firms;
  for (const auto& a : entering) {
    if (a) firms.insert(instance.edge(*a).firm);
  }
  return {firms.begin(), firms.end()};
}

std::vector<Tandem> Rotation::tandems() const {
  std::vector<Tandem> result;
  for (size_t i = 0; i + 1 < cycle.size(); i += 2) {
    result.push_back({cycle[i], cycle[i + 1]});
  }
  return result;
}

std::map<int, std::vector<Tandem>> Rotation::TandemsByFirm(
    const Instance& instance) const {
  std::map<int, std::vector<Tandem>> result;
  for (const Tandem& t : tandems()) {
    result[instance.edge(t.entering).firm].push_back(t);
  }
  return result;
}

std::vector<VertexRef> Rotation::Vertices(const Instance& instance) const {
  std::vector<VertexRef> result;
  for (const Tandem& t : tandems()) {
    const Edge& a = instance.edge(t.entering);
    result.push_back({Side::kWorker, a.worker});
    result.push_back({Side::kFirm, a.firm});
  }
  return result;
}

std::string FormatKey(const Instance& instance, const RotationKey& key) {
  std::string result;
  for (size_t i = 0; i < key.size(); ++i) {
    if (i > 0) result += ",";
    result += instance.edge(key[i]).id;
  }
  return result;
}

AuxiliaryGraph BuildAuxiliaryGraph(const Instance& instance,
                                   const Assignment& x) {
  const StabilityReport report = CheckStability(instance, x);
  if (!report.stable) {
    std::string detail;
    for (EdgeIndex e : report.blocking_edges) {
      detail += " " + instance.edge(e).id;
    }
    throw Error("assignment is not stable" +
                (detail.empty() ? std::string() : "; blocking edges:" + detail));
  }
  const std::int64_t calls_before = instance.firm_calls();
  AuxiliaryGraph aux;
  aux.entering.assign(instance.num_workers(), std::nullopt);
  aux.displaced.assign(instance.num_workers(), std::nullopt);
  for (int w = 0; w < instance.num_workers(); ++w) {
    const Local xw = WorkerLocal(instance, x, w);
    if (Size(xw) != instance.quota(w)) continue;
    const auto edges = instance.worker_edges(w);
    int last = -1;
    for (int s = 0; s < static_cast<int>(edges.size()); ++s) {
      if (xw[s] > 0) last = s;
    }
    if (last < 0) continue;
    for (int s = last; s < static_cast<int>(edges.size()); ++s) {
      const EdgeIndex a = edges[s];
      const int f = instance.edge(a).firm;
      const ChoiceEvaluator& choice = instance.firm_choice(f);
      const Local xf = FirmLocal(instance, x, f);
      const int slot = instance.firm_slot(a);
      if (xf[slot] >= instance.capacity(a)) continue;
      const Local up = Bump(xf, slot, 1);
      const Local chosen = choice(up);
      if (Equal(chosen, xf)) continue;
      aux.entering[w] = a;
      if (!Equal(chosen, up)) {
        const auto firm_edges = instance.firm_edges(f);
        for (int c = 0; c < static_cast<int>(firm_edges.size()); ++c) {
          if (c == slot || xf[c] == 0) continue;
          if (Equal(chosen, Bump(up, c, -1))) {
            aux.displaced[w] = firm_edges[c];
            break;
          }
        }
        if (!aux.displaced[w]) {
          throw InvariantViolation(
              "firm " + instance.firm_id(f) + " answered an increase on " +
              instance.edge(a).id + " with more than a unit exchange");
        }
      }
      break;
    }
  }
  const std::int64_t spent = instance.firm_calls() - calls_before;
  if (spent > instance.num_edges() + instance.num_firms()) {
    throw InvariantViolation("exchange graph used " + std::to_string(spent) +
                             " firm evaluations");
  }
  return aux;
}

ActiveGraph Clean(const Instance& instance, const AuxiliaryGraph& aux,
                  CleaningOrder order) {
  ActiveGraph gamma;
  gamma.entering = aux.entering;
  gamma.displaced = aux.displaced;
  const int n = instance.num_workers();
  // A worker keeps its arc only with a complete exchange.
  for (int w = 0; w < n; ++w) {
    if (!gamma.displaced[w]) gamma.entering[w].reset();
  }
  std::vector<int> in_count(n, 0);
  for (int w = 0; w < n; ++w) {
    if (gamma.entering[w]) {
      ++in_count[instance.edge(*gamma.displaced[w]).worker];
    }
  }
  std::deque<int> queue;
  for (int i = 0; i < n; ++i) {
    const int w = order == CleaningOrder::kForward ? i : n - 1 - i;
    if (gamma.entering[w] && in_count[w] == 0) queue.push_back(w);
  }
  while (!queue.empty()) {
    const int w = queue.front();
    queue.pop_front();
    if (!gamma.entering[w]) continue;
    const int next = instance.edge(*gamma.displaced[w]).worker;
    gamma.entering[w].reset();
    gamma.displaced[w].reset();
    if (--in_count[next] == 0 && gamma.entering[next]) {
      if (order == CleaningOrder::kForward) {
        queue.push_back(next);
      } else {
        queue.push_front(next);
      }
    }
  }
  return gamma;
}

std::vector<Rotation> ExtractRotations(const Instance& instance,
                                       const ActiveGraph& gamma) {
  const int n = instance.num_workers();
  if (std::ssize(gamma.entering) != n || std::ssize(gamma.displaced) != n) {
    throw Error("active graph does not match the instance");
  }
  std::vector<int> in_count(n, 0);
  std::set<EdgeIndex> entering_edges;
  std::set<EdgeIndex> displaced_edges;
  for (int w = 0; w < n; ++w) {
    if (!gamma.entering[w]) continue;
    if (!gamma.displaced[w]) {
      throw InvariantViolation("active graph keeps an arc without exchange");
    }
    entering_edges.insert(*gamma.entering[w]);
    if (!displaced_edges.insert(*gamma.displaced[w]).second) {
      throw InvariantViolation("edge " + instance.edge(*gamma.displaced[w]).id +
                               " is displaced by two tandems");
    }
    ++in_count[instance.edge(*gamma.displaced[w]).worker];
  }
  for (EdgeIndex e : entering_edges) {
    if (displaced_edges.count(e)) {
      throw InvariantViolation("edge " + instance.edge(e).id +
                               " both enters and is displaced");
    }
  }
  for (int w = 0; w < n; ++w) {
    const int expected = gamma.entering[w] ? 1 : 0;
    if (in_count[w] != expected) {
      throw InvariantViolation("active graph unbalanced at worker " +
                               instance.worker_id(w));
    }
  }
  std::vector<Rotation> rotations;
  std::vector<bool> visited(n, false);
  for (int start = 0; start < n; ++start) {
    if (!gamma.entering[start] || visited[start]) continue;
    Rotation rotation;
    int w = start;
    while (!visited[w]) {
      visited[w] = true;
      rotation.cycle.push_back(*gamma.entering[w]);
      rotation.cycle.push_back(*gamma.displaced[w]);
      rotation.plus_edges.push_back(*gamma.entering[w]);
      rotation.minus_edges.push_back(*gamma.displaced[w]);
      w = instance.edge(*gamma.displaced[w]).worker;
    }
    if (w != start) {
      throw InvariantViolation("active graph is not a union of cycles");
    }
    std::sort(rotation.plus_edges.begin(), rotation.plus_edges.end());
    std::sort(rotation.minus_edges.begin(), rotation.minus_edges.end());
    rotations.push_back(std::move(rotation));
  }
  std::sort(rotations.begin(), rotations.end(),
            [](const Rotation& a, const Rotation& b) { return a.cycle < b.cycle; });
  return rotations;
}

std::vector<Rotation> RotationsAt(const Instance& instance,
                                  const Assignment& x) {
  return ExtractRotations(instance,
                          Clean(instance, BuildAuxiliaryGraph(instance, x)));
}

Count BoxWeightBound(const Instance& instance, const Assignment& x,
                     const Rotation& rotation) {
  Count bound = instance.max_capacity();
  for (EdgeIndex e : rotation.minus_edges) bound = std::min(bound, x[e]);
  for (EdgeIndex e : rotation.plus_edges) {
    bound = std::min(bound, instance.capacity(e) - x[e]);
  }
  return bound;
}

bool WeightIsFeasible(const Instance& instance, const Assignment& x,
                      const Rotation& rotation, Count weight) {
  if (weight < 1 || weight > BoxWeightBound(instance, x, rotation)) {
    return false;
  }
  for (const Tandem& t : rotation.tandems()) {
    const int f = instance.edge(t.entering).firm;
    const Local xf = FirmLocal(instance, x, f);
    const Local up = Bump(xf, instance.firm_slot(t.entering), weight);
    const Local expected = Bump(up, instance.firm_slot(t.displaced), -weight);
    if (!Equal(instance.firm_choice(f)(up), expected)) return false;
  }
  return true;
}

WeightedRotation MaxFeasibleWeight(const Instance& instance,
                                   const Assignment& x,
                                   const Rotation& rotation) {
  if (!WeightIsFeasible(instance, x, rotation, 1)) {
    throw Error("not a rotation of the given assignment: weight 1 is "
                "infeasible");
  }
  const std::int64_t calls_before = instance.firm_calls();
  // lo is feasible, hi is not.
  Count lo = 1;
  Count hi = BoxWeightBound(instance, x, rotation) + 1;
  while (hi - lo > 1) {
    const Count mid = lo + (hi - lo) / 2;
    if (WeightIsFeasible(instance, x, rotation, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  WeightedRotation result{rotation, lo, instance.firm_calls() - calls_before};
  const std::int64_t budget =
      static_cast<std::int64_t>(rotation.tandems().size()) *
          CeilLog2(instance.max_capacity()) +
      2;
  if (result.oracle_calls > budget) {
    throw InvariantViolation("weight search used " +
                             std::to_string(result.oracle_calls) +
                             " firm evaluations, budget " +
                             std::to_string(budget));
  }
  return result;
}

Count MaxFeasibleWeightByScan(const Instance& instance, const Assignment& x,
                              const Rotation& rotation) {
  const Count bound = BoxWeightBound(instance, x, rotation);
  Count best = 0;
  for (Count mu = 1; mu <= bound; ++mu) {
    if (!WeightIsFeasible(instance, x, rotation, mu)) break;
    best = mu;
  }
  return best;
}

Assignment ApplyRotation(const Instance& instance, const Assignment& x,
                         const Rotation& rotation, Count weight, bool verify) {
  if (!WeightIsFeasible(instance, x, rotation, weight)) {
    throw Error("weight " + std::to_string(weight) +
                " is not feasible for rotation " +
                FormatKey(instance, rotation.key()));
  }
  Assignment result = Shift(instance, x, rotation.plus_edges,
                            rotation.minus_edges, weight);
  if (verify) {
    if (!IsStable(instance, result)) {
      throw InvariantViolation("rotation " + FormatKey(instance, rotation.key()) +
                               " produced an unstable assignment");
    }
    if (CompareFirms(instance, x, result) != Preference::kLess) {
      throw InvariantViolation("rotation " + FormatKey(instance, rotation.key()) +
                               " did not improve every firm");
    }
  }
  return result;
}

RotationEvents ClassifyEvents(const Instance& instance, const Assignment& x,
                              const Rotation& rotation, Count tau) {
  const Assignment shifted =
      Shift(instance, x, rotation.plus_edges, rotation.minus_edges, tau);
  RotationEvents events;
  for (EdgeIndex e : rotation.minus_edges) {
    if (shifted[e] == 0) events.emptied.push_back(e);
  }
  for (EdgeIndex e : rotation.plus_edges) {
    if (shifted[e] == instance.capacity(e)) events.saturated.push_back(e);
  }
  for (const Tandem& t : rotation.tandems()) {
    if (tau >= std::min(instance.capacity(t.entering) - x[t.entering],
                        x[t.displaced])) {
      continue;
    }
    const int f = instance.edge(t.entering).firm;
    const Local z = FirmLocal(instance, shifted, f);
    const Local up = Bump(z, instance.firm_slot(t.entering), 1);
    const Local expected = Bump(up, instance.firm_slot(t.displaced), -1);
    if (!Equal(instance.firm_choice(f)(up), expected)) {
      events.broken.push_back(t);
    }
  }
  if (!events.any()) {
    throw InvariantViolation("rotation " + FormatKey(instance, rotation.key()) +
                             " stopped at weight " + std::to_string(tau) +
                             " without a terminating event");
  }
  return events;
}

}  // namespace galloc
