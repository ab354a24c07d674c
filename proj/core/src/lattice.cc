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

#include "galloc/lattice.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "galloc/axioms.h"
#include "galloc/errors.h"
#include "galloc/genrand.h"
#include "galloc/stability.h"

namespace galloc {
namespace {

bool Equal(std::span<const Count> a, std::span<const Count> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

// Slot of the least preferred supported edge, or -1 if x_w = 0.
int LastSupportedSlot(const Local& xw) {
  int last = -1;
  for (int s = 0; s < static_cast<int>(xw.size()); ++s) {
    if (xw[s] > 0) last = s;
  }
  return last;
}

// Largest weight in [1, bound] accepted by `feasible`, assuming it is
// monotone and that weight 1 is feasible.
Count Bisect(Count bound, const std::function<bool(Count)>& feasible) {
  Count lo = 1;
  Count hi = bound + 1;
  while (hi - lo > 1) {
    const Count mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Count Scan(Count bound, const std::function<bool(Count)>& feasible) {
  Count best = 0;
  for (Count mu = 1; mu <= bound; ++mu) {
    if (!feasible(mu)) break;
    best = mu;
  }
  return best;
}

Count ChooseWeight(Count bound, const std::function<bool(Count)>& feasible,
                   const DescentOptions& options, DescentStats* stats) {
  const Count bisected = Bisect(bound, feasible);
  if (options.check_monotone && Scan(bound, feasible) != bisected) {
    if (stats != nullptr) ++stats->unit_fallbacks;
    return 1;
  }
  return bisected;
}

// Quotas, acceptability at firms, and no edge above a worker's last
// supported edge is interesting to its firm.
bool GrowthInvariantsHold(const Instance& instance, const Assignment& x) {
  for (int f = 0; f < instance.num_firms(); ++f) {
    if (!instance.firm_choice(f).IsAcceptable(FirmLocal(instance, x, f))) {
      return false;
    }
  }
  for (int w = 0; w < instance.num_workers(); ++w) {
    const Local xw = WorkerLocal(instance, x, w);
    if (Size(xw) > instance.quota(w)) return false;
    const int last = std::max(LastSupportedSlot(xw), 0);
    const auto edges = instance.worker_edges(w);
    for (int s = 0; s < last; ++s) {
      const EdgeIndex e = edges[s];
      if (x[e] == instance.capacity(e)) continue;
      const int f = instance.edge(e).firm;
      const Local xf = FirmLocal(instance, x, f);
      if (!Equal(instance.firm_choice(f)(Bump(xf, instance.firm_slot(e), 1)),
                 xf)) {
        return false;
      }
    }
  }
  return true;
}

struct Exchange {
  std::optional<EdgeIndex> entering;
  std::optional<EdgeIndex> displaced;
};

// Per worker: the first edge at or after the last supported one (the first
// edge when x_w = 0) that is interesting to its firm, with its partner.
std::vector<Exchange> GrowthExchanges(const Instance& instance,
                                      const Assignment& x) {
  std::vector<Exchange> result(instance.num_workers());
  for (int w = 0; w < instance.num_workers(); ++w) {
    const Local xw = WorkerLocal(instance, x, w);
    const auto edges = instance.worker_edges(w);
    for (int s = std::max(LastSupportedSlot(xw), 0);
         s < static_cast<int>(edges.size()); ++s) {
      const EdgeIndex a = edges[s];
      if (x[a] == instance.capacity(a)) continue;
      const int f = instance.edge(a).firm;
      const Local xf = FirmLocal(instance, x, f);
      const int slot = instance.firm_slot(a);
      const Local up = Bump(xf, slot, 1);
      const Local chosen = instance.firm_choice(f)(up);
      if (Equal(chosen, xf)) continue;
      result[w].entering = a;
      if (!Equal(chosen, up)) {
        const auto firm_edges = instance.firm_edges(f);
        for (int c = 0; c < static_cast<int>(firm_edges.size()); ++c) {
          if (c == slot || xf[c] == 0) continue;
          if (Equal(chosen, Bump(up, c, -1))) {
            result[w].displaced = firm_edges[c];
            break;
          }
        }
        if (!result[w].displaced) {
          throw InvariantViolation("firm " + instance.firm_id(f) +
                                   " answered a unit increase with more than "
                                   "a unit exchange");
        }
      }
      break;
    }
  }
  return result;
}

bool Contains(const std::vector<EdgeIndex>& sorted, EdgeIndex e) {
  return std::binary_search(sorted.begin(), sorted.end(), e);
}

}  // namespace

AlkanGaleResult XminAlkanGale(const Instance& instance) {
  const int m = instance.num_edges();
  std::vector<Count> bounds(m);
  for (EdgeIndex e = 0; e < m; ++e) bounds[e] = instance.capacity(e);
  const std::int64_t limit =
      static_cast<std::int64_t>(m) * instance.max_capacity();
  AlkanGaleResult result;
  while (true) {
    std::vector<Count> offered(m, 0);
    for (int w = 0; w < instance.num_workers(); ++w) {
      const auto edges = instance.worker_edges(w);
      Local bw(edges.size());
      for (size_t s = 0; s < edges.size(); ++s) bw[s] = bounds[edges[s]];
      const Local chosen = instance.worker_choice(w)(bw);
      for (size_t s = 0; s < edges.size(); ++s) offered[edges[s]] = chosen[s];
    }
    std::vector<Count> kept(m, 0);
    for (int f = 0; f < instance.num_firms(); ++f) {
      const auto edges = instance.firm_edges(f);
      Local xf(edges.size());
      for (size_t s = 0; s < edges.size(); ++s) xf[s] = offered[edges[s]];
      const Local chosen = instance.firm_choice(f)(xf);
      for (size_t s = 0; s < edges.size(); ++s) kept[edges[s]] = chosen[s];
    }
    if (kept == offered) {
      result.x = Assignment(std::move(offered));
      break;
    }
    for (EdgeIndex e = 0; e < m; ++e) {
      if (kept[e] < offered[e]) bounds[e] = kept[e];
    }
    if (++result.iterations > limit) {
      throw InvariantViolation("offer iteration exceeded |E| * max capacity "
                               "rounds");
    }
  }
  if (!IsStable(instance, result.x)) {
    throw InvariantViolation("offer iteration ended at an unstable "
                             "assignment");
  }
  return result;
}

Assignment Stage1FindStable(const Instance& instance,
                            const DescentOptions& options,
                            DescentStats* stats) {
  Assignment x = Assignment::Zero(instance);
  std::int64_t steps = 0;
  while (true) {
    const std::vector<Exchange> exchanges = GrowthExchanges(instance, x);
    int start = -1;
    for (int w = 0; w < instance.num_workers(); ++w) {
      if (exchanges[w].entering &&
          Size(WorkerLocal(instance, x, w)) < instance.quota(w)) {
        start = w;
        break;
      }
    }
    if (start < 0) break;
    if (++steps > options.step_budget) {
      throw InvariantViolation("growth stage exceeded its step budget");
    }

    // Follow the exchange path from the deficit worker.
    std::vector<EdgeIndex> plus;
    std::vector<EdgeIndex> minus;
    std::map<int, int> position;  // worker -> index into plus
    bool cycle = false;
    int w = start;
    while (true) {
      auto seen = position.find(w);
      if (seen != position.end()) {
        plus.erase(plus.begin(), plus.begin() + seen->second);
        minus.erase(minus.begin(), minus.begin() + seen->second);
        cycle = true;
        break;
      }
      if (!exchanges[w].entering) break;  // Ends at a worker.
      position[w] = static_cast<int>(plus.size());
      plus.push_back(*exchanges[w].entering);
      if (!exchanges[w].displaced) break;  // Ends at a firm.
      minus.push_back(*exchanges[w].displaced);
      w = instance.edge(*exchanges[w].displaced).worker;
    }
    std::sort(plus.begin(), plus.end());
    std::sort(minus.begin(), minus.end());
    for (EdgeIndex e : plus) {
      if (Contains(minus, e)) {
        throw InvariantViolation("growth path uses edge " +
                                 instance.edge(e).id + " in both directions");
      }
    }

    Count bound = instance.max_capacity();
    for (EdgeIndex e : minus) bound = std::min(bound, x[e]);
    for (EdgeIndex e : plus) bound = std::min(bound, instance.capacity(e) - x[e]);
    if (!cycle) {
      bound = std::min(bound,
                       instance.quota(start) -
                           Size(WorkerLocal(instance, x, start)));
    }
    std::set<int> firms;
    for (EdgeIndex e : plus) firms.insert(instance.edge(e).firm);
    for (EdgeIndex e : minus) firms.insert(instance.edge(e).firm);
    // A unit step always improves every firm on the path. Longer jumps must
    // too, or two paths through a firm with a gap can undo each other.
    auto feasible = [&](Count tau) {
      auto shifted = TryShift(instance, x, plus, minus, tau);
      if (!shifted || !GrowthInvariantsHold(instance, *shifted)) return false;
      for (int f : firms) {
        if (!RevealedPrefers(instance.firm_choice(f),
                             FirmLocal(instance, *shifted, f),
                             FirmLocal(instance, x, f))) {
          return false;
        }
      }
      return true;
    };
    if (bound < 1 || !feasible(1)) {
      throw InvariantViolation("growth step of unit weight breaks the stage "
                               "invariants");
    }
    const Count tau = ChooseWeight(bound, feasible, options, stats);
    x = Shift(instance, x, plus, minus, tau);
    if (stats != nullptr) ++stats->steps;
  }
  if (!IsStable(instance, x)) {
    throw InvariantViolation("growth stage ended at an unstable assignment");
  }
  return x;
}

ReversalSets BuildReversalSets(const Instance& instance, const Assignment& x) {
  ReversalSets sets;
  sets.plus_by_worker.resize(instance.num_workers());
  sets.last_by_worker.resize(instance.num_workers());
  sets.minus_by_firm.resize(instance.num_firms());
  sets.plus_by_firm.resize(instance.num_firms());
  sets.open_by_firm.resize(instance.num_firms());
  for (int w = 0; w < instance.num_workers(); ++w) {
    const Local xw = WorkerLocal(instance, x, w);
    if (Size(xw) < instance.quota(w)) {
      for (EdgeIndex e : instance.worker_edges(w)) {
        if (x[e] < instance.capacity(e)) {
          sets.open_by_firm[instance.edge(e).firm].push_back(e);
        }
      }
      continue;
    }
    if (Size(xw) != instance.quota(w)) continue;
    const int last = LastSupportedSlot(xw);
    if (last < 0) continue;
    const auto edges = instance.worker_edges(w);
    const EdgeIndex a = edges[last];
    sets.last_by_worker[w] = a;
    sets.minus.push_back(a);
    sets.minus_by_firm[instance.edge(a).firm].push_back(a);
    for (int s = 0; s < last; ++s) {
      const EdgeIndex c = edges[s];
      if (x[c] < instance.capacity(c)) {
        sets.plus_by_worker[w].push_back(c);
        sets.plus_by_firm[instance.edge(c).firm].push_back(c);
      }
    }
  }
  std::sort(sets.minus.begin(), sets.minus.end());
  for (auto& v : sets.minus_by_firm) std::sort(v.begin(), v.end());
  for (auto& v : sets.plus_by_firm) std::sort(v.begin(), v.end());
  for (auto& v : sets.open_by_firm) std::sort(v.begin(), v.end());
  return sets;
}

std::vector<FirmPair> LegalFirmPairs(const Instance& instance,
                                     const Assignment& x,
                                     const ReversalSets& sets, int f) {
  std::vector<FirmPair> result;
  const ChoiceEvaluator& choice = instance.firm_choice(f);
  const Local xf = FirmLocal(instance, x, f);
  for (EdgeIndex a : sets.minus_by_firm[f]) {
    for (EdgeIndex c : sets.plus_by_firm[f]) {
      const Local z = Bump(Bump(xf, instance.firm_slot(c), 1),
                           instance.firm_slot(a), -1);
      if (choice.IsAcceptable(z)) result.push_back({c, a});
    }
  }
  return result;
}

std::vector<FirmPair> EssentialFirmPairs(const Instance& instance,
                                         const Assignment& x,
                                         const ReversalSets& sets, int f) {
  std::vector<FirmPair> result;
  const ChoiceEvaluator& choice = instance.firm_choice(f);
  const Local xf = FirmLocal(instance, x, f);
  for (const FirmPair& pair : LegalFirmPairs(instance, x, sets, f)) {
    const Local z = Bump(Bump(xf, instance.firm_slot(pair.raised), 1),
                         instance.firm_slot(pair.lowered), -1);
    bool essential = true;
    std::vector<EdgeIndex> rivals = sets.plus_by_firm[f];
    rivals.insert(rivals.end(), sets.open_by_firm[f].begin(),
                  sets.open_by_firm[f].end());
    for (EdgeIndex d : rivals) {
      if (d == pair.raised) continue;
      const int slot = instance.firm_slot(d);
      if (z[slot] >= instance.capacity(d)) continue;
      if (!Equal(choice(Bump(z, slot, 1)), z)) {
        essential = false;
        break;
      }
    }
    if (essential) result.push_back(pair);
  }
  return result;
}

ReversalGraph BuildReversalGraph(const Instance& instance, const Assignment& x,
                                 const ReversalSets& sets) {
  ReversalGraph graph;
  std::map<std::pair<EdgeIndex, Side>, int> node_of;
  auto add_node = [&](EdgeIndex e, Side side, bool lowered) {
    const int id = static_cast<int>(graph.nodes.size());
    graph.nodes.push_back({e, side, lowered});
    graph.out.emplace_back();
    node_of[{e, side}] = id;
    return id;
  };
  for (EdgeIndex a : sets.minus) {
    const int fa = add_node(a, Side::kFirm, true);
    const int wa = add_node(a, Side::kWorker, true);
    graph.out[fa].push_back(wa);
  }
  for (int w = 0; w < instance.num_workers(); ++w) {
    for (EdgeIndex c : sets.plus_by_worker[w]) {
      const int wc = add_node(c, Side::kWorker, false);
      const int fc = add_node(c, Side::kFirm, false);
      graph.out[wc].push_back(fc);
      graph.out[node_of.at({*sets.last_by_worker[w], Side::kWorker})]
          .push_back(wc);
    }
  }
  for (int f = 0; f < instance.num_firms(); ++f) {
    for (const FirmPair& pair : EssentialFirmPairs(instance, x, sets, f)) {
      graph.out[node_of.at({pair.raised, Side::kFirm})].push_back(
          node_of.at({pair.lowered, Side::kFirm}));
    }
  }
  for (auto& adjacent : graph.out) {
    std::sort(adjacent.begin(), adjacent.end());
  }
  return graph;
}

std::optional<std::vector<int>> ReversalGraph::FindCycle() const {
  const int n = static_cast<int>(nodes.size());
  std::vector<int> color(n, 0);  // 0 white, 1 on stack, 2 done
  std::vector<int> stack;
  std::vector<size_t> next_arc(n, 0);
  for (int root = 0; root < n; ++root) {
    if (color[root] != 0) continue;
    stack.push_back(root);
    color[root] = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      if (next_arc[u] == out[u].size()) {
        color[u] = 2;
        stack.pop_back();
        continue;
      }
      const int v = out[u][next_arc[u]++];
      if (color[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        return std::vector<int>(it, stack.end());
      }
      if (color[v] == 0) {
        color[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return std::nullopt;
}

Assignment Stage2DescendToXmin(const Instance& instance, const Assignment& x,
                               const DescentOptions& options,
                               DescentStats* stats) {
  if (!IsStable(instance, x)) {
    throw Error("descent needs a stable starting assignment");
  }
  Assignment current = x;
  std::int64_t steps = 0;
  while (true) {
    const ReversalSets sets = BuildReversalSets(instance, current);
    const ReversalGraph graph = BuildReversalGraph(instance, current, sets);
    const auto cycle = graph.FindCycle();
    if (!cycle) break;
    if (++steps > options.step_budget) {
      throw InvariantViolation("descent stage exceeded its step budget");
    }
    std::set<EdgeIndex> raised_set;
    std::set<EdgeIndex> lowered_set;
    for (int node : *cycle) {
      const auto& n = graph.nodes[node];
      (n.lowered ? lowered_set : raised_set).insert(n.edge);
    }
    const std::vector<EdgeIndex> raised(raised_set.begin(), raised_set.end());
    const std::vector<EdgeIndex> lowered(lowered_set.begin(),
                                         lowered_set.end());
    // Every worker on the cycle trades its last supported edge for one
    // raisable edge above it.
    std::map<int, std::pair<int, int>> per_worker;
    for (EdgeIndex e : lowered) {
      const int w = instance.edge(e).worker;
      ++per_worker[w].first;
      if (sets.last_by_worker[w] != e) {
        throw InvariantViolation("descent cycle lowers a non-last edge");
      }
    }
    for (EdgeIndex e : raised) {
      const int w = instance.edge(e).worker;
      ++per_worker[w].second;
      const auto& allowed = sets.plus_by_worker[w];
      if (std::find(allowed.begin(), allowed.end(), e) == allowed.end()) {
        throw InvariantViolation("descent cycle raises a non-raisable edge");
      }
    }
    for (const auto& [w, counts] : per_worker) {
      if (counts.first != 1 || counts.second != 1) {
        throw InvariantViolation("descent cycle is unbalanced at worker " +
                                 instance.worker_id(w));
      }
    }

    Count bound = instance.max_capacity();
    for (EdgeIndex e : lowered) bound = std::min(bound, current[e]);
    for (EdgeIndex e : raised) {
      bound = std::min(bound, instance.capacity(e) - current[e]);
    }
    auto feasible = [&](Count tau) {
      auto shifted = TryShift(instance, current, raised, lowered, tau);
      return shifted.has_value() && IsStable(instance, *shifted) &&
             CompareFirms(instance, *shifted, current) == Preference::kLess;
    };
    if (bound < 1 || !feasible(1)) {
      throw InvariantViolation("reversed rotation of unit weight is not a "
                               "stable descent");
    }
    const Count tau = ChooseWeight(bound, feasible, options, stats);
    current = Shift(instance, current, raised, lowered, tau);
    if (stats != nullptr) ++stats->steps;
  }
  return current;
}

Assignment XminByDescent(const Instance& instance,
                         const DescentOptions& options) {
  return Stage2DescendToXmin(instance, Stage1FindStable(instance, options),
                             options);
}

std::int64_t RouteLengthBound(const Instance& instance, bool gapless) {
  const std::int64_t m = instance.num_edges();
  const std::int64_t factor =
      gapless ? instance.num_vertices() : instance.max_capacity();
  return factor * m * m;
}

Route BuildRoute(const Instance& instance, const Assignment& start,
                 const RouteOptions& options) {
  bool gapless = false;
  bool decided = false;
  if (options.gapless.has_value()) {
    gapless = *options.gapless;
  } else {
    gapless = InstanceGaplessStatus(instance) == GaplessStatus::kHolds;
    decided = gapless;
  }
  const std::int64_t bound = RouteLengthBound(instance, gapless);
  Prng prng(options.seed);
  Route route;
  route.start = start;
  Assignment y = start;
  std::set<RotationKey> seen;
  while (true) {
    std::vector<Rotation> rotations = RotationsAt(instance, y);
    if (rotations.empty()) break;
    if (options.avoid.has_value() && rotations.size() > 1) {
      std::erase_if(rotations, [&](const Rotation& r) {
        return r.key() == *options.avoid;
      });
    }
    size_t pick = 0;
    switch (options.tie_break) {
      case TieBreak::kSmallestKey:
        pick = 0;
        break;
      case TieBreak::kLargestKey:
        pick = rotations.size() - 1;
        break;
      case TieBreak::kRandom:
        pick = static_cast<size_t>(
            prng.Uniform(0, static_cast<std::int64_t>(rotations.size()) - 1));
        break;
    }
    const Rotation& rotation = rotations[pick];
    const WeightedRotation weighted = MaxFeasibleWeight(instance, y, rotation);
    Assignment next = ApplyRotation(instance, y, rotation, weighted.tau,
                                    options.verify_steps);
    if (gapless && !seen.insert(rotation.key()).second) {
      const std::string message = "rotation " +
                                  FormatKey(instance, rotation.key()) +
                                  " occurs twice in a route";
      if (decided) throw InvariantViolation(message);
      throw GaplessViolationError(message +
                                  "; the gapless condition does not hold");
    }
    route.steps.push_back({y, rotation, weighted.tau, next});
    if (static_cast<std::int64_t>(route.steps.size()) >= bound) {
      throw InvariantViolation("route length reached its bound " +
                               std::to_string(bound));
    }
    y = std::move(next);
  }
  route.end = y;
  return route;
}

Route BuildFullRoute(const Instance& instance, const RouteOptions& options) {
  return BuildRoute(instance, XminAlkanGale(instance).x, options);
}

Route BuildRouteTo(const Instance& instance, const Assignment& start,
                   const Assignment& target) {
  if (!IsStable(instance, target)) {
    throw Error("route target is not stable");
  }
  if (!FirmsWeaklyBelow(instance, start, target)) {
    throw Error("route target is not above the start");
  }
  const std::int64_t bound = RouteLengthBound(instance, false);
  Route route;
  route.start = start;
  Assignment y = start;
  while (y != target) {
    const Rotation* chosen = nullptr;
    const std::vector<Rotation> rotations = RotationsAt(instance, y);
    for (const Rotation& rotation : rotations) {
      const Assignment one = ApplyRotation(instance, y, rotation, 1);
      if (FirmsWeaklyBelow(instance, one, target)) {
        chosen = &rotation;
        break;
      }
    }
    if (chosen == nullptr) {
      throw InvariantViolation("no rotation leads toward a stable target "
                               "above the current assignment");
    }
    const Count tau = MaxFeasibleWeight(instance, y, *chosen).tau;
    const Count weight = Bisect(tau, [&](Count mu) {
      return FirmsWeaklyBelow(
          instance,
          Shift(instance, y, chosen->plus_edges, chosen->minus_edges, mu),
          target);
    });
    Assignment next = ApplyRotation(instance, y, *chosen, weight);
    route.steps.push_back({y, *chosen, weight, next});
    if (static_cast<std::int64_t>(route.steps.size()) >= bound) {
      throw InvariantViolation("route length reached its bound " +
                               std::to_string(bound));
    }
    y = std::move(next);
  }
  route.end = y;
  return route;
}

RoutePairMultiset RoutePairs(const Route& route) {
  RoutePairMultiset result;
  for (const RouteStep& step : route.steps) {
    result.pairs.emplace(step.rotation.key(), step.weight);
  }
  return result;
}

}  // namespace galloc

