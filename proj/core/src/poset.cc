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

#include "galloc/poset.h"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>
#include <set>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "galloc/axioms.h"
#include "galloc/errors.h"
#include "galloc/lattice.h"
#include "galloc/stability.h"

namespace galloc {
namespace {

std::int64_t AddOrThrow(std::int64_t a, std::int64_t b) {
  std::int64_t result;
  if (__builtin_add_overflow(a, b, &result)) {
    throw Error("cost arithmetic overflow");
  }
  return result;
}

std::int64_t MulOrThrow(std::int64_t a, std::int64_t b) {
  std::int64_t result;
  if (__builtin_mul_overflow(a, b, &result)) {
    throw Error("cost arithmetic overflow");
  }
  return result;
}

struct KeyInfo {
  Rotation rotation;
  int count = 0;  // Uses in a full route.
};

// One step of a deferring route.
struct DeferStep {
  RotationKey key;
  Count weight;
  Assignment after;
};

// Route from xmin that applies `deferred` only when it is the sole exposed
// rotation. Other rotations go by smallest key with maximal weight.
std::vector<DeferStep> DeferringRoute(const Instance& instance,
                                      const Assignment& xmin,
                                      const RotationKey& deferred,
                                      std::int64_t* budget, bool verify) {
  std::vector<DeferStep> steps;
  Assignment y = xmin;
  while (true) {
    const std::vector<Rotation> rotations = RotationsAt(instance, y);
    if (rotations.empty()) break;
    const Rotation* pick = &rotations.front();
    for (const Rotation& r : rotations) {
      if (r.key() != deferred) {
        pick = &r;
        break;
      }
    }
    if (--*budget < 0) {
      throw LimitExceeded("poset construction exceeded its step budget");
    }
    const Count tau = MaxFeasibleWeight(instance, y, *pick).tau;
    y = ApplyRotation(instance, y, *pick, tau, verify);
    steps.push_back({pick->key(), tau, y});
  }
  return steps;
}

RotationPoset BuildPoset(const Instance& instance, PosetMode mode,
                         std::optional<bool> gapless_flag,
                         const PosetOptions& options) {
  RotationPoset poset;
  poset.mode = mode;
  poset.xmin = XminAlkanGale(instance).x;
  RouteOptions route_options;
  route_options.gapless = gapless_flag;
  route_options.verify_steps = options.verify_steps;
  const Route full = BuildRoute(instance, poset.xmin, route_options);
  poset.xmax = full.end;

  std::map<RotationKey, KeyInfo> keys;
  std::multiset<std::pair<RotationKey, Count>> full_pairs;
  for (const RouteStep& step : full.steps) {
    auto [it, inserted] = keys.try_emplace(step.rotation.key());
    if (inserted) it->second.rotation = step.rotation;
    ++it->second.count;
    full_pairs.emplace(step.rotation.key(), step.weight);
  }

  // Element index of occurrence j of a key.
  std::map<RotationKey, int> first_index;
  for (const auto& [key, info] : keys) {
    first_index[key] = poset.size();
    for (int j = 0; j < info.count; ++j) {
      poset.elements.push_back({info.rotation, j, 0});
    }
  }

  std::int64_t budget = options.step_budget;
  std::set<std::pair<int, int>> hasse;
  for (const auto& [key, info] : keys) {
    const std::vector<DeferStep> steps = DeferringRoute(
        instance, poset.xmin, key, &budget, options.verify_steps);
    if (steps.empty() || steps.back().after != poset.xmax) {
      throw InvariantViolation("deferring route for " +
                               FormatKey(instance, key) +
                               " does not end at the maximum");
    }
    std::map<RotationKey, int> remaining;
    for (const DeferStep& step : steps) ++remaining[step.key];
    if (remaining[key] != info.count) {
      throw InvariantViolation("rotation " + FormatKey(instance, key) +
                               " is used a different number of times by its "
                               "deferring route");
    }
    int occurrence = 0;
    for (const DeferStep& step : steps) {
      --remaining[step.key];
      if (step.key != key) continue;
      const int from = first_index[key] + occurrence;
      poset.elements[from].tau = step.weight;
      ++occurrence;
      for (const Rotation& next : RotationsAt(instance, step.after)) {
        auto found = keys.find(next.key());
        const int left = remaining[next.key()];
        if (found == keys.end() || left <= 0) {
          throw InvariantViolation("rotation " +
                                   FormatKey(instance, next.key()) +
                                   " is exposed but never used afterwards");
        }
        const int j = found->second.count - left;
        hasse.emplace(from, first_index[next.key()] + j);
      }
    }
  }
  poset.hasse_edges.assign(hasse.begin(), hasse.end());

  std::multiset<std::pair<RotationKey, Count>> element_pairs;
  for (const PosetElement& e : poset.elements) {
    element_pairs.emplace(e.rotation.key(), e.tau);
  }
  if (element_pairs != full_pairs) {
    throw InvariantViolation("poset weights differ from the full route");
  }
  std::set<RotationKey> minimal_keys;
  for (int i : poset.MinimalElements()) {
    minimal_keys.insert(poset.elements[i].rotation.key());
  }
  std::set<RotationKey> exposed;
  for (const Rotation& r : RotationsAt(instance, poset.xmin)) {
    exposed.insert(r.key());
  }
  if (minimal_keys != exposed) {
    throw InvariantViolation("minimal poset elements differ from the "
                             "rotations exposed at the minimum");
  }
  poset.Validate(instance);
  return poset;
}

}  // namespace

const char* PosetModeName(PosetMode mode) {
  return mode == PosetMode::kGapless ? "gapless" : "general";
}

std::vector<std::vector<int>> RotationPoset::Successors() const {
  std::vector<std::vector<int>> result(size());
  for (const auto& [i, j] : hasse_edges) result[i].push_back(j);
  return result;
}

std::vector<std::vector<int>> RotationPoset::Predecessors() const {
  std::vector<std::vector<int>> result(size());
  for (const auto& [i, j] : hasse_edges) result[j].push_back(i);
  return result;
}

std::vector<int> RotationPoset::TopologicalOrder() const {
  const auto successors = Successors();
  std::vector<int> in_degree(size(), 0);
  for (const auto& [i, j] : hasse_edges) ++in_degree[j];
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int i = 0; i < size(); ++i) {
    if (in_degree[i] == 0) ready.push(i);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int i = ready.top();
    ready.pop();
    order.push_back(i);
    for (int j : successors[i]) {
      if (--in_degree[j] == 0) ready.push(j);
    }
  }
  return order;
}

std::vector<std::vector<bool>> RotationPoset::Reachability() const {
  const auto successors = Successors();
  const std::vector<int> order = TopologicalOrder();
  std::vector<std::vector<bool>> reach(size(), std::vector<bool>(size()));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    for (int j : successors[*it]) {
      reach[*it][j] = true;
      for (int k = 0; k < size(); ++k) {
        if (reach[j][k]) reach[*it][k] = true;
      }
    }
  }
  return reach;
}

std::vector<int> RotationPoset::MinimalElements() const {
  std::vector<bool> has_predecessor(size(), false);
  for (const auto& [i, j] : hasse_edges) has_predecessor[j] = true;
  std::vector<int> result;
  for (int i = 0; i < size(); ++i) {
    if (!has_predecessor[i]) result.push_back(i);
  }
  return result;
}

void RotationPoset::Validate(const Instance& instance) const {
  if (static_cast<int>(TopologicalOrder().size()) != size()) {
    throw InvariantViolation("poset has a cycle");
  }
  const auto successors = Successors();
  const auto reach = Reachability();
  for (const auto& [i, j] : hasse_edges) {
    for (int k : successors[i]) {
      if (k != j && reach[k][j]) {
        throw InvariantViolation("poset edge is implied by a longer path");
      }
    }
  }
  std::vector<Count> values = xmin.values();
  for (const PosetElement& e : elements) {
    if (mode == PosetMode::kGapless && e.occurrence != 0) {
      throw InvariantViolation("gapless poset repeats a rotation");
    }
    for (EdgeIndex p : e.rotation.plus_edges) values[p] += e.tau;
    for (EdgeIndex m : e.rotation.minus_edges) values[m] -= e.tau;
  }
  if (Assignment(std::move(values)) != xmax) {
    throw InvariantViolation("poset weights do not connect the minimum to "
                             "the maximum");
  }
  if (mode == PosetMode::kGapless) {
    const std::int64_t m = instance.num_edges();
    if (size() > 0 && size() >= instance.num_vertices() * m * m) {
      throw InvariantViolation("gapless poset is larger than |V| |E|^2");
    }
  }
}

RotationPoset BuildPosetGapless(const Instance& instance,
                                const PosetOptions& options) {
  const GaplessStatus status = InstanceGaplessStatus(instance);
  if (status == GaplessStatus::kViolated) {
    throw GaplessViolationError(
        "a firm choice function violates the gapless condition; use the "
        "general construction");
  }
  if (status == GaplessStatus::kUnknown && !options.trust_gapless) {
    throw GaplessViolationError(
        "the gapless condition cannot be decided on these capacities; trust "
        "it explicitly or use the general construction");
  }
  // Decided instances report repeats as contradictions, trusted ones as
  // violations of the assumption.
  const std::optional<bool> flag =
      status == GaplessStatus::kHolds ? std::nullopt : std::optional(true);
  return BuildPoset(instance, PosetMode::kGapless, flag, options);
}

RotationPoset BuildPosetGeneral(const Instance& instance,
                                const PosetOptions& options) {
  return BuildPoset(instance, PosetMode::kGeneral, false, options);
}

bool IsClosed(const RotationPoset& poset, const ClosedFunction& xi) {
  if (static_cast<int>(xi.values.size()) != poset.size()) return false;
  for (int i = 0; i < poset.size(); ++i) {
    if (xi.values[i] < 0 || xi.values[i] > poset.elements[i].tau) return false;
  }
  for (const auto& [i, j] : poset.hasse_edges) {
    if (xi.values[j] > 0 && xi.values[i] != poset.elements[i].tau) {
      return false;
    }
  }
  return true;
}

ClosedFunction Omega(const Instance& instance, const RotationPoset& poset,
                     const Assignment& x) {
  if (!IsStable(instance, x)) throw Error("assignment is not stable");
  const Route route = BuildRouteTo(instance, poset.xmin, x);
  std::map<RotationKey, int> first_index;
  for (int i = poset.size() - 1; i >= 0; --i) {
    first_index[poset.elements[i].rotation.key()] = i;
  }
  std::map<RotationKey, int> uses;
  ClosedFunction xi{std::vector<Count>(poset.size(), 0)};
  for (const RouteStep& step : route.steps) {
    const RotationKey& key = step.rotation.key();
    auto found = first_index.find(key);
    const int j = uses[key]++;
    const int index = found == first_index.end() ? -1 : found->second + j;
    if (index < 0 || index >= poset.size() ||
        poset.elements[index].rotation.key() != key) {
      throw InvariantViolation("route to the assignment uses rotation " +
                               FormatKey(instance, key) +
                               " more often than the poset holds it");
    }
    xi.values[index] = step.weight;
  }
  if (!IsClosed(poset, xi)) {
    throw InvariantViolation("route weights do not form a closed function");
  }
  return xi;
}

Assignment OmegaInverse(const Instance& instance, const RotationPoset& poset,
                        const ClosedFunction& xi) {
  if (!IsClosed(poset, xi)) throw Error("function is not closed");
  Assignment y = poset.xmin;
  for (int i : poset.TopologicalOrder()) {
    if (xi.values[i] == 0) continue;
    const Rotation& r = poset.elements[i].rotation;
    auto next =
        TryShift(instance, y, r.plus_edges, r.minus_edges, xi.values[i]);
    if (!next) {
      throw InvariantViolation("closed function leaves the capacity box");
    }
    y = std::move(*next);
  }
  if (!IsStable(instance, y)) {
    throw InvariantViolation("closed function maps to an unstable "
                             "assignment");
  }
  return y;
}

std::vector<std::int64_t> RotationCosts(const RotationPoset& poset,
                                        const CostVector& costs) {
  const std::vector<std::int64_t> scaled = costs.Scaled();
  std::vector<std::int64_t> result;
  result.reserve(poset.size());
  for (const PosetElement& e : poset.elements) {
    std::int64_t c = 0;
    for (EdgeIndex p : e.rotation.plus_edges) c = AddOrThrow(c, scaled[p]);
    for (EdgeIndex m : e.rotation.minus_edges) c = AddOrThrow(c, -scaled[m]);
    result.push_back(c);
  }
  return result;
}

CutNetwork BuildCutNetwork(const RotationPoset& poset,
                           const std::vector<std::int64_t>& rotation_costs) {
  CutNetwork network;
  network.num_nodes = 2 + poset.size();
  std::int64_t finite = 0;
  for (int i = 0; i < poset.size(); ++i) {
    const std::int64_t weight =
        MulOrThrow(rotation_costs[i], poset.elements[i].tau);
    if (weight > 0) {
      network.arcs.push_back({CutNetwork::kSource, 2 + i, weight});
      finite = AddOrThrow(finite, weight);
    } else if (weight < 0) {
      network.arcs.push_back({2 + i, CutNetwork::kSink, -weight});
      finite = AddOrThrow(finite, -weight);
    }
  }
  network.infinity = AddOrThrow(finite, 1);
  for (const auto& [i, j] : poset.hasse_edges) {
    network.arcs.push_back({2 + i, 2 + j, network.infinity});
  }
  return network;
}

MinCut SolveMinCut(const CutNetwork& network) {
  using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS,
                                              boost::directedS>;
  using Graph = boost::adjacency_list<
      boost::vecS, boost::vecS, boost::directedS, boost::no_property,
      boost::property<
          boost::edge_capacity_t, std::int64_t,
          boost::property<boost::edge_residual_capacity_t, std::int64_t,
                          boost::property<boost::edge_reverse_t,
                                          Traits::edge_descriptor>>>>;
  Graph graph(network.num_nodes);
  auto capacity = boost::get(boost::edge_capacity, graph);
  auto residual = boost::get(boost::edge_residual_capacity, graph);
  auto reverse = boost::get(boost::edge_reverse, graph);
  for (const CutNetwork::Arc& arc : network.arcs) {
    auto forward = boost::add_edge(arc.from, arc.to, graph).first;
    auto backward = boost::add_edge(arc.to, arc.from, graph).first;
    capacity[forward] = arc.capacity;
    capacity[backward] = 0;
    reverse[forward] = backward;
    reverse[backward] = forward;
  }
  MinCut cut;
  cut.value = boost::push_relabel_max_flow(graph, CutNetwork::kSource,
                                           CutNetwork::kSink);

  // Residual arcs into each node, then search backwards from the sink.
  std::vector<std::vector<int>> residual_in(network.num_nodes);
  for (auto [it, end] = boost::edges(graph); it != end; ++it) {
    if (residual[*it] > 0) {
      residual_in[boost::target(*it, graph)].push_back(
          static_cast<int>(boost::source(*it, graph)));
    }
  }
  std::vector<bool> reaches(network.num_nodes, false);
  std::deque<int> queue{CutNetwork::kSink};
  reaches[CutNetwork::kSink] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : residual_in[v]) {
      if (!reaches[u]) {
        reaches[u] = true;
        queue.push_back(u);
      }
    }
  }
  if (reaches[CutNetwork::kSource]) {
    throw InvariantViolation("maximum flow left an augmenting path");
  }
  std::int64_t crossing = 0;
  for (const CutNetwork::Arc& arc : network.arcs) {
    if (!reaches[arc.from] && reaches[arc.to]) {
      crossing = AddOrThrow(crossing, arc.capacity);
    }
  }
  if (crossing != cut.value) {
    throw InvariantViolation("cut capacity differs from the flow value");
  }
  reaches[CutNetwork::kSink] = false;
  cut.sink_side = std::move(reaches);
  return cut;
}

MinCostResult MinCostStable(const Instance& instance,
                            const RotationPoset& poset,
                            const CostVector& costs) {
  if (poset.mode != PosetMode::kGapless) {
    throw Error("minimum-cost search needs a poset built in gapless mode");
  }
  if (static_cast<int>(costs.costs.size()) != instance.num_edges()) {
    throw Error("cost vector size differs from the edge count");
  }
  const std::vector<std::int64_t> rotation_costs = RotationCosts(poset, costs);
  const MinCut cut = SolveMinCut(BuildCutNetwork(poset, rotation_costs));
  MinCostResult result;
  ClosedFunction xi{std::vector<Count>(poset.size(), 0)};
  const std::vector<std::int64_t> scaled = costs.Scaled();
  std::int64_t expected = 0;
  for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
    expected = AddOrThrow(expected, MulOrThrow(scaled[e], poset.xmin[e]));
  }
  for (int i = 0; i < poset.size(); ++i) {
    if (!cut.sink_side[2 + i]) continue;
    result.ideal.push_back(i);
    xi.values[i] = poset.elements[i].tau;
    expected = AddOrThrow(
        expected, MulOrThrow(rotation_costs[i], poset.elements[i].tau));
  }
  result.x = OmegaInverse(instance, poset, xi);
  result.cost = TotalCost(costs, result.x);
  if (!(result.cost == Decimal{expected, costs.common_scale()})) {
    throw InvariantViolation("minimum cost does not decompose over the "
                             "ideal");
  }
  return result;
}

}  // namespace galloc
