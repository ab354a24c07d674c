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

#include "galloc/model.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "galloc/errors.h"

namespace galloc {
namespace {

// Checks that `listed` is a permutation of the edges incident to `owner` and
// returns the corresponding edge indices.
std::vector<EdgeIndex> ResolvePermutation(
    const std::unordered_map<std::string, EdgeIndex>& edge_index,
    const std::vector<EdgeIndex>& incident,
    const std::vector<std::string>& listed, const std::string& owner,
    const char* what) {
  std::vector<EdgeIndex> result;
  std::set<EdgeIndex> seen;
  for (const std::string& id : listed) {
    auto it = edge_index.find(id);
    if (it == edge_index.end()) {
      throw Error(std::string(what) + " of " + owner +
                  " references unknown edge " + id);
    }
    if (std::find(incident.begin(), incident.end(), it->second) ==
        incident.end()) {
      throw Error(std::string(what) + " of " + owner + " lists edge " + id +
                  " which is not incident to it");
    }
    if (!seen.insert(it->second).second) {
      throw Error(std::string(what) + " of " + owner + " repeats edge " + id);
    }
    result.push_back(it->second);
  }
  if (result.size() != incident.size()) {
    throw Error(std::string("incomplete ") + what + " for " + owner);
  }
  return result;
}

}  // namespace

const std::string& Instance::vertex_id(VertexRef v) const {
  return v.side == Side::kWorker ? workers_[v.index] : firms_[v.index];
}

std::span<const EdgeIndex> Instance::incident(VertexRef v) const {
  return v.side == Side::kWorker ? worker_edges(v.index) : firm_edges(v.index);
}

const ChoiceEvaluator& Instance::choice(VertexRef v) const {
  return v.side == Side::kWorker ? worker_choice(v.index)
                                 : firm_choice(v.index);
}

std::optional<EdgeIndex> Instance::FindEdge(std::string_view id) const {
  auto it = edge_index_.find(std::string(id));
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<VertexRef> Instance::FindVertex(std::string_view id) const {
  auto it = vertex_index_.find(std::string(id));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

EdgeIndex Instance::EdgeByName(std::string_view id) const {
  auto e = FindEdge(id);
  if (!e) throw Error("unknown edge id " + std::string(id));
  return *e;
}

VertexRef Instance::VertexByName(std::string_view id) const {
  auto v = FindVertex(id);
  if (!v) throw Error("unknown vertex id " + std::string(id));
  return *v;
}

std::int64_t Instance::firm_calls() const {
  std::int64_t total = 0;
  for (const auto& c : firm_choice_) total += c->call_count();
  return total;
}

std::int64_t Instance::worker_calls() const {
  std::int64_t total = 0;
  for (const auto& c : worker_choice_) total += c->call_count();
  return total;
}

void Instance::ResetStatistics() const {
  for (const auto& c : firm_choice_) c->ResetStatistics();
  for (const auto& c : worker_choice_) c->ResetStatistics();
}

void Instance::ClearCaches() const {
  for (const auto& c : firm_choice_) c->ClearCache();
  for (const auto& c : worker_choice_) c->ClearCache();
}

Instance ValidateInstance(RawInstance raw) {
  Instance inst;
  for (const std::string& id : raw.workers) {
    if (!inst.vertex_index_
             .emplace(id, VertexRef{Side::kWorker,
                                    static_cast<int>(inst.workers_.size())})
             .second) {
      throw Error("duplicate vertex id " + id);
    }
    inst.workers_.push_back(id);
  }
  for (const std::string& id : raw.firms) {
    if (!inst.vertex_index_
             .emplace(id, VertexRef{Side::kFirm,
                                    static_cast<int>(inst.firms_.size())})
             .second) {
      throw Error("duplicate vertex id " + id);
    }
    inst.firms_.push_back(id);
  }

  const int num_workers = inst.num_workers();
  const int num_firms = inst.num_firms();
  std::vector<std::vector<EdgeIndex>> by_worker(num_workers);
  std::vector<std::vector<EdgeIndex>> by_firm(num_firms);
  std::set<std::pair<int, int>> pairs;
  for (const RawEdge& re : raw.edges) {
    auto w = inst.FindVertex(re.worker);
    auto f = inst.FindVertex(re.firm);
    if (!w || w->side != Side::kWorker) {
      throw Error("edge " + re.id + " references unknown worker " + re.worker);
    }
    if (!f || f->side != Side::kFirm) {
      throw Error("edge " + re.id + " references unknown firm " + re.firm);
    }
    if (re.capacity < 0) throw Error("negative capacity on edge " + re.id);
    if (!pairs.emplace(w->index, f->index).second) {
      throw Error("multiple edges between " + re.worker + " and " + re.firm +
                  " (edge " + re.id + ")");
    }
    const EdgeIndex e = inst.num_edges();
    if (!inst.edge_index_.emplace(re.id, e).second) {
      throw Error("duplicate edge id " + re.id);
    }
    inst.edges_.push_back({re.id, w->index, f->index, re.capacity});
    inst.max_capacity_ = std::max(inst.max_capacity_, re.capacity);
    by_worker[w->index].push_back(e);
    by_firm[f->index].push_back(e);
  }

  for (const auto& [id, q] : raw.worker_quotas) {
    auto v = inst.FindVertex(id);
    if (!v || v->side != Side::kWorker) {
      throw Error("quota given for unknown worker " + id);
    }
  }
  for (const auto& [id, order] : raw.worker_orders) {
    auto v = inst.FindVertex(id);
    if (!v || v->side != Side::kWorker) {
      throw Error("order given for unknown worker " + id);
    }
  }
  for (const auto& [id, spec] : raw.firm_cfs) {
    auto v = inst.FindVertex(id);
    if (!v || v->side != Side::kFirm) {
      throw Error("choice function given for unknown firm " + id);
    }
  }

  const int num_edges = inst.num_edges();
  inst.worker_slot_.assign(num_edges, -1);
  inst.firm_slot_.assign(num_edges, -1);
  for (int w = 0; w < num_workers; ++w) {
    const std::string& id = inst.workers_[w];
    auto q = raw.worker_quotas.find(id);
    if (q == raw.worker_quotas.end()) throw Error("missing quota for " + id);
    if (q->second < 0) throw Error("negative quota for " + id);
    inst.quotas_.push_back(q->second);
    static const std::vector<std::string> kEmpty;
    auto order = raw.worker_orders.find(id);
    const auto& listed = order == raw.worker_orders.end() ? kEmpty
                                                          : order->second;
    if (order == raw.worker_orders.end() && !by_worker[w].empty()) {
      throw Error("incomplete order for " + id);
    }
    std::vector<EdgeIndex> local = ResolvePermutation(
        inst.edge_index_, by_worker[w], listed, id, "order");
    std::vector<Count> bounds;
    for (size_t s = 0; s < local.size(); ++s) {
      inst.worker_slot_[local[s]] = static_cast<int>(s);
      bounds.push_back(inst.edges_[local[s]].capacity);
    }
    inst.worker_edges_.push_back(std::move(local));
    inst.worker_choice_.push_back(ChoiceEvaluator::Linear(
        id, ChoiceKind::kWorkerLinear, std::move(bounds), q->second));
  }

  for (int f = 0; f < num_firms; ++f) {
    const std::string& id = inst.firms_[f];
    auto it = raw.firm_cfs.find(id);
    if (it == raw.firm_cfs.end()) {
      throw Error("missing choice function for " + id);
    }
    const CfSpec& spec = it->second;
    if (spec.quota < 0) throw Error("negative quota for " + id);
    std::vector<EdgeIndex> local = ResolvePermutation(
        inst.edge_index_, by_firm[f], spec.edges, id,
        spec.type == CfSpec::Type::kLinear ? "order" : "column list");
    std::vector<Count> bounds;
    for (size_t s = 0; s < local.size(); ++s) {
      inst.firm_slot_[local[s]] = static_cast<int>(s);
      bounds.push_back(inst.edges_[local[s]].capacity);
    }
    std::shared_ptr<ChoiceEvaluator> evaluator;
    switch (spec.type) {
      case CfSpec::Type::kLinear:
        evaluator = ChoiceEvaluator::Linear(id, ChoiceKind::kFirmLinear,
                                            std::move(bounds), spec.quota);
        break;
      case CfSpec::Type::kTableau:
      case CfSpec::Type::kTableauAlternating: {
        std::optional<TableauRule> rule;
        try {
          rule = spec.type == CfSpec::Type::kTableau
                     ? TableauRule(spec.filling, spec.quota)
                     : TableauRule::Alternating(spec.quota);
        } catch (const Error& e) {
          throw Error("choice function of " + id + ": " + e.what());
        }
        if (rule->num_columns() != static_cast<int>(bounds.size())) {
          throw Error("tableau of " + id + " has " +
                      std::to_string(rule->num_columns()) +
                      " columns but the firm has " +
                      std::to_string(bounds.size()) + " edges");
        }
        for (size_t s = 0; s < bounds.size(); ++s) {
          if (rule->height(static_cast<int>(s)) != bounds[s]) {
            throw Error("tableau column of edge " +
                        inst.edges_[local[s]].id + " at " + id +
                        " does not match its capacity");
          }
        }
        evaluator = ChoiceEvaluator::Tableau(id, std::move(*rule));
        break;
      }
    }
    inst.firm_edges_.push_back(std::move(local));
    inst.firm_choice_.push_back(std::move(evaluator));
  }
  inst.raw_ = std::move(raw);
  return inst;
}

Assignment Assignment::Zero(const Instance& instance) {
  return Assignment(std::vector<Count>(instance.num_edges(), 0));
}

void CheckInBox(const Instance& instance, const Assignment& x) {
  if (x.size() != instance.num_edges()) {
    throw Error("assignment has " + std::to_string(x.size()) +
                " values for " + std::to_string(instance.num_edges()) +
                " edges");
  }
  for (EdgeIndex e = 0; e < x.size(); ++e) {
    if (x[e] < 0 || x[e] > instance.capacity(e)) {
      throw Error("value " + std::to_string(x[e]) + " on edge " +
                  instance.edge(e).id + " is outside [0, " +
                  std::to_string(instance.capacity(e)) + "]");
    }
  }
}

std::optional<Count> LocalVector::at(EdgeIndex e) const {
  for (size_t s = 0; s < edges.size(); ++s) {
    if (edges[s] == e) return values[s];
  }
  return std::nullopt;
}

LocalVector Restrict(const Instance& instance, const Assignment& x,
                     VertexRef v) {
  LocalVector result;
  result.owner = v;
  const auto edges = instance.incident(v);
  result.edges.assign(edges.begin(), edges.end());
  for (EdgeIndex e : edges) result.values.push_back(x[e]);
  return result;
}

LocalVector Restrict(const Instance& instance, const Assignment& x,
                     std::string_view vertex_id) {
  return Restrict(instance, x, instance.VertexByName(vertex_id));
}

Local WorkerLocal(const Instance& instance, const Assignment& x, int w) {
  const auto edges = instance.worker_edges(w);
  Local z(edges.size());
  for (size_t s = 0; s < edges.size(); ++s) z[s] = x[edges[s]];
  return z;
}

Local FirmLocal(const Instance& instance, const Assignment& x, int f) {
  const auto edges = instance.firm_edges(f);
  Local z(edges.size());
  for (size_t s = 0; s < edges.size(); ++s) z[s] = x[edges[s]];
  return z;
}

std::optional<Assignment> TryShift(const Instance& instance,
                                   const Assignment& x,
                                   std::span<const EdgeIndex> plus,
                                   std::span<const EdgeIndex> minus,
                                   Count weight) {
  for (EdgeIndex e : plus) {
    if (std::find(minus.begin(), minus.end(), e) != minus.end()) {
      throw Error("shift sets overlap at edge " + instance.edge(e).id);
    }
  }
  std::vector<Count> values = x.values();
  for (EdgeIndex e : plus) values[e] += weight;
  for (EdgeIndex e : minus) values[e] -= weight;
  for (EdgeIndex e = 0; e < static_cast<EdgeIndex>(values.size()); ++e) {
    if (values[e] < 0 || values[e] > instance.capacity(e)) return std::nullopt;
  }
  return Assignment(std::move(values));
}

Assignment Shift(const Instance& instance, const Assignment& x,
                 std::span<const EdgeIndex> plus,
                 std::span<const EdgeIndex> minus, Count weight) {
  auto result = TryShift(instance, x, plus, minus, weight);
  if (!result) {
    throw Error("shift by weight " + std::to_string(weight) +
                " leaves the box");
  }
  return *std::move(result);
}

}  // namespace galloc
