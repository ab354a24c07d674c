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

// Instances of the generalized allocation model and integer assignments on
// their edges.
//
// Workers, firms and edges are indexed by their position in the input; all
// iteration and tie-breaking in the library follows these indices.

#ifndef GALLOC_MODEL_H_
#define GALLOC_MODEL_H_

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "galloc/choice.h"

namespace galloc {

using EdgeIndex = int;

enum class Side { kWorker, kFirm };

struct VertexRef {
  Side side;
  int index;
  auto operator<=>(const VertexRef&) const = default;
};

// Choice-function specification of a firm, as written in instance files.
struct CfSpec {
  enum class Type { kLinear, kTableau, kTableauAlternating };
  Type type = Type::kLinear;
  // Linear: preference order. Tableau: columns in order.
  std::vector<std::string> edges;
  Count quota = 0;
  // Tableau only: filling[i][j] = label of cell (i, j).
  std::vector<std::vector<int>> filling;
};

struct RawEdge {
  std::string id;
  std::string worker;
  std::string firm;
  Count capacity = 0;
};

// Instance data as parsed, before validation.
struct RawInstance {
  std::vector<std::string> workers;
  std::vector<std::string> firms;
  std::vector<RawEdge> edges;
  std::map<std::string, Count> worker_quotas;
  std::map<std::string, std::vector<std::string>> worker_orders;
  std::map<std::string, CfSpec> firm_cfs;
};

struct Edge {
  std::string id;
  int worker;
  int firm;
  Count capacity;
};

// Validated, immutable instance. Copies share the memoizing evaluators.
class Instance {
 public:
  int num_workers() const { return static_cast<int>(workers_.size()); }
  int num_firms() const { return static_cast<int>(firms_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int num_vertices() const { return num_workers() + num_firms(); }

  const std::string& worker_id(int w) const { return workers_[w]; }
  const std::string& firm_id(int f) const { return firms_[f]; }
  const std::string& vertex_id(VertexRef v) const;
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }
  Count capacity(EdgeIndex e) const { return edges_[e].capacity; }
  Count max_capacity() const { return max_capacity_; }
  Count quota(int w) const { return quotas_[w]; }

  // Incident edges in local order: preference order (most preferred first)
  // for workers, rule order for firms.
  std::span<const EdgeIndex> worker_edges(int w) const {
    return worker_edges_[w];
  }
  std::span<const EdgeIndex> firm_edges(int f) const { return firm_edges_[f]; }
  std::span<const EdgeIndex> incident(VertexRef v) const;
  // Position of e in the local order of its worker / firm.
  int worker_slot(EdgeIndex e) const { return worker_slot_[e]; }
  int firm_slot(EdgeIndex e) const { return firm_slot_[e]; }

  const ChoiceEvaluator& worker_choice(int w) const {
    return *worker_choice_[w];
  }
  const ChoiceEvaluator& firm_choice(int f) const { return *firm_choice_[f]; }
  const ChoiceEvaluator& choice(VertexRef v) const;

  std::optional<EdgeIndex> FindEdge(std::string_view id) const;
  std::optional<VertexRef> FindVertex(std::string_view id) const;
  // Throws Error for unknown ids.
  EdgeIndex EdgeByName(std::string_view id) const;
  VertexRef VertexByName(std::string_view id) const;

  // Sum of evaluator cache misses over all firms / workers.
  std::int64_t firm_calls() const;
  std::int64_t worker_calls() const;
  void ResetStatistics() const;
  void ClearCaches() const;

  const RawInstance& raw() const { return raw_; }

 private:
  friend Instance ValidateInstance(RawInstance raw);
  Instance() = default;

  RawInstance raw_;
  std::vector<std::string> workers_;
  std::vector<std::string> firms_;
  std::vector<Edge> edges_;
  std::vector<Count> quotas_;
  Count max_capacity_ = 0;
  std::vector<std::vector<EdgeIndex>> worker_edges_;
  std::vector<std::vector<EdgeIndex>> firm_edges_;
  std::vector<int> worker_slot_;
  std::vector<int> firm_slot_;
  std::vector<std::shared_ptr<ChoiceEvaluator>> worker_choice_;
  std::vector<std::shared_ptr<ChoiceEvaluator>> firm_choice_;
  std::unordered_map<std::string, EdgeIndex> edge_index_;
  std::unordered_map<std::string, VertexRef> vertex_index_;
};

// Checks every structural invariant and builds the evaluators. Throws Error
// naming the offending id.
Instance ValidateInstance(RawInstance raw);

// Integer function on edges. Value type; ordered lexicographically so it can
// key containers.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::vector<Count> values) : values_(std::move(values)) {}
  static Assignment Zero(const Instance& instance);

  Count operator[](EdgeIndex e) const { return values_[e]; }
  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<Count>& values() const { return values_; }

  auto operator<=>(const Assignment&) const = default;

 private:
  std::vector<Count> values_;
};

// Throws Error unless x has one value per edge within [0, b(e)].
void CheckInBox(const Instance& instance, const Assignment& x);

struct LocalVector {
  VertexRef owner;
  std::vector<EdgeIndex> edges;  // Local order.
  Local values;

  std::optional<Count> at(EdgeIndex e) const;
  Count size() const { return Size(values); }
};

LocalVector Restrict(const Instance& instance, const Assignment& x,
                     VertexRef v);
// Throws Error for unknown vertex ids.
LocalVector Restrict(const Instance& instance, const Assignment& x,
                     std::string_view vertex_id);

// Plain local vectors in local order.
Local WorkerLocal(const Instance& instance, const Assignment& x, int w);
Local FirmLocal(const Instance& instance, const Assignment& x, int f);

// x + weight * (chi(plus) - chi(minus)). Throws Error if the sets overlap or
// the result leaves the box.
Assignment Shift(const Instance& instance, const Assignment& x,
                 std::span<const EdgeIndex> plus,
                 std::span<const EdgeIndex> minus, Count weight);

// Same, but returns nullopt instead of throwing on box violations.
std::optional<Assignment> TryShift(const Instance& instance,
                                   const Assignment& x,
                                   std::span<const EdgeIndex> plus,
                                   std::span<const EdgeIndex> minus,
                                   Count weight);

}  // namespace galloc

#endif  // GALLOC_MODEL_H_
