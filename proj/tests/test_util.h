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

// Small fixtures shared by the unit tests.
#ifndef GALLOC_TESTS_TEST_UTIL_H_
#define GALLOC_TESTS_TEST_UTIL_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "galloc/model.h"
#include "reference.h"

namespace galloc::testing {

using Prefs = std::vector<std::pair<std::string, std::vector<std::string>>>;

// Linear rules on both sides. Edge ids are worker id + firm id; every edge
// gets `capacity` unless overridden. `quotas` covers workers and firms.
inline RawInstance LinearRaw(const Prefs& workers, const Prefs& firms,
                             const std::map<std::string, Count>& quotas,
                             Count capacity = 1,
                             const std::map<std::string, Count>& caps = {}) {
  RawInstance raw;
  for (const auto& [w, order] : workers) {
    raw.workers.push_back(w);
    raw.worker_quotas[w] = quotas.at(w);
    for (const std::string& f : order) {
      const std::string id = w + f;
      raw.edges.push_back(
          {id, w, f, caps.contains(id) ? caps.at(id) : capacity});
      raw.worker_orders[w].push_back(id);
    }
  }
  for (const auto& [f, order] : firms) {
    raw.firms.push_back(f);
    CfSpec spec;
    spec.quota = quotas.at(f);
    for (const std::string& w : order) spec.edges.push_back(w + f);
    raw.firm_cfs[f] = std::move(spec);
  }
  return raw;
}

// Two workers and two firms with opposed preferences: two stable
// assignments, one rotation.
inline RawInstance SwapRaw(const std::string& suffix = "", Count b = 1,
                           Count q = 1) {
  const std::string w1 = "w1" + suffix, w2 = "w2" + suffix;
  const std::string f1 = "f1" + suffix, f2 = "f2" + suffix;
  return LinearRaw({{w1, {f1, f2}}, {w2, {f2, f1}}},
                   {{f1, {w2, w1}}, {f2, {w1, w2}}},
                   {{w1, q}, {w2, q}, {f1, q}, {f2, q}}, b);
}

// Two disjoint swaps: four stable assignments, two independent rotations.
inline RawInstance TwoSwapsRaw() {
  RawInstance a = SwapRaw("a");
  const RawInstance b = SwapRaw("b");
  a.workers.insert(a.workers.end(), b.workers.begin(), b.workers.end());
  a.firms.insert(a.firms.end(), b.firms.begin(), b.firms.end());
  a.edges.insert(a.edges.end(), b.edges.begin(), b.edges.end());
  a.worker_quotas.insert(b.worker_quotas.begin(), b.worker_quotas.end());
  a.worker_orders.insert(b.worker_orders.begin(), b.worker_orders.end());
  a.firm_cfs.insert(b.firm_cfs.begin(), b.firm_cfs.end());
  return a;
}

// Three workers and three firms in a cyclic pattern: three stable
// assignments on a chain of two rotations.
inline RawInstance CycleRaw() {
  return LinearRaw({{"w1", {"f1", "f2", "f3"}},
                    {"w2", {"f2", "f3", "f1"}},
                    {"w3", {"f3", "f1", "f2"}}},
                   {{"f1", {"w2", "w3", "w1"}},
                    {"f2", {"w3", "w1", "w2"}},
                    {"f3", {"w1", "w2", "w3"}}},
                   {{"w1", 1}, {"w2", 1}, {"w3", 1},
                    {"f1", 1}, {"f2", 1}, {"f3", 1}});
}

// Point i of the alternating chain placed at every firm of the
// three-firm alternating instance.
inline Assignment AlternatingPoint(const Instance& instance, Count q,
                                   Count i) {
  const Vec z = RefAlternatingChain(q, i);
  std::vector<Count> values(instance.num_edges(), 0);
  for (int f = 0; f < instance.num_firms(); ++f) {
    const auto edges = instance.firm_edges(f);
    for (size_t s = 0; s < edges.size(); ++s) values[edges[s]] = z[s];
  }
  return Assignment(std::move(values));
}

inline Assignment ByName(const Instance& instance,
                         const std::map<std::string, Count>& values) {
  std::vector<Count> x(instance.num_edges(), 0);
  for (const auto& [id, v] : values) x[instance.EdgeByName(id)] = v;
  return Assignment(std::move(x));
}

}  // namespace galloc::testing

#endif  // GALLOC_TESTS_TEST_UTIL_H_
