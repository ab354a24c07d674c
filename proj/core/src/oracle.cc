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

#include "galloc/oracle.h"

#include <algorithm>
#include <string>

#include "galloc/errors.h"
#include "galloc/stability.h"

namespace galloc {
namespace {

void CheckSpace(const std::vector<Count>& radices, std::int64_t limit,
                const char* what) {
  std::int64_t product = 1;
  for (Count r : radices) {
    if (__builtin_mul_overflow(product, r + 1, &product) || product > limit) {
      throw LimitExceeded(std::string("enumeration limit exceeded: ") + what +
                          " has more than " + std::to_string(limit) +
                          " points");
    }
  }
}

bool AtMost(Preference p) {
  return p == Preference::kLess || p == Preference::kEqual;
}

Preference Reverse(Preference p) {
  switch (p) {
    case Preference::kLess:
      return Preference::kGreater;
    case Preference::kGreater:
      return Preference::kLess;
    default:
      return p;
  }
}

std::string Show(const Instance& instance, const Assignment& x) {
  std::string out = "{";
  for (EdgeIndex e = 0; e < x.size(); ++e) {
    if (e > 0) out += ", ";
    out += instance.edge(e).id + ": " + std::to_string(x[e]);
  }
  return out + "}";
}

// Least element of `candidates` under `order`, or -1.
int Least(const std::vector<std::vector<Preference>>& order,
          const std::vector<int>& candidates) {
  for (int u : candidates) {
    bool least = true;
    for (int v : candidates) {
      if (!AtMost(order[u][v])) {
        least = false;
        break;
      }
    }
    if (least) return u;
  }
  return -1;
}

}  // namespace

int EnumeratedLattice::Join(int i, int j) const {
  std::vector<int> upper;
  for (int k = 0; k < size(); ++k) {
    if (AtMost(order[i][k]) && AtMost(order[j][k])) upper.push_back(k);
  }
  return Least(order, upper);
}

int EnumeratedLattice::Meet(int i, int j) const {
  std::vector<int> lower;
  for (int k = 0; k < size(); ++k) {
    if (AtMost(order[k][i]) && AtMost(order[k][j])) lower.push_back(k);
  }
  // Greatest lower bound: least under the reversed order.
  for (int u : lower) {
    bool greatest = true;
    for (int v : lower) {
      if (!AtMost(order[v][u])) {
        greatest = false;
        break;
      }
    }
    if (greatest) return u;
  }
  return -1;
}

int EnumeratedLattice::IndexOf(const Assignment& x) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), x);
  if (it == elements.end() || *it != x) return -1;
  return static_cast<int>(it - elements.begin());
}

EnumeratedLattice EnumerateStable(const Instance& instance,
                                  std::int64_t limit) {
  const int m = instance.num_edges();
  std::vector<Count> caps(m);
  for (EdgeIndex e = 0; e < m; ++e) caps[e] = instance.capacity(e);
  CheckSpace(caps, limit, "the capacity box");
  std::vector<Count> values(m, 0);

  // Vertices whose incident edges are all assigned once edge e is, and
  // edges whose two endpoints are then both settled.
  std::vector<std::vector<VertexRef>> completes(m);
  std::vector<EdgeIndex> worker_done(instance.num_workers());
  std::vector<EdgeIndex> firm_done(instance.num_firms());
  for (int w = 0; w < instance.num_workers(); ++w) {
    const auto edges = instance.worker_edges(w);
    if (edges.empty()) continue;
    worker_done[w] = *std::max_element(edges.begin(), edges.end());
    completes[worker_done[w]].push_back({Side::kWorker, w});
  }
  for (int f = 0; f < instance.num_firms(); ++f) {
    const auto edges = instance.firm_edges(f);
    if (edges.empty()) continue;
    firm_done[f] = *std::max_element(edges.begin(), edges.end());
    completes[firm_done[f]].push_back({Side::kFirm, f});
  }
  std::vector<std::vector<EdgeIndex>> settles(m);
  for (EdgeIndex g = 0; g < m; ++g) {
    settles[std::max(worker_done[instance.edge(g).worker],
                     firm_done[instance.edge(g).firm])]
        .push_back(g);
  }
  auto gather = [&](std::span<const EdgeIndex> edges, Local& out) {
    out.resize(edges.size());
    for (size_t s = 0; s < edges.size(); ++s) out[s] = values[edges[s]];
  };
  Local other;  // Scratch.

  EnumeratedLattice lattice;
  std::vector<Count> worker_load(instance.num_workers(), 0);
  Local local;  // Scratch.
  // An acceptable firm vector never exceeds the firm's quota.
  std::vector<Count> firm_load(instance.num_firms(), 0);
  // Lexicographic order: edge 0 is the most significant digit.
  auto recurse = [&](auto&& self, EdgeIndex e) -> void {
    if (e == m) {
      Assignment x(values);
      if (IsStable(instance, x)) lattice.elements.push_back(std::move(x));
      return;
    }
    const int w = instance.edge(e).worker;
    const int f = instance.edge(e).firm;
    const Count firm_quota = instance.firm_choice(f).quota();
    for (Count v = 0; v <= caps[e]; ++v) {
      if (worker_load[w] + v > instance.quota(w)) break;
      if (firm_load[f] + v > firm_quota) break;
      values[e] = v;
      worker_load[w] += v;
      firm_load[f] += v;
      bool acceptable = true;
      for (VertexRef vertex : completes[e]) {
        const auto edges = vertex.side == Side::kWorker
                               ? instance.worker_edges(vertex.index)
                               : instance.firm_edges(vertex.index);
        gather(edges, local);
        if (!instance.choice(vertex).IsAcceptable(local)) {
          acceptable = false;
          break;
        }
      }
      // Blocking edges among the settled ones.
      for (size_t i = 0; acceptable && i < settles[e].size(); ++i) {
        const EdgeIndex g = settles[e][i];
        if (values[g] == caps[g]) continue;
        const Edge& edge = instance.edge(g);
        gather(instance.worker_edges(edge.worker), local);
        gather(instance.firm_edges(edge.firm), other);
        if (IsInteresting(instance.worker_choice(edge.worker), local,
                          instance.worker_slot(g)) &&
            IsInteresting(instance.firm_choice(edge.firm), other,
                          instance.firm_slot(g))) {
          acceptable = false;
        }
      }
      if (acceptable) self(self, e + 1);
      worker_load[w] -= v;
      firm_load[f] -= v;
    }
    values[e] = 0;
  };
  recurse(recurse, 0);

  if (lattice.elements.empty()) {
    throw InvariantViolation("the instance has no stable assignment");
  }
  const int n = lattice.size();
  lattice.order.assign(n, std::vector<Preference>(n, Preference::kEqual));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Preference p =
          CompareFirms(instance, lattice.elements[i], lattice.elements[j]);
      lattice.order[i][j] = p;
      lattice.order[j][i] = Reverse(p);
    }
  }
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  lattice.min_index = Least(lattice.order, all);
  for (int u : all) {
    bool greatest = true;
    for (int v : all) {
      if (!AtMost(lattice.order[v][u])) {
        greatest = false;
        break;
      }
    }
    if (greatest) {
      lattice.max_index = u;
      break;
    }
  }
  if (lattice.min_index < 0 || lattice.max_index < 0) {
    throw InvariantViolation("stable assignments have no least or greatest "
                             "element");
  }
  return lattice;
}

LatticeReport VerifyLatticeProperties(const Instance& instance,
                                      const EnumeratedLattice& lattice) {
  LatticeReport report;
  const int n = lattice.size();
  auto fail = [&](bool LatticeReport::*flag, std::string message) {
    report.*flag = false;
    report.passed = false;
    if (report.violations.size() < 100) {
      report.violations.push_back(std::move(message));
    }
  };

  std::vector<std::vector<int>> join(n, std::vector<int>(n));
  std::vector<std::vector<int>> meet(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      join[i][j] = lattice.Join(i, j);
      meet[i][j] = lattice.Meet(i, j);
      if (join[i][j] < 0 || meet[i][j] < 0) {
        fail(&LatticeReport::is_lattice,
             "no join or meet for " + Show(instance, lattice.elements[i]) +
                 " and " + Show(instance, lattice.elements[j]));
      }
    }
  }
  if (report.is_lattice) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          if (meet[i][join[j][k]] != join[meet[i][j]][meet[i][k]]) {
            fail(&LatticeReport::distributive,
                 "meet does not distribute over join at " +
                     Show(instance, lattice.elements[i]));
          }
        }
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Preference workers =
          CompareWorkers(instance, lattice.elements[i], lattice.elements[j]);
      if (workers != Reverse(lattice.order[i][j])) {
        fail(&LatticeReport::polarity,
             "worker order is not the reverse of firm order on " +
                 Show(instance, lattice.elements[i]) + " and " +
                 Show(instance, lattice.elements[j]));
      }
    }
  }

  auto check_vertex = [&](VertexRef v, Count quota) {
    std::vector<Local> locals;
    for (const Assignment& x : lattice.elements) {
      locals.push_back(v.side == Side::kWorker
                           ? WorkerLocal(instance, x, v.index)
                           : FirmLocal(instance, x, v.index));
    }
    const Count size = Size(locals.front());
    for (const Local& local : locals) {
      if (Size(local) != size) {
        fail(&LatticeReport::unisize,
             "load of " + instance.vertex_id(v) + " varies");
        return;
      }
    }
    if (size < quota) {
      for (const Local& local : locals) {
        if (local != locals.front()) {
          fail(&LatticeReport::deficit_fixed,
               "restriction to deficit vertex " + instance.vertex_id(v) +
                   " varies");
          return;
        }
      }
    }
  };
  for (int w = 0; w < instance.num_workers(); ++w) {
    check_vertex({Side::kWorker, w}, instance.quota(w));
  }
  for (int f = 0; f < instance.num_firms(); ++f) {
    check_vertex({Side::kFirm, f}, instance.firm_choice(f).quota());
  }
  return report;
}

std::vector<ClosedFunction> EnumerateClosedFunctions(
    const RotationPoset& poset, std::int64_t limit) {
  const int n = poset.size();
  std::vector<Count> taus(n);
  for (int i = 0; i < n; ++i) taus[i] = poset.elements[i].tau;
  CheckSpace(taus, limit, "the closed-function space");

  // Hasse edges checked once both endpoints are set.
  std::vector<std::vector<std::pair<int, int>>> ready(n);
  for (const auto& [i, j] : poset.hasse_edges) {
    ready[std::max(i, j)].emplace_back(i, j);
  }
  std::vector<ClosedFunction> result;
  std::vector<Count> values(n, 0);
  auto recurse = [&](auto&& self, int i) -> void {
    if (i == n) {
      result.push_back({values});
      return;
    }
    for (Count v = 0; v <= taus[i]; ++v) {
      values[i] = v;
      bool closed = true;
      for (const auto& [a, b] : ready[i]) {
        if (values[b] > 0 && values[a] != taus[a]) {
          closed = false;
          break;
        }
      }
      if (closed) self(self, i + 1);
    }
    values[i] = 0;
  };
  recurse(recurse, 0);
  return result;
}

}  // namespace galloc
