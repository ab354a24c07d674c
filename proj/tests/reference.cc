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

#include "reference.h"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace galloc::testing {

Vec RefLinearChoice(const Vec& z, std::int64_t quota) {
  Vec out(z.size(), 0);
  std::int64_t left = quota;
  for (size_t i = 0; i < z.size(); ++i) {
    out[i] = std::min(z[i], left);
    left -= out[i];
  }
  return out;
}

Vec RefTableauChoice(const std::vector<std::vector<int>>& filling,
                     std::int64_t quota, const Vec& z) {
  const int k = static_cast<int>(filling.size());
  std::int64_t size = 0;
  int cells = 0;
  for (int i = 0; i < k; ++i) {
    size += z[i];
    cells += static_cast<int>(filling[i].size());
  }
  const std::int64_t want = k + std::min(size, quota);
  for (int threshold = 1; threshold <= cells; ++threshold) {
    Vec below(k, 0);
    std::int64_t count = 0;
    for (int i = 0; i < k; ++i) {
      for (std::int64_t j = 0; j <= z[i]; ++j) {
        if (filling[i][j] <= threshold) ++below[i];
      }
      count += below[i];
    }
    if (count == want) {
      for (int i = 0; i < k; ++i) --below[i];
      return below;
    }
  }
  throw std::logic_error("reference tableau found no threshold");
}

std::vector<std::vector<int>> RefAlternatingFilling(std::int64_t q) {
  const int qi = static_cast<int>(q);
  const int p = qi / 2;
  std::vector<std::vector<int>> t(3);
  t[0].push_back(1);
  t[1].push_back(2);
  t[2].push_back(3);
  for (int j = 1; j <= qi; ++j) t[0].push_back(3 + j);
  for (int j = 1; j <= p; ++j) {
    t[1].push_back(2 + qi + 2 * j);
    t[2].push_back(3 + qi + 2 * j);
  }
  return t;
}

Vec RefAlternatingChain(std::int64_t q, std::int64_t i) {
  const std::int64_t p = q / 2;
  if (i % 2 == 0) return {i, p - i / 2, p - i / 2};
  return {i, p - (i - 1) / 2, p - (i + 1) / 2};
}

RefModel::RefModel(const RawInstance& raw) {
  std::map<std::string, int> edge_index;
  std::map<std::string, int> worker_index;
  std::map<std::string, int> firm_index;
  for (size_t w = 0; w < raw.workers.size(); ++w) {
    worker_index[raw.workers[w]] = static_cast<int>(w);
  }
  for (size_t f = 0; f < raw.firms.size(); ++f) {
    firm_index[raw.firms[f]] = static_cast<int>(f);
  }
  for (size_t e = 0; e < raw.edges.size(); ++e) {
    edge_index[raw.edges[e].id] = static_cast<int>(e);
    caps_.push_back(raw.edges[e].capacity);
    edge_worker_.push_back(worker_index.at(raw.edges[e].worker));
    edge_firm_.push_back(firm_index.at(raw.edges[e].firm));
  }
  for (const std::string& w : raw.workers) {
    Vertex v;
    v.quota = raw.worker_quotas.at(w);
    for (const std::string& id : raw.worker_orders.at(w)) {
      v.edges.push_back(edge_index.at(id));
    }
    workers_.push_back(std::move(v));
  }
  for (const std::string& f : raw.firms) {
    const CfSpec& spec = raw.firm_cfs.at(f);
    Vertex v;
    v.quota = spec.quota;
    for (const std::string& id : spec.edges) v.edges.push_back(edge_index.at(id));
    if (spec.type == CfSpec::Type::kTableau) {
      v.linear = false;
      v.filling = spec.filling;
    } else if (spec.type == CfSpec::Type::kTableauAlternating) {
      v.linear = false;
      v.filling = RefAlternatingFilling(spec.quota);
    }
    firms_.push_back(std::move(v));
  }
}

Vec RefModel::Local(const Vertex& v, const Vec& x) const {
  Vec z;
  for (int e : v.edges) z.push_back(x[e]);
  return z;
}

Vec RefModel::Choose(const Vertex& v, const Vec& z) const {
  return v.linear ? RefLinearChoice(z, v.quota)
                  : RefTableauChoice(v.filling, v.quota, z);
}

bool RefModel::Interesting(const Vertex& v, const Vec& z, int slot) const {
  if (z[slot] >= caps_[v.edges[slot]]) return false;
  Vec up = z;
  ++up[slot];
  return Choose(v, up) != z;
}

bool RefModel::IsStable(const Vec& x) const {
  for (int e = 0; e < num_edges(); ++e) {
    if (x[e] < 0 || x[e] > caps_[e]) return false;
  }
  for (const auto* side : {&workers_, &firms_}) {
    for (const Vertex& v : *side) {
      const Vec z = Local(v, x);
      if (Choose(v, z) != z) return false;
    }
  }
  for (int e = 0; e < num_edges(); ++e) {
    const Vertex& w = workers_[edge_worker_[e]];
    const Vertex& f = firms_[edge_firm_[e]];
    const int ws = static_cast<int>(
        std::find(w.edges.begin(), w.edges.end(), e) - w.edges.begin());
    const int fs = static_cast<int>(
        std::find(f.edges.begin(), f.edges.end(), e) - f.edges.begin());
    if (Interesting(w, Local(w, x), ws) && Interesting(f, Local(f, x), fs)) {
      return false;
    }
  }
  return true;
}

bool RefModel::FirmsWeaklyBelow(const Vec& x, const Vec& y) const {
  for (const Vertex& f : firms_) {
    const Vec a = Local(f, x);
    const Vec b = Local(f, y);
    Vec join(a.size());
    for (size_t i = 0; i < a.size(); ++i) join[i] = std::max(a[i], b[i]);
    if (Choose(f, join) != b) return false;
  }
  return true;
}

Vec RefModel::FirmLocal(const Vec& x, int f) const {
  return Local(firms_[f], x);
}

std::vector<Vec> RefModel::EnumerateStable() const {
  std::vector<Vec> result;
  Vec x(num_edges(), 0);
  Vec worker_load(workers_.size(), 0);
  Vec firm_load(firms_.size(), 0);
  auto recurse = [&](auto&& self, int e) -> void {
    if (e == num_edges()) {
      if (IsStable(x)) result.push_back(x);
      return;
    }
    const int w = edge_worker_[e];
    const int f = edge_firm_[e];
    for (std::int64_t v = 0; v <= caps_[e]; ++v) {
      if (worker_load[w] + v > workers_[w].quota ||
          firm_load[f] + v > firms_[f].quota) {
        break;
      }
      x[e] = v;
      worker_load[w] += v;
      firm_load[f] += v;
      self(self, e + 1);
      worker_load[w] -= v;
      firm_load[f] -= v;
    }
    x[e] = 0;
  };
  recurse(recurse, 0);
  return result;
}

Vec RefModel::Least(const std::vector<Vec>& set) const {
  for (const Vec& a : set) {
    bool least = true;
    for (const Vec& b : set) {
      if (!FirmsWeaklyBelow(a, b)) {
        least = false;
        break;
      }
    }
    if (least) return a;
  }
  return {};
}

Vec RefModel::Greatest(const std::vector<Vec>& set) const {
  for (const Vec& a : set) {
    bool greatest = true;
    for (const Vec& b : set) {
      if (!FirmsWeaklyBelow(b, a)) {
        greatest = false;
        break;
      }
    }
    if (greatest) return a;
  }
  return {};
}

}  // namespace galloc::testing
