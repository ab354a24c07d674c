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

#include "galloc/genrand.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "galloc/axioms.h"
#include "galloc/errors.h"

namespace galloc {
namespace {

constexpr int kConnectAttempts = 1000;
constexpr std::int64_t kDensityResolution = 1'000'000;
constexpr int kGaplessAttempts = 100;

int Find(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

// False also when the box is too large to decide.
bool GaplessFilling(const std::vector<std::vector<int>>& filling,
                    const std::vector<Count>& heights, Count quota) {
  const TableauRule rule(filling, quota);
  try {
    return CheckGapless(
               [&rule](std::span<const Count> z) {
                 return EvaluateTableauChoice(rule, z);
               },
               heights)
        .passed;
  } catch (const LimitExceeded&) {
    return false;
  }
}

void CheckConfig(const GeneratorConfig& config) {
  if (config.workers < 1 || config.firms < 1) {
    throw Error("generator needs at least one worker and one firm");
  }
  if (!(config.density > 0.0 && config.density <= 1.0)) {
    throw Error("edge density must lie in (0, 1]");
  }
  if (config.capacity_bound < 1 || config.quota_bound < 1) {
    throw Error("capacity and quota bounds must be positive");
  }
  if (config.gapless_capacity_cap && *config.gapless_capacity_cap < 1) {
    throw Error("capacity cap must be positive");
  }
}

}  // namespace

std::int64_t Prng::Uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw Error("empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) -
                             static_cast<std::uint64_t>(lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(engine_());
  // Reject the incomplete top block so every residue is equally likely.
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t cutoff = max - (max % span + 1) % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw > cutoff);
  return lo + static_cast<std::int64_t>(draw % span);
}

bool Prng::Bernoulli(std::int64_t num, std::int64_t den) {
  return Uniform(0, den - 1) < num;
}

const char* CfFamilyName(CfFamily family) {
  switch (family) {
    case CfFamily::kLinear:
      return "linear";
    case CfFamily::kTableau:
      return "tableau";
    case CfFamily::kTableauAlternating:
      return "tableau-a3";
    case CfFamily::kMixed:
      return "mixed";
  }
  return "?";
}

CfFamily ParseCfFamily(const std::string& name) {
  for (CfFamily f : {CfFamily::kLinear, CfFamily::kTableau,
                     CfFamily::kTableauAlternating, CfFamily::kMixed}) {
    if (name == CfFamilyName(f)) return f;
  }
  throw Error("unknown choice-function family " + name);
}

TableauRule RandomTableau(Prng& prng, const std::vector<Count>& heights,
                          Count quota) {
  const int k = static_cast<int>(heights.size());
  std::vector<std::vector<int>> filling(k);
  std::vector<int> chain;
  for (int i = 0; i < k; ++i) {
    filling[i].push_back(i + 1);
    if (heights[i] < 0) throw Error("tableau height must be nonnegative");
    chain.insert(chain.end(), heights[i], i);
  }
  prng.Shuffle(chain);
  int label = k;
  for (int column : chain) filling[column].push_back(++label);
  return TableauRule(std::move(filling), quota);
}

RawInstance MakeAppendixRaw(Count quota) {
  if (quota < 2 || quota % 2 != 0) {
    throw Error("the alternating family needs an even quota >= 2");
  }
  RawInstance raw;
  auto name = [](char prefix, int i) {
    return std::string(1, prefix) + std::to_string(i % 3 + 1);
  };
  for (int i = 0; i < 3; ++i) {
    raw.workers.push_back(name('w', i));
    raw.firms.push_back(name('f', i));
  }
  for (int i = 0; i < 3; ++i) {
    const std::string w = name('w', i);
    raw.edges.push_back({name('a', i), w, name('f', i), quota});
    raw.edges.push_back({name('c', i), w, name('f', i + 1), quota / 2});
    raw.edges.push_back({name('d', i), w, name('f', i + 2), quota / 2});
    raw.worker_quotas[w] = quota;
    raw.worker_orders[w] = {name('c', i), name('d', i), name('a', i)};
  }
  for (int i = 0; i < 3; ++i) {
    CfSpec spec;
    spec.type = CfSpec::Type::kTableauAlternating;
    spec.edges = {name('a', i), name('c', i + 2), name('d', i + 1)};
    spec.quota = quota;
    raw.firm_cfs[name('f', i)] = std::move(spec);
  }
  return raw;
}

Instance MakeAppendixInstance(Count quota) {
  return ValidateInstance(MakeAppendixRaw(quota));
}

RawInstance GenerateRaw(const GeneratorConfig& config) {
  CheckConfig(config);
  if (config.family == CfFamily::kTableauAlternating) {
    if (config.workers != 3 || config.firms != 3) {
      throw Error("the alternating family has three workers and three firms");
    }
    return MakeAppendixRaw(config.quota_bound);
  }
  Prng prng(config.seed);
  const int nw = config.workers;
  const int nf = config.firms;
  const std::int64_t threshold = std::max<std::int64_t>(
      1, std::llround(config.density * kDensityResolution));

  std::vector<std::pair<int, int>> pairs;
  bool connected = false;
  for (int attempt = 0; attempt < kConnectAttempts && !connected; ++attempt) {
    pairs.clear();
    std::vector<int> parent(nw + nf);
    std::iota(parent.begin(), parent.end(), 0);
    int components = nw + nf;
    for (int w = 0; w < nw; ++w) {
      for (int f = 0; f < nf; ++f) {
        if (!prng.Bernoulli(threshold, kDensityResolution)) continue;
        pairs.emplace_back(w, f);
        const int a = Find(parent, w);
        const int b = Find(parent, nw + f);
        if (a != b) {
          parent[a] = b;
          --components;
        }
      }
    }
    connected = components == 1;
  }
  if (!connected) {
    throw Error("no connected graph drawn; raise the edge density");
  }

  Count cap = config.capacity_bound;
  if (config.gapless_capacity_cap) {
    cap = std::min(cap, *config.gapless_capacity_cap);
  }
  RawInstance raw;
  for (int w = 0; w < nw; ++w) raw.workers.push_back("w" + std::to_string(w + 1));
  for (int f = 0; f < nf; ++f) raw.firms.push_back("f" + std::to_string(f + 1));
  std::vector<std::vector<std::string>> by_worker(nw);
  std::vector<std::vector<std::string>> by_firm(nf);
  std::map<std::string, Count> capacity;
  std::map<std::string, int> rank;  // Position in the worker's order.
  std::map<std::string, int> firm_of;
  for (const auto& [w, f] : pairs) {
    const std::string id = raw.workers[w] + raw.firms[f];
    const Count b = prng.Uniform(1, cap);
    raw.edges.push_back({id, raw.workers[w], raw.firms[f], b});
    capacity[id] = b;
    by_worker[w].push_back(id);
    by_firm[f].push_back(id);
    firm_of[id] = f;
  }
  // Opposed instances share one quota so both sides stay saturated.
  const Count shared_quota =
      config.opposed ? prng.Uniform(1, config.quota_bound) : 0;
  for (int w = 0; w < nw; ++w) {
    raw.worker_quotas[raw.workers[w]] =
        config.opposed ? shared_quota : prng.Uniform(1, config.quota_bound);
    prng.Shuffle(by_worker[w]);
    if (config.opposed) {
      // Worker w starts its list at firm w and goes round cyclically.
      std::stable_sort(
          by_worker[w].begin(), by_worker[w].end(),
          [&](const std::string& a, const std::string& b) {
            return (firm_of[a] - w % nf + nf) % nf <
                   (firm_of[b] - w % nf + nf) % nf;
          });
    }
    raw.worker_orders[raw.workers[w]] = by_worker[w];
    for (int i = 0; i < static_cast<int>(by_worker[w].size()); ++i) {
      rank[by_worker[w][i]] = i;
    }
  }
  for (int f = 0; f < nf; ++f) {
    CfSpec spec;
    prng.Shuffle(by_firm[f]);
    if (config.opposed) {
      std::stable_sort(by_firm[f].begin(), by_firm[f].end(),
                       [&rank](const std::string& a, const std::string& b) {
                         return rank[a] > rank[b];
                       });
    }
    spec.edges = by_firm[f];
    spec.quota =
        config.opposed ? shared_quota : prng.Uniform(1, config.quota_bound);
    bool tableau = config.family == CfFamily::kTableau;
    if (config.family == CfFamily::kMixed) tableau = prng.Bernoulli(1, 2);
    if (tableau) {
      spec.type = CfSpec::Type::kTableau;
      std::vector<Count> heights;
      for (const std::string& id : spec.edges) heights.push_back(capacity[id]);
      spec.filling = RandomTableau(prng, heights, spec.quota).filling();
      // Small capacities alone do not rule out a gap; redraw until the
      // exhaustive check passes, then fall back to the linear rule.
      for (int attempt = 0; config.gapless_capacity_cap &&
                            !GaplessFilling(spec.filling, heights, spec.quota);
           ++attempt) {
        if (attempt == kGaplessAttempts) {
          spec.type = CfSpec::Type::kLinear;
          spec.filling.clear();
          break;
        }
        spec.filling = RandomTableau(prng, heights, spec.quota).filling();
      }
    }
    raw.firm_cfs[raw.firms[f]] = std::move(spec);
  }
  return raw;
}

Instance Generate(const GeneratorConfig& config) {
  return ValidateInstance(GenerateRaw(config));
}

}  // namespace galloc
