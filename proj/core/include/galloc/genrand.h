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

// Seeded instance generators.
//
// The random source is std::mt19937_64 with integer draws by rejection
// sampling and shuffles by Fisher-Yates, so output depends only on the seed
// and not on the standard library.

#ifndef GALLOC_GENRAND_H_
#define GALLOC_GENRAND_H_

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "galloc/choice.h"
#include "galloc/model.h"

namespace galloc {

inline constexpr char kPrngName[] = "mt19937_64";

class Prng {
 public:
  explicit Prng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [lo, hi].
  std::int64_t Uniform(std::int64_t lo, std::int64_t hi);
  // True with probability num / den.
  bool Bernoulli(std::int64_t num, std::int64_t den);
  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (int i = static_cast<int>(items.size()) - 1; i > 0; --i) {
      std::swap(items[i], items[Uniform(0, i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

enum class CfFamily { kLinear, kTableau, kTableauAlternating, kMixed };

const char* CfFamilyName(CfFamily family);
// Throws Error for unknown names.
CfFamily ParseCfFamily(const std::string& name);

struct GeneratorConfig {
  std::uint64_t seed = 0;
  int workers = 3;
  int firms = 3;
  double density = 0.6;
  Count capacity_bound = 3;
  Count quota_bound = 4;
  CfFamily family = CfFamily::kLinear;
  // Workers rank firms cyclically from their own index and firms rank
  // edges from the worker's least preferred side first. Multiple stable
  // outcomes become far more likely.
  bool opposed = false;
  // Caps every capacity. When set, tableau firms are also redrawn until
  // they pass the exhaustive gapless check, falling back to a linear rule.
  std::optional<Count> gapless_capacity_cap;
};

// Connected bipartite instance. Throws Error on invalid configurations or
// when no connected graph was drawn after bounded retries.
Instance Generate(const GeneratorConfig& config);
RawInstance GenerateRaw(const GeneratorConfig& config);

// Random column-monotone tableau with the given heights.
TableauRule RandomTableau(Prng& prng, const std::vector<Count>& heights,
                          Count quota);

// Three workers and three firms on a triangle of edges whose firms use the
// alternating tableau with the given even quota.
Instance MakeAppendixInstance(Count quota);
RawInstance MakeAppendixRaw(Count quota);

}  // namespace galloc

#endif  // GALLOC_GENRAND_H_
