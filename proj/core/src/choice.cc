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

#include "galloc/choice.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "galloc/errors.h"

namespace galloc {

Count Size(std::span<const Count> z) {
  return std::accumulate(z.begin(), z.end(), Count{0});
}

Local Join(std::span<const Count> a, std::span<const Count> b) {
  Local result(a.size());
  for (size_t i = 0; i < a.size(); ++i) result[i] = std::max(a[i], b[i]);
  return result;
}

Local Meet(std::span<const Count> a, std::span<const Count> b) {
  Local result(a.size());
  for (size_t i = 0; i < a.size(); ++i) result[i] = std::min(a[i], b[i]);
  return result;
}

bool LessEq(std::span<const Count> a, std::span<const Count> b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Local Bump(std::span<const Count> z, int i, Count delta) {
  Local result(z.begin(), z.end());
  result[i] += delta;
  return result;
}

size_t LocalHash::operator()(const Local& z) const {
  size_t h = 0xcbf29ce484222325ULL;
  for (Count v : z) {
    h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Local EvaluateLinearChoice(std::span<const Count> z, Count quota) {
  Local result(z.begin(), z.end());
  Count remaining = quota;
  for (Count& v : result) {
    const Count taken = std::min(v, remaining);
    remaining -= taken;
    v = taken;
  }
  return result;
}

TableauRule::TableauRule(std::vector<std::vector<int>> filling, Count quota)
    : filling_(std::move(filling)), quota_(quota) {
  if (quota_ < 0) throw Error("tableau quota must be nonnegative");
  const int k = num_columns();
  size_t cells = 0;
  for (const auto& column : filling_) {
    if (column.empty()) throw Error("tableau column without base cell");
    cells += column.size();
  }
  std::vector<bool> seen(cells + 1, false);
  for (int i = 0; i < k; ++i) {
    const auto& column = filling_[i];
    if (column[0] != i + 1) {
      throw Error("tableau base cell of column " + std::to_string(i + 1) +
                  " must be labeled " + std::to_string(i + 1));
    }
    for (size_t j = 0; j < column.size(); ++j) {
      const int t = column[j];
      if (t < 1 || static_cast<size_t>(t) > cells || seen[t]) {
        throw Error("tableau filling is not a bijection onto [1.." +
                    std::to_string(cells) + "]");
      }
      seen[t] = true;
      if (j > 0 && column[j - 1] >= t) {
        throw Error("tableau filling is not column-monotone in column " +
                    std::to_string(i + 1));
      }
    }
  }
}

TableauRule TableauRule::Alternating(Count quota) {
  if (quota < 2 || quota % 2 != 0) {
    throw Error("alternating tableau needs an even quota >= 2");
  }
  const int q = static_cast<int>(quota);
  const int p = q / 2;
  std::vector<std::vector<int>> filling(3);
  for (int i = 0; i < 3; ++i) filling[i].push_back(i + 1);
  for (int j = 1; j <= q; ++j) filling[0].push_back(3 + j);
  for (int j = 1; j <= p; ++j) {
    filling[1].push_back(2 + q + 2 * j);
    filling[2].push_back(3 + q + 2 * j);
  }
  return TableauRule(std::move(filling), quota);
}

Local EvaluateTableauChoice(const TableauRule& rule, std::span<const Count> z) {
  const int k = rule.num_columns();
  const Count total = Size(z);
  if (total <= rule.quota()) return Local(z.begin(), z.end());
  // Merge the columns of the lower set by label and keep the k + q smallest.
  std::vector<std::pair<int, int>> cells;  // (label, column)
  for (int i = 0; i < k; ++i) {
    for (Count j = 0; j <= z[i]; ++j) cells.emplace_back(rule.label(i, j), i);
  }
  const size_t keep = static_cast<size_t>(k + rule.quota());
  std::nth_element(cells.begin(), cells.begin() + (keep - 1), cells.end());
  std::vector<Count> per_column(k, 0);
  for (size_t c = 0; c < keep; ++c) ++per_column[cells[c].second];
  Local result(k);
  for (int i = 0; i < k; ++i) {
    // Labels grow along columns, so the kept cells of a column are a prefix
    // exactly when its largest kept label is at row count - 1.
    if (per_column[i] == 0) {
      throw InvariantViolation("tableau choice dropped a base cell");
    }
    result[i] = per_column[i] - 1;
  }
  for (size_t c = 0; c < keep; ++c) {
    const auto [label, column] = cells[c];
    if (label > rule.label(column, result[column])) {
      throw InvariantViolation("tableau choice is not a lower set");
    }
  }
  return result;
}

const char* ChoiceKindName(ChoiceKind kind) {
  switch (kind) {
    case ChoiceKind::kWorkerLinear:
      return "worker-linear";
    case ChoiceKind::kFirmLinear:
      return "firm-linear";
    case ChoiceKind::kTableau:
      return "tableau";
  }
  return "unknown";
}

ChoiceEvaluator::ChoiceEvaluator(std::string owner, ChoiceKind kind,
                                 std::vector<Count> bounds, Count quota,
                                 std::optional<TableauRule> tableau)
    : owner_(std::move(owner)),
      kind_(kind),
      bounds_(std::move(bounds)),
      quota_(quota),
      tableau_(std::move(tableau)) {}

std::shared_ptr<ChoiceEvaluator> ChoiceEvaluator::Linear(
    std::string owner, ChoiceKind kind, std::vector<Count> bounds,
    Count quota) {
  if (kind == ChoiceKind::kTableau) {
    throw Error("linear evaluator requested with tableau kind");
  }
  return std::shared_ptr<ChoiceEvaluator>(new ChoiceEvaluator(
      std::move(owner), kind, std::move(bounds), quota, std::nullopt));
}

std::shared_ptr<ChoiceEvaluator> ChoiceEvaluator::Tableau(std::string owner,
                                                          TableauRule rule) {
  std::vector<Count> bounds(rule.num_columns());
  for (int i = 0; i < rule.num_columns(); ++i) bounds[i] = rule.height(i);
  const Count quota = rule.quota();
  return std::shared_ptr<ChoiceEvaluator>(
      new ChoiceEvaluator(std::move(owner), ChoiceKind::kTableau,
                          std::move(bounds), quota, std::move(rule)));
}

Local ChoiceEvaluator::Compute(std::span<const Count> z) const {
  if (tableau_) return EvaluateTableauChoice(*tableau_, z);
  return EvaluateLinearChoice(z, quota_);
}

Local ChoiceEvaluator::operator()(std::span<const Count> z) const {
  if (z.size() != bounds_.size()) {
    throw Error("choice of " + owner_ + " evaluated on a vector of size " +
                std::to_string(z.size()));
  }
  for (size_t i = 0; i < z.size(); ++i) {
    if (z[i] < 0 || z[i] > bounds_[i]) {
      throw Error("choice of " + owner_ + " evaluated outside its box");
    }
  }
  Local key(z.begin(), z.end());
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Local result = Compute(z);
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(std::move(key), std::move(result));
  if (inserted) calls_.fetch_add(1);
  return it->second;
}

bool ChoiceEvaluator::IsAcceptable(std::span<const Count> z) const {
  const Local chosen = (*this)(z);
  return std::equal(chosen.begin(), chosen.end(), z.begin(), z.end());
}

void ChoiceEvaluator::ClearCache() const {
  std::lock_guard<std::mutex> lock(mu_);
  cache_.clear();
}

ChoiceFunction AsFunction(const ChoiceEvaluator& evaluator) {
  return [&evaluator](std::span<const Count> z) { return evaluator(z); };
}

namespace {

bool Equal(std::span<const Count> a, std::span<const Count> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

void RequireAcceptable(const ChoiceFunction& choice,
                       std::span<const Count> z) {
  if (!Equal(choice(z), z)) {
    throw Error("revealed preference is defined on acceptable vectors only");
  }
}

}  // namespace

bool RevealedPrefers(const ChoiceFunction& choice, std::span<const Count> z,
                     std::span<const Count> z_prime) {
  RequireAcceptable(choice, z);
  RequireAcceptable(choice, z_prime);
  if (Equal(z, z_prime)) return false;
  return Equal(choice(Join(z, z_prime)), z);
}

bool RevealedPrefers(const ChoiceEvaluator& choice, std::span<const Count> z,
                     std::span<const Count> z_prime) {
  return RevealedPrefers(AsFunction(choice), z, z_prime);
}

Preference ComparePreference(const ChoiceEvaluator& choice,
                             std::span<const Count> z,
                             std::span<const Count> z_prime) {
  if (!choice.IsAcceptable(z) || !choice.IsAcceptable(z_prime)) {
    throw Error("comparison at " + choice.owner() +
                " needs acceptable vectors");
  }
  if (Equal(z, z_prime)) return Preference::kEqual;
  const Local joined = choice(Join(z, z_prime));
  if (Equal(joined, z_prime)) return Preference::kLess;
  if (Equal(joined, z)) return Preference::kGreater;
  return Preference::kIncomparable;
}

}  // namespace galloc
