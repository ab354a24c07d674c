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

// Integer choice functions on a local box [0, b] of one agent.
//
// A local vector lists one value per incident edge of its owner, in the
// owner's local order: preference order for linear rules, column order for
// tableau rules.

#ifndef GALLOC_CHOICE_H_
#define GALLOC_CHOICE_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace galloc {

using Count = std::int64_t;
using Local = std::vector<Count>;

Count Size(std::span<const Count> z);
Local Join(std::span<const Count> a, std::span<const Count> b);
Local Meet(std::span<const Count> a, std::span<const Count> b);
bool LessEq(std::span<const Count> a, std::span<const Count> b);
// Returns z with `delta` added at position i.
Local Bump(std::span<const Count> z, int i, Count delta);

struct LocalHash {
  size_t operator()(const Local& z) const;
};

// Greedy quota rule: keep a prefix of z in local order and truncate the
// first element that overflows the quota.
Local EvaluateLinearChoice(std::span<const Count> z, Count quota);

// Danilov tableau: column i holds cells (i, 0..b(i)) labeled by a
// column-monotone bijection onto [1..N] with t(i, 0) = i.
class TableauRule {
 public:
  // Validates monotonicity and bijectivity; throws Error otherwise.
  TableauRule(std::vector<std::vector<int>> filling, Count quota);

  // The three-column tableau whose choice alternates between the second and
  // third column while the first column grows. Requires even quota >= 2.
  static TableauRule Alternating(Count quota);

  int num_columns() const { return static_cast<int>(filling_.size()); }
  Count height(int column) const {
    return static_cast<Count>(filling_[column].size()) - 1;
  }
  Count quota() const { return quota_; }
  int label(int column, Count row) const { return filling_[column][row]; }
  const std::vector<std::vector<int>>& filling() const { return filling_; }

 private:
  std::vector<std::vector<int>> filling_;
  Count quota_;
};

Local EvaluateTableauChoice(const TableauRule& rule, std::span<const Count> z);

enum class ChoiceKind { kWorkerLinear, kFirmLinear, kTableau };

const char* ChoiceKindName(ChoiceKind kind);

// Memoizing oracle for one agent. Thread-safe; call_count() counts cache
// misses, which is the number of genuine choice-function evaluations.
class ChoiceEvaluator {
 public:
  static std::shared_ptr<ChoiceEvaluator> Linear(std::string owner,
                                                 ChoiceKind kind,
                                                 std::vector<Count> bounds,
                                                 Count quota);
  static std::shared_ptr<ChoiceEvaluator> Tableau(std::string owner,
                                                  TableauRule rule);

  ChoiceEvaluator(const ChoiceEvaluator&) = delete;
  ChoiceEvaluator& operator=(const ChoiceEvaluator&) = delete;

  Local operator()(std::span<const Count> z) const;
  bool IsAcceptable(std::span<const Count> z) const;

  const std::string& owner() const { return owner_; }
  ChoiceKind kind() const { return kind_; }
  std::span<const Count> bounds() const { return bounds_; }
  int size() const { return static_cast<int>(bounds_.size()); }
  Count quota() const { return quota_; }
  // Null for linear rules.
  const TableauRule* tableau() const {
    return tableau_ ? &*tableau_ : nullptr;
  }

  std::int64_t call_count() const { return calls_.load(); }
  void ResetStatistics() const { calls_.store(0); }
  void ClearCache() const;

 private:
  ChoiceEvaluator(std::string owner, ChoiceKind kind, std::vector<Count> bounds,
                  Count quota, std::optional<TableauRule> tableau);

  Local Compute(std::span<const Count> z) const;

  std::string owner_;
  ChoiceKind kind_;
  std::vector<Count> bounds_;
  Count quota_;
  std::optional<TableauRule> tableau_;

  mutable std::mutex mu_;
  mutable std::unordered_map<Local, Local, LocalHash> cache_;
  mutable std::atomic<std::int64_t> calls_{0};
};

using ChoiceFunction = std::function<Local(std::span<const Count>)>;

ChoiceFunction AsFunction(const ChoiceEvaluator& evaluator);

// True iff z' is strictly less preferred than z, i.e. C(z v z') = z and the
// two differ. Both inputs must be acceptable; throws Error otherwise.
bool RevealedPrefers(const ChoiceFunction& choice, std::span<const Count> z,
                     std::span<const Count> z_prime);
bool RevealedPrefers(const ChoiceEvaluator& choice, std::span<const Count> z,
                     std::span<const Count> z_prime);

enum class Preference { kLess, kGreater, kEqual, kIncomparable };

// Compares two acceptable vectors under the revealed preference of `choice`.
// kLess means z is less preferred than z_prime.
Preference ComparePreference(const ChoiceEvaluator& choice,
                             std::span<const Count> z,
                             std::span<const Count> z_prime);

}  // namespace galloc

#endif  // GALLOC_CHOICE_H_
