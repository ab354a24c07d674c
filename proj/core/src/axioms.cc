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

#include "galloc/axioms.h"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "galloc/errors.h"

namespace galloc {
namespace {

constexpr size_t kMaxStoredGaplessViolations = 1000;

// Mixed-radix enumeration of the box [0, bounds].
class Box {
 public:
  explicit Box(std::span<const Count> bounds)
      : bounds_(bounds.begin(), bounds.end()), stride_(bounds.size()) {
    size_ = 1;
    for (size_t i = 0; i < bounds_.size(); ++i) {
      if (bounds_[i] < 0) throw Error("negative box bound");
      stride_[i] = size_;
      if (size_ > std::numeric_limits<std::int64_t>::max() / (bounds_[i] + 1)) {
        size_ = std::numeric_limits<std::int64_t>::max();
        overflow_ = true;
        return;
      }
      size_ *= bounds_[i] + 1;
    }
  }

  std::int64_t size() const { return size_; }
  bool overflow() const { return overflow_; }

  Local Point(std::int64_t index) const {
    Local z(bounds_.size());
    for (size_t i = 0; i < bounds_.size(); ++i) {
      z[i] = index % (bounds_[i] + 1);
      index /= bounds_[i] + 1;
    }
    return z;
  }

  std::int64_t Index(std::span<const Count> z) const {
    std::int64_t index = 0;
    for (size_t i = 0; i < z.size(); ++i) index += z[i] * stride_[i];
    return index;
  }

  bool Contains(std::span<const Count> z) const {
    if (z.size() != bounds_.size()) return false;
    for (size_t i = 0; i < z.size(); ++i) {
      if (z[i] < 0 || z[i] > bounds_[i]) return false;
    }
    return true;
  }

  Count bound(int i) const { return bounds_[i]; }
  int dims() const { return static_cast<int>(bounds_.size()); }

 private:
  std::vector<Count> bounds_;
  std::vector<std::int64_t> stride_;
  std::int64_t size_ = 1;
  bool overflow_ = false;
};

bool FitsSquare(std::int64_t n, std::int64_t limit) {
  return n <= limit / std::max<std::int64_t>(n, 1);
}

bool FitsCube(std::int64_t n, std::int64_t limit) {
  return FitsSquare(n, limit) && n * n <= limit / std::max<std::int64_t>(n, 1);
}

bool Equal(std::span<const Count> a, std::span<const Count> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

// Choices over the whole box, evaluated once.
struct Table {
  std::vector<Local> points;
  std::vector<Local> chosen;
  std::vector<std::int64_t> chosen_index;
};

}  // namespace

const char* AxiomName(Axiom axiom) {
  switch (axiom) {
    case Axiom::kConsistence:
      return "consistence";
    case Axiom::kSubstitutability:
      return "substitutability";
    case Axiom::kSizeMonotone:
      return "size-monotonicity";
    case Axiom::kQuotaFilling:
      return "quota-filling";
    case Axiom::kStationarity:
      return "stationarity";
    case Axiom::kInterestPersistence:
      return "interest-persistence";
  }
  return "unknown";
}

AxiomReport CheckAxioms(const ChoiceFunction& choice,
                        std::span<const Count> bounds,
                        std::span<const Axiom> which,
                        std::optional<Count> quota,
                        const AxiomCheckOptions& options) {
  const Box box(bounds);
  if (box.overflow() || !FitsSquare(box.size(), options.pair_limit)) {
    throw LimitExceeded("box too large for an exhaustive axiom check");
  }
  auto wants = [&](Axiom a) {
    return std::find(which.begin(), which.end(), a) != which.end();
  };
  if (wants(Axiom::kQuotaFilling) && !quota.has_value()) {
    throw Error("quota-filling check needs a quota");
  }

  AxiomReport report;
  report.box_size = box.size();
  std::vector<bool> failed(std::size(kAllAxioms), false);
  auto fail = [&](std::optional<Axiom> axiom, const Local& z,
                  const Local& z_prime, int element, std::string detail) {
    report.passed = false;
    if (axiom.has_value()) {
      if (failed[static_cast<int>(*axiom)]) return;
      failed[static_cast<int>(*axiom)] = true;
    }
    report.violations.push_back(
        {axiom, z, z_prime, element, std::move(detail)});
  };

  const std::int64_t n = box.size();
  Table table;
  table.points.reserve(n);
  table.chosen.reserve(n);
  table.chosen_index.assign(n, -1);
  for (std::int64_t i = 0; i < n; ++i) {
    table.points.push_back(box.Point(i));
    table.chosen.push_back(choice(table.points.back()));
  }
  // Basic sanity: C(z) <= z inside the box, and C is idempotent.
  bool sane = true;
  for (std::int64_t i = 0; i < n; ++i) {
    const Local& z = table.points[i];
    const Local& c = table.chosen[i];
    if (!box.Contains(c) || !LessEq(c, z)) {
      fail(std::nullopt, z, c, -1, "choice is not below its argument");
      sane = false;
      continue;
    }
    table.chosen_index[i] = box.Index(c);
  }
  if (!sane) return report;
  for (std::int64_t i = 0; i < n; ++i) {
    const std::int64_t c = table.chosen_index[i];
    if (table.chosen_index[c] != c) {
      fail(std::nullopt, table.points[i], table.chosen[i], -1,
           "choice is not idempotent");
      return report;
    }
  }

  if (wants(Axiom::kQuotaFilling)) {
    for (std::int64_t i = 0; i < n; ++i) {
      const Count expected = std::min(Size(table.points[i]), *quota);
      if (Size(table.chosen[i]) != expected) {
        fail(Axiom::kQuotaFilling, table.points[i], table.chosen[i], -1,
             "choice size differs from min(|z|, q)");
      }
    }
  }

  const bool pairwise_order = wants(Axiom::kConsistence) ||
                              wants(Axiom::kSubstitutability) ||
                              wants(Axiom::kSizeMonotone);
  const bool stationarity = wants(Axiom::kStationarity);
  for (std::int64_t i = 0; i < n; ++i) {
    const Local& z = table.points[i];
    const Local& cz = table.chosen[i];
    for (std::int64_t j = 0; j < n; ++j) {
      const Local& zp = table.points[j];
      const Local& czp = table.chosen[j];
      ++report.pairs_checked;
      if (pairwise_order && LessEq(zp, z)) {
        if (wants(Axiom::kConsistence) && LessEq(cz, zp) && !Equal(czp, cz)) {
          fail(Axiom::kConsistence, z, zp, -1,
               "C(z') != C(z) although z >= z' >= C(z)");
        }
        if (wants(Axiom::kSubstitutability) && !LessEq(Meet(cz, zp), czp)) {
          fail(Axiom::kSubstitutability, z, zp, -1,
               "C(z) ^ z' is not below C(z')");
        }
        if (wants(Axiom::kSizeMonotone) && Size(cz) < Size(czp)) {
          fail(Axiom::kSizeMonotone, z, zp, -1, "|C(z)| < |C(z')|");
        }
      }
      if (stationarity) {
        const std::int64_t left = table.chosen_index[box.Index(Join(z, zp))];
        const std::int64_t right = table.chosen_index[box.Index(Join(cz, zp))];
        if (left != right) {
          fail(Axiom::kStationarity, z, zp, -1,
               "C(z v z') != C(C(z) v z')");
        }
      }
    }
  }

  if (wants(Axiom::kInterestPersistence)) {
    std::vector<std::int64_t> acceptable;
    for (std::int64_t i = 0; i < n; ++i) {
      if (table.chosen_index[i] == i) acceptable.push_back(i);
    }
    auto interesting = [&](const Local& z, int a) {
      if (z[a] >= box.bound(a)) return false;
      const Local up = Bump(z, a, 1);
      return table.chosen_index[box.Index(up)] != box.Index(z);
    };
    for (std::int64_t i : acceptable) {
      const Local& z = table.points[i];
      for (std::int64_t j : acceptable) {
        if (i == j) continue;
        const Local& zp = table.points[j];
        // z below z': C(z v z') = z'.
        if (table.chosen_index[box.Index(Join(z, zp))] != j) continue;
        for (int a = 0; a < box.dims(); ++a) {
          if (z[a] > zp[a] || interesting(z, a)) continue;
          if (interesting(zp, a)) {
            fail(Axiom::kInterestPersistence, z, zp, a,
                 "element not interesting at z became interesting at a "
                 "preferred z'");
          }
        }
      }
    }
  }
  return report;
}

AxiomReport CheckAxioms(const ChoiceEvaluator& choice,
                        std::span<const Axiom> which,
                        const AxiomCheckOptions& options) {
  return CheckAxioms(AsFunction(choice), choice.bounds(), which,
                     choice.quota(), options);
}

GaplessReport CheckGapless(const ChoiceFunction& choice,
                           std::span<const Count> bounds,
                           const AxiomCheckOptions& options) {
  const Box box(bounds);
  if (box.overflow() || !FitsCube(box.size(), options.triple_limit)) {
    throw LimitExceeded("box too large for an exhaustive gapless check");
  }
  const std::int64_t n = box.size();
  std::vector<Local> accepted;
  std::vector<std::int64_t> position(n, -1);
  for (std::int64_t i = 0; i < n; ++i) {
    Local z = box.Point(i);
    if (Equal(choice(z), z)) {
      position[i] = static_cast<std::int64_t>(accepted.size());
      accepted.push_back(std::move(z));
    }
  }
  const int m = static_cast<int>(accepted.size());
  const int k = box.dims();
  GaplessReport report;
  report.acceptable = m;

  // below[i][j]: accepted[i] is strictly less preferred than accepted[j].
  std::vector<std::vector<bool>> below(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      below[i][j] = Equal(choice(Join(accepted[i], accepted[j])), accepted[j]);
    }
  }
  // displaced[i][a]: c with C(z + 1^a) = z + 1^a - 1^c, or -1.
  std::vector<std::vector<int>> displaced(m, std::vector<int>(k, -1));
  for (int i = 0; i < m; ++i) {
    const Local& z = accepted[i];
    for (int a = 0; a < k; ++a) {
      if (z[a] >= box.bound(a)) continue;
      const Local up = Bump(z, a, 1);
      const Local chosen = choice(up);
      for (int c = 0; c < k; ++c) {
        if (c == a || z[c] == 0) continue;
        if (Equal(chosen, Bump(up, c, -1))) {
          displaced[i][a] = c;
          break;
        }
      }
    }
  }
  for (int mid = 0; mid < m; ++mid) {
    for (int a = 0; a < k; ++a) {
      const int c2 = displaced[mid][a];
      if (c2 < 0) continue;
      for (int lo = 0; lo < m; ++lo) {
        if (!below[lo][mid]) continue;
        const int c1 = displaced[lo][a];
        if (c1 < 0 || c1 == c2) continue;
        for (int hi = 0; hi < m; ++hi) {
          if (!below[mid][hi] || displaced[hi][a] != c1) continue;
          report.passed = false;
          ++report.total_violations;
          if (report.violations.size() < kMaxStoredGaplessViolations) {
            report.violations.push_back({accepted[lo], accepted[mid],
                                         accepted[hi], a, c1, c2, c1});
          }
        }
      }
    }
  }
  return report;
}

GaplessReport CheckGapless(const ChoiceEvaluator& choice,
                           const AxiomCheckOptions& options) {
  return CheckGapless(AsFunction(choice), choice.bounds(), options);
}

const char* GaplessStatusName(GaplessStatus status) {
  switch (status) {
    case GaplessStatus::kHolds:
      return "holds";
    case GaplessStatus::kViolated:
      return "violated";
    case GaplessStatus::kUnknown:
      return "unknown";
  }
  return "unknown";
}

GaplessStatus EvaluatorGaplessStatus(const ChoiceEvaluator& choice,
                                     const AxiomCheckOptions& options) {
  if (choice.kind() != ChoiceKind::kTableau) return GaplessStatus::kHolds;
  const Box box(choice.bounds());
  if (!box.overflow() && FitsCube(box.size(), options.triple_limit)) {
    return CheckGapless(choice, options).passed ? GaplessStatus::kHolds
                                                : GaplessStatus::kViolated;
  }
  return GaplessStatus::kUnknown;
}

GaplessStatus InstanceGaplessStatus(const Instance& instance,
                                    const AxiomCheckOptions& options) {
  GaplessStatus result = GaplessStatus::kHolds;
  for (int f = 0; f < instance.num_firms(); ++f) {
    switch (EvaluatorGaplessStatus(instance.firm_choice(f), options)) {
      case GaplessStatus::kViolated:
        return GaplessStatus::kViolated;
      case GaplessStatus::kUnknown:
        result = GaplessStatus::kUnknown;
        break;
      case GaplessStatus::kHolds:
        break;
    }
  }
  return result;
}

}  // namespace galloc
