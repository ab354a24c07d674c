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

// Exhaustive checkers for choice-function axioms on small boxes.

#ifndef GALLOC_AXIOMS_H_
#define GALLOC_AXIOMS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "galloc/choice.h"
#include "galloc/model.h"

namespace galloc {

enum class Axiom {
  kConsistence,        // C(z') = C(z) whenever z >= z' >= C(z).
  kSubstitutability,   // C(z) ^ z' <= C(z') whenever z >= z'.
  kSizeMonotone,       // |C(z)| >= |C(z')| whenever z >= z'.
  kQuotaFilling,       // |C(z)| = min(|z|, q).
  kStationarity,       // C(z v z') = C(C(z) v z').
  kInterestPersistence,  // A non-interesting element stays so upward.
};

const char* AxiomName(Axiom axiom);

inline constexpr Axiom kAllAxioms[] = {
    Axiom::kConsistence,  Axiom::kSubstitutability,
    Axiom::kSizeMonotone, Axiom::kQuotaFilling,
    Axiom::kStationarity, Axiom::kInterestPersistence};

struct AxiomCheckOptions {
  // Refuse when |box|^2 exceeds this.
  std::int64_t pair_limit = 1'000'000;
  // Refuse check_gapless when |box|^3 exceeds this.
  std::int64_t triple_limit = 100'000'000;
};

struct AxiomViolation {
  std::optional<Axiom> axiom;  // Empty for the basic C(z) <= z precheck.
  Local z;
  Local z_prime;
  int element = -1;
  std::string detail;
};

struct AxiomReport {
  bool passed = true;
  std::vector<AxiomViolation> violations;  // First counterexample per axiom.
  std::int64_t box_size = 0;
  std::int64_t pairs_checked = 0;
};

// `quota` is required for kQuotaFilling and ignored otherwise. Throws
// LimitExceeded if the box is too large.
AxiomReport CheckAxioms(const ChoiceFunction& choice,
                        std::span<const Count> bounds,
                        std::span<const Axiom> which,
                        std::optional<Count> quota,
                        const AxiomCheckOptions& options = {});
AxiomReport CheckAxioms(const ChoiceEvaluator& choice,
                        std::span<const Axiom> which,
                        const AxiomCheckOptions& options = {});

// A chain z1 < z2 < z3 of acceptable vectors, an element `element` that is
// unsaturated at all three, and its displaced partners.
struct GaplessViolation {
  Local z1, z2, z3;
  int element = -1;
  int displaced1 = -1, displaced2 = -1, displaced3 = -1;
};

struct GaplessReport {
  bool passed = true;
  std::vector<GaplessViolation> violations;  // Capped; see total.
  std::int64_t total_violations = 0;
  std::int64_t acceptable = 0;
};

GaplessReport CheckGapless(const ChoiceFunction& choice,
                           std::span<const Count> bounds,
                           const AxiomCheckOptions& options = {});
GaplessReport CheckGapless(const ChoiceEvaluator& choice,
                           const AxiomCheckOptions& options = {});

enum class GaplessStatus { kHolds, kViolated, kUnknown };

const char* GaplessStatusName(GaplessStatus status);

// Decides the gapless condition for one evaluator. Linear rules hold
// outright. Tableaux are checked exhaustively when the box fits the limits
// and are unknown otherwise. Capacities of at most 2 are not enough: some
// such tableaux do have a gap.
GaplessStatus EvaluatorGaplessStatus(const ChoiceEvaluator& choice,
                                     const AxiomCheckOptions& options = {});

// kViolated if some firm violates the condition, kHolds if all firms hold.
GaplessStatus InstanceGaplessStatus(const Instance& instance,
                                    const AxiomCheckOptions& options = {});

}  // namespace galloc

#endif  // GALLOC_AXIOMS_H_
