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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. All comparisons are exact.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "galloc/axioms.h"
#include "galloc/errors.h"
#include "galloc/genrand.h"
#include "galloc/lattice.h"
#include "galloc/oracle.h"
#include "galloc/poset.h"
#include "galloc/rotation.h"
#include "galloc/stability.h"
#include "reference.h"

namespace galloc {
namespace {

using testing::RefModel;
using testing::Vec;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Criterion {
  int id = 0;
  std::string title;
  bool pass = true;
  std::int64_t checks = 0;
  std::vector<std::string> failures;
  std::string summary;

  void Check(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    pass = false;
    if (failures.size() < 8) failures.push_back(what);
  }
};

std::map<int, Criterion> criteria;

Criterion& C(int id) { return criteria[id]; }

Vec ToVec(const Assignment& x) { return x.values(); }

std::string Show(const Vec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    out += (i ? "," : "") + std::to_string(v[i]);
  }
  return out + ")";
}

RotationKey KeyOf(const Instance& instance,
                  const std::vector<std::string>& ids) {
  RotationKey key;
  for (const std::string& id : ids) key.push_back(instance.EdgeByName(id));
  return key;
}

int CeilLog2(Count n) {
  int bits = 0;
  while ((Count{1} << bits) < n) ++bits;
  return bits;
}

// Per-tau search budget and the scan comparison, for one rotation.
void CheckWeightSearch(const Instance& instance, const Assignment& x,
                       const Rotation& rotation, const std::string& label) {
  const WeightedRotation w = MaxFeasibleWeight(instance, x, rotation);
  const Count scan = MaxFeasibleWeightByScan(instance, x, rotation);
  C(8).Check(w.tau == scan, label + ": bisection " + std::to_string(w.tau) +
                                " vs scan " + std::to_string(scan));
  const std::int64_t budget =
      static_cast<std::int64_t>(rotation.tandems().size()) *
          CeilLog2(instance.max_capacity()) +
      2;
  C(11).Check(w.oracle_calls <= budget,
              label + ": weight search used " +
                  std::to_string(w.oracle_calls) + " firm calls, budget " +
                  std::to_string(budget));
}

// Both minimum pipelines and the offer-round budget.
Assignment CheckXminPipelines(const Instance& instance,
                              const std::string& label) {
  const AlkanGaleResult ag = XminAlkanGale(instance);
  const Assignment descent = XminByDescent(instance);
  C(10).Check(ag.x == descent, label + ": offer iteration and descent differ");
  const std::int64_t bound =
      static_cast<std::int64_t>(instance.num_edges()) *
      instance.max_capacity();
  C(10).Check(ag.iterations <= bound,
              label + ": " + std::to_string(ag.iterations) +
                  " offer rounds exceed " + std::to_string(bound));
  C(11).Check(ag.iterations <= bound, label + ": offer-round monitor");
  return ag.x;
}

// Runs `body`, recording exceptions against criterion `id`. Internal
// invariant violations also fail the monitor criterion.
void Guard(int id, const std::string& label,
           const std::function<void()>& body) {
  try {
    body();
  } catch (const InvariantViolation& e) {
    C(id).Check(false, label + ": invariant violation: " + e.what());
    C(11).Check(false, label + ": monitor fired: " + e.what());
  } catch (const std::exception& e) {
    C(id).Check(false, label + ": " + e.what());
  }
}

void Criterion1() {
  const auto start = Clock::now();
  const Count q = 4;
  const RawInstance raw = MakeAppendixRaw(q);
  const Instance instance = ValidateInstance(raw);
  const RefModel ref(raw);
  Criterion& c = C(1);

  const std::vector<Vec> stable = ref.EnumerateStable();
  c.Check(stable.size() == 5, "reference found " +
                                  std::to_string(stable.size()) +
                                  " stable assignments");
  c.Check(EnumerateStable(instance).size() == 5, "library enumeration size");
  std::set<std::int64_t> chain_indices;
  for (const Vec& x : stable) {
    std::int64_t found = -1;
    for (std::int64_t i = 0; i <= q; ++i) {
      bool all = true;
      for (int f = 0; f < ref.num_firms(); ++f) {
        all = all && ref.FirmLocal(x, f) == testing::RefAlternatingChain(q, i);
      }
      if (all) found = i;
    }
    c.Check(found >= 0, "stable " + Show(x) + " is not on the chain");
    chain_indices.insert(found);
  }
  c.Check(chain_indices.size() == 5 && !chain_indices.contains(-1),
          "stable assignments do not cover the chain");

  Vec x0(instance.num_edges());
  for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
    x0[e] = instance.edge(e).id[0] == 'a' ? 0 : q / 2;
  }
  c.Check(ToVec(XminAlkanGale(instance).x) == x0, "offer iteration minimum");
  c.Check(ToVec(XminByDescent(instance)) == x0, "descent minimum");

  const Route route = BuildFullRoute(instance);
  const RotationKey first =
      KeyOf(instance, {"a1", "d2", "a2", "d3", "a3", "d1"});
  const RotationKey second =
      KeyOf(instance, {"a1", "c3", "a3", "c2", "a2", "c1"});
  c.Check(route.steps.size() == 4, "route length " +
                                       std::to_string(route.steps.size()));
  for (size_t i = 0; i < route.steps.size(); ++i) {
    c.Check(route.steps[i].rotation.key() == (i % 2 == 0 ? first : second),
            "route step " + std::to_string(i) + " rotation " +
                FormatKey(instance, route.steps[i].rotation.key()));
    c.Check(route.steps[i].weight == 1, "route step weight");
  }

  const RotationPoset poset = BuildPosetGeneral(instance);
  c.Check(poset.size() == 4, "general poset size " +
                                 std::to_string(poset.size()));
  c.Check(poset.hasse_edges.size() == 3, "chain needs three Hasse edges");
  const auto reach = poset.Reachability();
  bool total = true;
  for (int i = 0; i < poset.size(); ++i) {
    for (int j = i + 1; j < poset.size(); ++j) {
      total = total && (reach[i][j] || reach[j][i]);
    }
  }
  c.Check(total, "general poset is not a chain");
  c.Check(EnumerateClosedFunctions(poset).size() == 5,
          "closed function count");
  const double elapsed = Seconds(start);
  c.Check(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s");
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.3f s", elapsed);
  c.summary = buffer;
}

void Criterion2() {
  Criterion& c = C(2);
  std::string times;
  for (Count q : {2, 6, 8}) {
    const auto start = Clock::now();
    const std::string label = "q=" + std::to_string(q);
    Guard(2, label, [&] {
      const Instance instance = MakeAppendixInstance(q);
      // q = 8 spans about 1.1e7 points, past the default guard.
      c.Check(EnumerateStable(instance, 100'000'000).size() ==
                  static_cast<size_t>(q + 1),
              label + ": stable count");
      c.Check(BuildFullRoute(instance).steps.size() ==
                  static_cast<size_t>(q),
              label + ": route length");
      const RotationPoset poset = BuildPosetGeneral(instance);
      c.Check(poset.size() == q, label + ": poset size");
      bool chain = poset.hasse_edges.size() == static_cast<size_t>(q - 1);
      const auto reach = poset.Reachability();
      for (int i = 0; i < poset.size(); ++i) {
        for (int j = i + 1; j < poset.size(); ++j) {
          chain = chain && (reach[i][j] || reach[j][i]);
        }
      }
      c.Check(chain, label + ": poset is not a chain");
      if (q == 2) {
        const RefModel ref(MakeAppendixRaw(q));
        c.Check(ref.EnumerateStable().size() == 3, label + ": reference count");
      }
    });
    const double elapsed = Seconds(start);
    c.Check(elapsed < 5.0, label + ": runtime " + std::to_string(elapsed));
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%s%s %.2f s", times.empty() ? "" : ", ",
                  label.c_str(), elapsed);
    times += buffer;
  }
  c.summary = times;
}

void Criterion3() {
  Criterion& c = C(3);
  const Count q = 4;
  auto evaluator =
      ChoiceEvaluator::Tableau("tableau", TableauRule::Alternating(q));
  const GaplessReport report = CheckGapless(*evaluator);
  const Local z0 = testing::RefAlternatingChain(q, 0);
  const Local z1 = testing::RefAlternatingChain(q, 1);
  const Local z2 = testing::RefAlternatingChain(q, 2);
  c.Check(!report.passed, "no violation reported");
  bool found = false;
  for (const GaplessViolation& v : report.violations) {
    if (v.z1 == z0 && v.z2 == z1 && v.z3 == z2) {
      found = true;
      // Columns are reported 0-based.
      c.Check(v.element == 0, "element " + std::to_string(v.element + 1));
      c.Check(v.displaced1 == 2 && v.displaced2 == 1 && v.displaced3 == 2,
              "displaced " + std::to_string(v.displaced1 + 1) + "," +
                  std::to_string(v.displaced2 + 1) + "," +
                  std::to_string(v.displaced3 + 1));
    }
  }
  c.Check(found, "triple (z0, z1, z2) missing from the report");
  // Independent confirmation of the three exchanges.
  const auto filling = testing::RefAlternatingFilling(q);
  for (int i = 0; i < 3; ++i) {
    Vec up = testing::RefAlternatingChain(q, i);
    ++up[0];
    c.Check(testing::RefTableauChoice(filling, q, up) ==
                testing::RefAlternatingChain(q, i + 1),
            "reference exchange at z" + std::to_string(i));
  }
  c.summary = std::to_string(report.total_violations) +
              " violating triples in total";
}

void CheckCf(const ChoiceEvaluator& evaluator, const std::string& label) {
  Criterion& c = C(4);
  const AxiomReport report = CheckAxioms(evaluator, kAllAxioms);
  c.Check(report.passed,
          label + ": " +
              (report.violations.empty()
                   ? std::string("failed")
                   : std::string(report.violations[0].axiom
                                     ? AxiomName(*report.violations[0].axiom)
                                     : "C(z) <= z") +
                         " " + report.violations[0].detail));
}

void Criterion4() {
  Criterion& c = C(4);
  std::int64_t linear = 0;
  std::int64_t tableaux = 0;
  // Every bound vector with k <= 3 and b <= 4, every quota <= 6.
  for (int k = 1; k <= 3; ++k) {
    std::vector<Count> bounds(k, 0);
    std::function<void(int)> each = [&](int i) {
      if (i == k) {
        for (Count q = 0; q <= 6; ++q) {
          for (ChoiceKind kind :
               {ChoiceKind::kWorkerLinear, ChoiceKind::kFirmLinear}) {
            auto cf = ChoiceEvaluator::Linear("cf", kind, bounds, q);
            CheckCf(*cf, "linear b=" + Show(bounds) + " q=" +
                             std::to_string(q));
            ++linear;
          }
        }
        return;
      }
      for (Count b = 0; b <= 4; ++b) {
        bounds[i] = b;
        each(i + 1);
      }
    };
    each(0);
  }
  Prng prng(20260101);
  for (int t = 0; t < 60; ++t) {
    const int k = static_cast<int>(prng.Uniform(1, 3));
    std::vector<Count> heights(k);
    for (Count& h : heights) h = prng.Uniform(0, 4);
    const Count q = prng.Uniform(1, 6);
    const TableauRule rule = RandomTableau(prng, heights, q);
    auto cf = ChoiceEvaluator::Tableau("cf", rule);
    const std::string label = "tableau #" + std::to_string(t);
    CheckCf(*cf, label);
    // Library rule against the reference on the whole box.
    std::vector<Count> z(k, 0);
    std::function<void(int)> each = [&](int i) {
      if (i == k) {
        c.Check((*cf)(z) == testing::RefTableauChoice(rule.filling(), q, z),
                label + ": differs from reference at " + Show(z));
        return;
      }
      for (Count v = 0; v <= heights[i]; ++v) {
        z[i] = v;
        each(i + 1);
      }
    };
    each(0);
    ++tableaux;
  }
  for (Count q : {2, 4, 6}) {
    auto cf = ChoiceEvaluator::Tableau("cf", TableauRule::Alternating(q));
    CheckCf(*cf, "alternating q=" + std::to_string(q));
    ++tableaux;
  }
  c.summary = std::to_string(linear) + " linear rules, " +
              std::to_string(tableaux) + " tableaux";
}

// Guards against families that are trivially stable.
constexpr int kMinNontrivial = 50;

struct FamilyStats {
  int instances = 0;
  int stable_total = 0;
  int nontrivial = 0;  // More than one stable assignment.
  int rotations = 0;
};

// Criteria 5-11 on one generated instance.
void CheckInstance(int family_id, const RawInstance& raw,
                   const std::string& label, std::uint64_t seed,
                   FamilyStats* stats) {
  const Instance instance = ValidateInstance(raw);
  const RefModel ref(raw);
  Criterion& c = C(family_id);
  ++stats->instances;

  std::vector<Vec> stable;
  Guard(family_id, label, [&] {
    stable = ref.EnumerateStable();
    stats->stable_total += static_cast<int>(stable.size());
    if (stable.size() > 1) ++stats->nontrivial;
    const EnumeratedLattice lattice = EnumerateStable(instance);
    std::vector<Vec> library;
    for (const Assignment& x : lattice.elements) library.push_back(ToVec(x));
    c.Check(library == stable, label + ": library and reference S differ");
    const Vec least = ref.Least(stable);
    const Vec greatest = ref.Greatest(stable);

    const Assignment xmin = CheckXminPipelines(instance, label);
    c.Check(ToVec(xmin) == least, label + ": minimum " + Show(ToVec(xmin)) +
                                      " vs " + Show(least));

    const Route route = BuildFullRoute(instance);
    c.Check(ToVec(route.end) == greatest, label + ": route end " +
                                              Show(ToVec(route.end)) +
                                              " vs " + Show(greatest));
    for (const RouteStep& step : route.steps) {
      CheckWeightSearch(instance, step.before, step.rotation, label);
      ++stats->rotations;
    }
    if (family_id == 6) {
      std::set<RotationKey> keys;
      for (const RouteStep& step : route.steps) {
        c.Check(keys.insert(step.rotation.key()).second,
                label + ": rotation repeats in the full route");
      }
      const std::int64_t m = instance.num_edges();
      c.Check(static_cast<std::int64_t>(route.steps.size()) <
                  instance.num_vertices() * m * m,
              label + ": route too long");
    }

    const RotationPoset poset = BuildPosetGapless(instance);
    const std::vector<ClosedFunction> closed =
        EnumerateClosedFunctions(poset);
    c.Check(closed.size() == stable.size(),
            label + ": " + std::to_string(closed.size()) +
                " closed functions vs " + std::to_string(stable.size()) +
                " stable");
    std::vector<Vec> images;
    for (const ClosedFunction& xi : closed) {
      const Assignment x = OmegaInverse(instance, poset, xi);
      images.push_back(ToVec(x));
      c.Check(Omega(instance, poset, x) == xi,
              label + ": omega does not invert");
    }
    std::vector<Vec> sorted_images = images;
    std::sort(sorted_images.begin(), sorted_images.end());
    c.Check(sorted_images == stable, label + ": images differ from S");
    for (size_t i = 0; i < closed.size(); ++i) {
      for (size_t j = 0; j < closed.size(); ++j) {
        bool pointwise = true;
        for (int e = 0; e < poset.size(); ++e) {
          pointwise = pointwise &&
                      closed[i].values[e] <= closed[j].values[e];
        }
        c.Check(pointwise == ref.FirmsWeaklyBelow(images[i], images[j]),
                label + ": order is not preserved");
      }
    }
    const LatticeReport properties =
        VerifyLatticeProperties(instance, lattice);
    c.Check(properties.passed,
            label + ": " + (properties.violations.empty()
                                ? std::string("lattice property")
                                : properties.violations[0]));

    // Route invariance under random tie-breaks.
    const RoutePairMultiset pairs = RoutePairs(route);
    for (int r = 0; r < 10; ++r) {
      RouteOptions options;
      options.tie_break = TieBreak::kRandom;
      options.seed = seed * 1000 + r;
      C(7).Check(RoutePairs(BuildFullRoute(instance, options)) == pairs,
                 label + ": random route " + std::to_string(r) +
                     " changes the rotation multiset");
    }

    // Minimum cost against brute force.
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> cost(-5, 5);
    for (int r = 0; r < 5; ++r) {
      CostVector costs;
      Vec integer(instance.num_edges());
      for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
        integer[e] = cost(rng);
        costs.costs.push_back(Decimal::FromInt(integer[e]));
      }
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (const Vec& x : stable) {
        std::int64_t total = 0;
        for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
          total += integer[e] * x[e];
        }
        best = std::min(best, total);
      }
      const MinCostResult result = MinCostStable(instance, poset, costs);
      C(9).Check(result.cost == Decimal::FromInt(best),
                 label + ": min cost " + result.cost.ToString() + " vs " +
                     std::to_string(best));
      C(9).Check(ref.IsStable(ToVec(result.x)),
                 label + ": min-cost assignment unstable");
    }
  });
}

void Families() {
  const auto start5 = Clock::now();
  FamilyStats sam;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    GeneratorConfig config;
    config.seed = seed;
    config.workers = 2 + static_cast<int>(seed % 2);
    config.firms = 2 + static_cast<int>((seed / 2) % 2);
    // One seed in five keeps fully random preferences.
    config.opposed = seed % 5 != 0;
    config.density = config.opposed ? 1.0 : 0.7;
    config.capacity_bound = 3;
    config.quota_bound = 4;
    config.family = CfFamily::kLinear;
    const std::string label = "linear seed " + std::to_string(seed);
    Guard(5, label, [&] {
      CheckInstance(5, GenerateRaw(config), label, seed, &sam);
    });
  }
  C(5).Check(sam.nontrivial >= kMinNontrivial,
             "only " + std::to_string(sam.nontrivial) +
                 " instances with several stable assignments");
  const double elapsed5 = Seconds(start5);
  C(5).Check(elapsed5 < 60.0, "runtime " + std::to_string(elapsed5) + " s");
  char buffer[128];
  std::snprintf(buffer, sizeof buffer,
                "%d instances, %d non-trivial, %d stable assignments, %.1f s",
                sam.instances, sam.nontrivial, sam.stable_total, elapsed5);
  C(5).summary = buffer;

  FamilyStats gapless;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GeneratorConfig config;
    config.seed = 5000 + seed;
    config.workers = 3;
    config.firms = 3;
    // One seed in five keeps fully random preferences.
    config.opposed = seed % 5 != 0;
    config.density = config.opposed ? 1.0 : 0.7;
    config.capacity_bound = 2;
    config.gapless_capacity_cap = 2;
    config.quota_bound = 2 + static_cast<Count>(seed % 3);
    config.family = CfFamily::kMixed;
    const std::string label = "mixed seed " + std::to_string(config.seed);
    Guard(6, label, [&] {
      CheckInstance(6, GenerateRaw(config), label, config.seed, &gapless);
    });
  }
  C(6).Check(gapless.nontrivial >= kMinNontrivial / 2,
             "only " + std::to_string(gapless.nontrivial) +
                 " instances with several stable assignments");
  std::snprintf(buffer, sizeof buffer,
                "%d instances, %d non-trivial, %d stable assignments",
                gapless.instances, gapless.nontrivial, gapless.stable_total);
  C(6).summary = buffer;
  C(7).summary = std::to_string(10 * (sam.instances + gapless.instances)) +
                 " random routes";

  // Larger capacities for the weight search.
  int wide = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    GeneratorConfig config;
    config.seed = 9000 + seed;
    config.workers = 3;
    config.firms = 2 + static_cast<int>((seed / 2) % 2);
    config.density = 1.0;
    config.opposed = true;
    config.capacity_bound = 16;
    config.quota_bound = seed % 3 == 0 ? 16 : 8;
    config.family = seed % 2 == 0 ? CfFamily::kLinear : CfFamily::kMixed;
    const std::string label = "wide seed " + std::to_string(config.seed);
    Guard(8, label, [&] {
      const Instance instance = Generate(config);
      CheckXminPipelines(instance, label);
      RouteOptions options;
      options.gapless = false;
      const Route route = BuildFullRoute(instance, options);
      for (const RouteStep& step : route.steps) {
        CheckWeightSearch(instance, step.before, step.rotation, label);
        ++wide;
      }
    });
  }
  C(8).summary = std::to_string(sam.rotations + gapless.rotations) +
                 " family rotations, " + std::to_string(wide) +
                 " wide-capacity rotations";
  for (Count q : {2, 4, 6, 8}) {
    Guard(10, "appendix q=" + std::to_string(q), [&] {
      CheckXminPipelines(MakeAppendixInstance(q),
                         "appendix q=" + std::to_string(q));
    });
  }
}

int Run() {
  const char* titles[] = {
      "",
      "alternating fixture, quota 4",
      "alternating family, quotas 2, 6, 8",
      "gapless violation witness",
      "choice-function axioms",
      "oracle equivalence, linear family",
      "oracle equivalence, gapless tableau family",
      "route invariance",
      "weight bisection vs linear scan",
      "minimum-cost correctness",
      "minimum pipelines agree",
      "runtime monitors and call budgets",
  };
  for (int id = 1; id <= 11; ++id) {
    C(id).id = id;
    C(id).title = titles[id];
  }
  Guard(1, "fixture", Criterion1);
  Guard(2, "family", Criterion2);
  Guard(3, "witness", Criterion3);
  Guard(4, "axioms", Criterion4);
  Families();
  C(11).summary = std::to_string(C(11).checks) + " budget checks";

  bool all = true;
  for (auto& [id, c] : criteria) {
    std::printf("%s criterion %2d: %s", c.pass ? "PASS" : "FAIL", id,
                c.title.c_str());
    if (!c.summary.empty()) std::printf(" [%s]", c.summary.c_str());
    std::printf("\n");
    for (const std::string& f : c.failures) {
      std::printf("    %s\n", f.c_str());
    }
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

}  // namespace
}  // namespace galloc

int main() { return galloc::Run(); }
