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

// Command-line front end. Structured output is JSON on stdout, DOT with
// --dot, diagnostics on stderr. Exit codes: 0 success, 1 domain error,
// 2 internal invariant violation.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "galloc/axioms.h"
#include "galloc/errors.h"
#include "galloc/genrand.h"
#include "galloc/io.h"
#include "galloc/lattice.h"
#include "galloc/oracle.h"
#include "galloc/poset.h"
#include "galloc/rotation.h"
#include "galloc/stability.h"

namespace galloc {
namespace {

using Clock = std::chrono::steady_clock;

struct Flags {
  std::string instance_path;
  std::string second_path;
  std::string mode = "min";
  bool general = false;
  bool dot = false;
  bool verify = false;
  bool trust_gapless = false;
  std::uint64_t seed = 0;
  std::optional<std::int64_t> limit;
  std::string output;
  std::string tie_break = "smallest";
  // gen
  GeneratorConfig gen;
  std::string family = "linear";
  std::optional<Count> appendix;
  std::optional<Count> gapless_cap;
};

std::int64_t EnumerationLimit(const Flags& flags) {
  if (flags.limit) return *flags.limit;
  if (const char* env = std::getenv("GALLOC_LIMIT")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw Error(std::string("GALLOC_LIMIT is not an integer: ") + env);
    }
  }
  return kDefaultEnumerationLimit;
}

// Collects timings and oracle counts for the run report.
class Reporter {
 public:
  Reporter(std::string command, const Instance* instance)
      : command_(std::move(command)), instance_(instance) {}

  template <typename F>
  auto Time(const std::string& phase, F&& body) {
    const auto start = Clock::now();
    auto result = body();
    timings_[phase] = std::chrono::duration<double, std::milli>(
                          Clock::now() - start)
                          .count();
    return result;
  }

  Json Report() const {
    Json report = {{"command", command_}};
    if (instance_ != nullptr) {
      report["instance_digest"] = InstanceDigest(*instance_);
      Json per_cf = Json::object();
      for (int w = 0; w < instance_->num_workers(); ++w) {
        per_cf[instance_->worker_id(w)] =
            instance_->worker_choice(w).call_count();
      }
      for (int f = 0; f < instance_->num_firms(); ++f) {
        per_cf[instance_->firm_id(f)] = instance_->firm_choice(f).call_count();
      }
      report["oracle_calls"] = {{"firms", instance_->firm_calls()},
                                {"workers", instance_->worker_calls()},
                                {"per_cf", std::move(per_cf)}};
    }
    report["timings_ms"] = timings_;
    return report;
  }

 private:
  std::string command_;
  const Instance* instance_;
  Json timings_ = Json::object();
};

void Emit(const Flags& flags, const std::string& text) {
  if (flags.output.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(flags.output);
  if (!out) throw Error("cannot write " + flags.output);
  out << text << "\n";
}

void EmitJson(const Flags& flags, Json payload, const Reporter& reporter) {
  payload["report"] = reporter.Report();
  Emit(flags, payload.dump(2));
}

Json KeyToJson(const Instance& instance, const RotationKey& key) {
  Json ids = Json::array();
  for (EdgeIndex e : key) ids.push_back(instance.edge(e).id);
  return ids;
}

std::string Quote(const std::string& s) { return "\"" + s + "\""; }

TieBreak ParseTieBreak(const std::string& name) {
  if (name == "smallest") return TieBreak::kSmallestKey;
  if (name == "largest") return TieBreak::kLargestKey;
  if (name == "random") return TieBreak::kRandom;
  throw Error("unknown tie-break " + name);
}

// Brute-force lattice, or nullopt when the box is too large.
std::optional<EnumeratedLattice> TryEnumerate(const Instance& instance,
                                              const Flags& flags) {
  try {
    return EnumerateStable(instance, EnumerationLimit(flags));
  } catch (const LimitExceeded& e) {
    std::cerr << "verify skipped: " << e.what() << "\n";
    return std::nullopt;
  }
}

int RunSolve(const Flags& flags) {
  if (flags.mode != "min" && flags.mode != "max") {
    throw Error("--mode must be min or max");
  }
  const Instance instance = LoadInstance(flags.instance_path);
  Reporter reporter("solve", &instance);
  const Assignment x = reporter.Time("solve", [&] {
    return flags.mode == "min" ? XminAlkanGale(instance).x
                               : BuildFullRoute(instance).end;
  });
  Json payload = SolutionToJson(instance, x, IsStable(instance, x));
  if (flags.verify) {
    const auto lattice = TryEnumerate(instance, flags);
    if (lattice) {
      const Assignment& expected =
          flags.mode == "min" ? lattice->min() : lattice->max();
      if (expected != x) {
        throw InvariantViolation("solver disagrees with brute force");
      }
    }
    payload["verified"] = lattice.has_value();
  }
  EmitJson(flags, std::move(payload), reporter);
  return 0;
}

int RunRoute(const Flags& flags) {
  const Instance instance = LoadInstance(flags.instance_path);
  Reporter reporter("route", &instance);
  RouteOptions options;
  options.tie_break = ParseTieBreak(flags.tie_break);
  options.seed = flags.seed;
  const Route route =
      reporter.Time("route", [&] { return BuildFullRoute(instance, options); });
  Json steps = Json::array();
  for (const RouteStep& step : route.steps) {
    Json s = RotationToJson(instance, step.rotation);
    s["weight"] = step.weight;
    s["assignment"] = AssignmentToJson(instance, step.after);
    steps.push_back(std::move(s));
  }
  Json payload = {{"start", AssignmentToJson(instance, route.start)},
                  {"end", AssignmentToJson(instance, route.end)},
                  {"length", route.steps.size()},
                  {"steps", std::move(steps)}};
  if (flags.verify) {
    const auto lattice = TryEnumerate(instance, flags);
    if (lattice && (lattice->min() != route.start ||
                    lattice->max() != route.end)) {
      throw InvariantViolation("route endpoints disagree with brute force");
    }
    payload["verified"] = lattice.has_value();
  }
  EmitJson(flags, std::move(payload), reporter);
  return 0;
}

int RunRotations(const Flags& flags) {
  const Instance instance = LoadInstance(flags.instance_path);
  const Assignment x =
      AssignmentFromJson(instance, ReadJsonFile(flags.second_path));
  Reporter reporter("rotations", &instance);
  if (flags.dot) {
    const ActiveGraph gamma = Clean(instance, BuildAuxiliaryGraph(instance, x));
    std::ostringstream dot;
    dot << "digraph active {\n";
    for (const DirectedEdge& d : gamma.DirectedEdges()) {
      const Edge& e = instance.edge(d.edge);
      const std::string& w = instance.worker_id(e.worker);
      const std::string& f = instance.firm_id(e.firm);
      dot << "  " << Quote(d.worker_to_firm ? w : f) << " -> "
          << Quote(d.worker_to_firm ? f : w) << " [label=" << Quote(e.id)
          << (d.worker_to_firm ? "" : ", style=dashed") << "];\n";
    }
    dot << "}";
    Emit(flags, dot.str());
    return 0;
  }
  Json rotations = Json::array();
  reporter.Time("rotations", [&] {
    for (const Rotation& r : RotationsAt(instance, x)) {
      Json item = RotationToJson(instance, r);
      item["tau"] = MaxFeasibleWeight(instance, x, r).tau;
      rotations.push_back(std::move(item));
    }
    return 0;
  });
  EmitJson(flags, {{"rotations", std::move(rotations)}}, reporter);
  return 0;
}

RotationPoset BuildRequestedPoset(const Instance& instance,
                                  const Flags& flags) {
  PosetOptions options;
  options.trust_gapless = flags.trust_gapless;
  return flags.general ? BuildPosetGeneral(instance, options)
                       : BuildPosetGapless(instance, options);
}

int RunPoset(const Flags& flags) {
  const Instance instance = LoadInstance(flags.instance_path);
  Reporter reporter("poset", &instance);
  const RotationPoset poset = reporter.Time(
      "poset", [&] { return BuildRequestedPoset(instance, flags); });
  auto label = [&](int i) {
    const PosetElement& e = poset.elements[i];
    std::string text = FormatKey(instance, e.rotation.key());
    if (poset.mode == PosetMode::kGeneral) {
      text += "#" + std::to_string(e.occurrence + 1);
    }
    return text + ":" + std::to_string(e.tau);
  };
  if (flags.dot) {
    std::ostringstream dot;
    dot << "digraph poset {\n";
    for (int i = 0; i < poset.size(); ++i) {
      dot << "  n" << i << " [label=" << Quote(label(i)) << "];\n";
    }
    for (const auto& [i, j] : poset.hasse_edges) {
      dot << "  n" << i << " -> n" << j << ";\n";
    }
    dot << "}";
    Emit(flags, dot.str());
    return 0;
  }
  Json elements = Json::array();
  for (int i = 0; i < poset.size(); ++i) {
    const PosetElement& e = poset.elements[i];
    Json item = RotationToJson(instance, e.rotation);
    item["occurrence"] = e.occurrence;
    item["tau"] = e.tau;
    elements.push_back(std::move(item));
  }
  Json edges = Json::array();
  for (const auto& [i, j] : poset.hasse_edges) edges.push_back({i, j});
  Json payload = {{"mode", PosetModeName(poset.mode)},
                  {"elements", std::move(elements)},
                  {"hasse_edges", std::move(edges)},
                  {"xmin", AssignmentToJson(instance, poset.xmin)},
                  {"xmax", AssignmentToJson(instance, poset.xmax)}};
  if (flags.verify) {
    const auto lattice = TryEnumerate(instance, flags);
    if (lattice) {
      const auto closed =
          EnumerateClosedFunctions(poset, EnumerationLimit(flags));
      std::set<Assignment> images;
      for (const ClosedFunction& xi : closed) {
        images.insert(OmegaInverse(instance, poset, xi));
      }
      const std::set<Assignment> stable(lattice->elements.begin(),
                                        lattice->elements.end());
      if (closed.size() != stable.size() || images != stable) {
        throw InvariantViolation("closed functions do not match the stable "
                                 "assignments");
      }
      payload["closed_functions"] = closed.size();
    }
    payload["verified"] = lattice.has_value();
  }
  EmitJson(flags, std::move(payload), reporter);
  return 0;
}

int RunMinCost(const Flags& flags) {
  const Instance instance = LoadInstance(flags.instance_path);
  const CostVector costs =
      CostsFromJson(instance, ReadJsonFile(flags.second_path));
  Reporter reporter("mincost", &instance);
  const MinCostResult result = reporter.Time("mincost", [&] {
    PosetOptions options;
    options.trust_gapless = flags.trust_gapless;
    const RotationPoset poset = BuildPosetGapless(instance, options);
    return MinCostStable(instance, poset, costs);
  });
  Json payload = SolutionToJson(instance, result.x, IsStable(instance, result.x));
  payload["cost"] = result.cost.ToString();
  payload["ideal_size"] = result.ideal.size();
  EmitJson(flags, std::move(payload), reporter);
  return 0;
}

int RunCheck(const Flags& flags) {
  const Instance instance = LoadInstance(flags.instance_path);
  const Assignment x =
      AssignmentFromJson(instance, ReadJsonFile(flags.second_path));
  Reporter reporter("check", &instance);
  const StabilityReport report =
      reporter.Time("check", [&] { return CheckStability(instance, x); });
  EmitJson(flags, StabilityReportToJson(instance, report), reporter);
  return 0;
}

int RunBrute(const Flags& flags) {
  const Instance instance = LoadInstance(flags.instance_path);
  Reporter reporter("brute", &instance);
  const EnumeratedLattice lattice = reporter.Time("enumerate", [&] {
    return EnumerateStable(instance, EnumerationLimit(flags));
  });
  const LatticeReport report = reporter.Time(
      "properties", [&] { return VerifyLatticeProperties(instance, lattice); });
  Json payload = {
      {"count", lattice.size()},
      {"xmin", AssignmentToJson(instance, lattice.min())},
      {"xmax", AssignmentToJson(instance, lattice.max())},
      {"properties",
       {{"passed", report.passed},
        {"lattice", report.is_lattice},
        {"distributive", report.distributive},
        {"polarity", report.polarity},
        {"unisize", report.unisize},
        {"deficit_fixed", report.deficit_fixed},
        {"violations", report.violations}}}};
  EmitJson(flags, std::move(payload), reporter);
  return 0;
}

int RunGen(const Flags& flags) {
  RawInstance raw;
  if (flags.appendix) {
    raw = MakeAppendixRaw(*flags.appendix);
  } else {
    GeneratorConfig config = flags.gen;
    config.seed = flags.seed;
    config.family = ParseCfFamily(flags.family);
    config.gapless_capacity_cap = flags.gapless_cap;
    raw = GenerateRaw(config);
  }
  const Instance instance = ValidateInstance(raw);
  Json json = InstanceToJson(instance);
  json["generator"] = {{"prng", kPrngName}, {"seed", flags.seed}};
  Emit(flags, json.dump(2));
  return 0;
}

int RunBench(const Flags& flags) {
  const Instance instance = LoadInstance(flags.instance_path);
  Reporter reporter("bench", &instance);
  Json phases = Json::object();
  auto phase = [&](const std::string& name, auto&& body) {
    instance.ClearCaches();
    instance.ResetStatistics();
    const auto start = Clock::now();
    Json extra = body();
    extra["ms"] =
        std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    extra["firm_calls"] = instance.firm_calls();
    extra["worker_calls"] = instance.worker_calls();
    phases[name] = std::move(extra);
  };
  phase("alkan_gale", [&] {
    return Json{{"iterations", XminAlkanGale(instance).iterations}};
  });
  phase("descent", [&] {
    DescentStats stats;
    const Assignment x = Stage1FindStable(instance, {}, &stats);
    Stage2DescendToXmin(instance, x, {}, &stats);
    return Json{{"steps", stats.steps}};
  });
  phase("full_route", [&] {
    return Json{{"length", BuildFullRoute(instance).steps.size()}};
  });
  phase("poset", [&] {
    const RotationPoset poset = BuildRequestedPoset(instance, flags);
    return Json{{"mode", PosetModeName(poset.mode)},
                {"elements", poset.size()},
                {"hasse_edges", poset.hasse_edges.size()}};
  });
  EmitJson(flags, {{"phases", std::move(phases)}}, reporter);
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Stable generalized allocations: solver and oracle tools"};
  app.require_subcommand(1, 1);
  Flags flags;

  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("instance", flags.instance_path, "Instance JSON file")
        ->required();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o,--output", flags.output, "Write output to a file");
    sub->add_option("--limit", flags.limit, "Enumeration limit");
  };

  CLI::App* solve = app.add_subcommand("solve", "Extremal stable assignment");
  add_instance(solve);
  add_common(solve);
  solve->add_option("--mode", flags.mode, "min or max");
  solve->add_flag("--verify", flags.verify, "Cross-check by brute force");

  CLI::App* route = app.add_subcommand("route", "Full route from the minimum");
  add_instance(route);
  add_common(route);
  route->add_option("--seed", flags.seed, "Seed for random tie-breaks");
  route->add_option("--tie-break", flags.tie_break,
                    "smallest, largest or random");
  route->add_flag("--verify", flags.verify, "Cross-check by brute force");

  CLI::App* rotations =
      app.add_subcommand("rotations", "Rotations exposed at an assignment");
  add_instance(rotations);
  add_common(rotations);
  rotations->add_option("assignment", flags.second_path, "Assignment JSON")
      ->required();
  rotations->add_flag("--dot", flags.dot, "Emit the active graph as DOT");

  CLI::App* poset = app.add_subcommand("poset", "Rotation poset");
  add_instance(poset);
  add_common(poset);
  poset->add_flag("--general", flags.general, "Occurrence poset");
  poset->add_flag("--dot", flags.dot, "Emit the Hasse diagram as DOT");
  poset->add_flag("--verify", flags.verify, "Cross-check by brute force");
  poset->add_flag("--trust-gapless", flags.trust_gapless,
                  "Assume the gapless condition when it cannot be decided");

  CLI::App* mincost = app.add_subcommand("mincost", "Minimum-cost stable");
  add_instance(mincost);
  add_common(mincost);
  mincost->add_option("costs", flags.second_path, "Cost JSON")->required();
  mincost->add_flag("--trust-gapless", flags.trust_gapless,
                    "Assume the gapless condition when it cannot be decided");

  CLI::App* check = app.add_subcommand("check", "Stability report");
  add_instance(check);
  add_common(check);
  check->add_option("assignment", flags.second_path, "Assignment JSON")
      ->required();

  CLI::App* brute = app.add_subcommand("brute", "Enumerate stable assignments");
  add_instance(brute);
  add_common(brute);

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  add_common(gen);
  gen->add_option("--seed", flags.seed, "PRNG seed");
  gen->add_option("--workers", flags.gen.workers, "Number of workers");
  gen->add_option("--firms", flags.gen.firms, "Number of firms");
  gen->add_option("--density", flags.gen.density, "Edge density in (0, 1]");
  gen->add_option("--capacity-bound", flags.gen.capacity_bound,
                  "Largest capacity");
  gen->add_option("--quota-bound", flags.gen.quota_bound, "Largest quota");
  gen->add_option("--family", flags.family,
                  "linear, tableau, tableau-a3 or mixed");
  gen->add_option("--gapless-cap", flags.gapless_cap,
                  "Cap every capacity; tableau firms are redrawn until "
                  "gapless");
  gen->add_flag("--opposed", flags.gen.opposed,
                "Firms rank edges against worker preferences");
  gen->add_option("--appendix", flags.appendix,
                  "Alternating three-firm instance with this even quota");

  CLI::App* bench = app.add_subcommand("bench", "Oracle calls per phase");
  add_instance(bench);
  add_common(bench);
  bench->add_flag("--general", flags.general, "Occurrence poset");
  bench->add_flag("--trust-gapless", flags.trust_gapless,
                  "Assume the gapless condition when it cannot be decided");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*solve) return RunSolve(flags);
    if (*route) return RunRoute(flags);
    if (*rotations) return RunRotations(flags);
    if (*poset) return RunPoset(flags);
    if (*mincost) return RunMinCost(flags);
    if (*check) return RunCheck(flags);
    if (*brute) return RunBrute(flags);
    if (*gen) return RunGen(flags);
    if (*bench) return RunBench(flags);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace
}  // namespace galloc

int main(int argc, char** argv) { return galloc::Main(argc, argv); }
