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

#include "galloc/stability.h"

#include <algorithm>
#include <string>

#include "galloc/errors.h"

namespace galloc {
namespace {

bool Equal(std::span<const Count> a, std::span<const Count> b) {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

// Interest test without the acceptability precondition check.
bool InterestingUnchecked(const ChoiceEvaluator& choice,
                          std::span<const Count> z, int slot) {
  if (z[slot] >= choice.bounds()[slot]) return false;
  return !Equal(choice(Bump(z, slot, 1)), z);
}

Preference Combine(Preference acc, Preference next) {
  if (next == Preference::kEqual) return acc;
  if (acc == Preference::kEqual) return next;
  return acc == next ? acc : Preference::kIncomparable;
}

}  // namespace

bool IsInteresting(const ChoiceEvaluator& choice, std::span<const Count> z,
                   int slot) {
  if (!choice.IsAcceptable(z)) {
    throw Error("interest test at " + choice.owner() +
                " needs an acceptable vector");
  }
  return InterestingUnchecked(choice, z, slot);
}

bool IsInteresting(const Instance& instance, const Assignment& x, VertexRef v,
                   EdgeIndex e) {
  const Edge& edge = instance.edge(e);
  if ((v.side == Side::kWorker && edge.worker != v.index) ||
      (v.side == Side::kFirm && edge.firm != v.index)) {
    throw Error("edge " + edge.id + " is not incident to " +
                instance.vertex_id(v));
  }
  const Local z = v.side == Side::kWorker ? WorkerLocal(instance, x, v.index)
                                          : FirmLocal(instance, x, v.index);
  const int slot = v.side == Side::kWorker ? instance.worker_slot(e)
                                           : instance.firm_slot(e);
  return IsInteresting(instance.choice(v), z, slot);
}

bool IsAcceptable(const Instance& instance, const Assignment& x) {
  CheckInBox(instance, x);
  for (int w = 0; w < instance.num_workers(); ++w) {
    if (!instance.worker_choice(w).IsAcceptable(WorkerLocal(instance, x, w))) {
      return false;
    }
  }
  for (int f = 0; f < instance.num_firms(); ++f) {
    if (!instance.firm_choice(f).IsAcceptable(FirmLocal(instance, x, f))) {
      return false;
    }
  }
  return true;
}

StabilityReport CheckStability(const Instance& instance, const Assignment& x) {
  CheckInBox(instance, x);
  StabilityReport report;
  std::vector<Local> worker_local(instance.num_workers());
  std::vector<Local> firm_local(instance.num_firms());
  std::vector<bool> worker_ok(instance.num_workers());
  std::vector<bool> firm_ok(instance.num_firms());
  for (int w = 0; w < instance.num_workers(); ++w) {
    worker_local[w] = WorkerLocal(instance, x, w);
    if (Size(worker_local[w]) > instance.quota(w)) {
      report.quota_violations.push_back(w);
    }
    worker_ok[w] = instance.worker_choice(w).IsAcceptable(worker_local[w]);
    if (!worker_ok[w]) {
      report.unacceptable_vertices.push_back({Side::kWorker, w});
    }
  }
  for (int f = 0; f < instance.num_firms(); ++f) {
    firm_local[f] = FirmLocal(instance, x, f);
    firm_ok[f] = instance.firm_choice(f).IsAcceptable(firm_local[f]);
    if (!firm_ok[f]) report.unacceptable_vertices.push_back({Side::kFirm, f});
  }
  for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
    const Edge& edge = instance.edge(e);
    if (!worker_ok[edge.worker] || !firm_ok[edge.firm]) continue;
    if (InterestingUnchecked(instance.worker_choice(edge.worker),
                             worker_local[edge.worker],
                             instance.worker_slot(e)) &&
        InterestingUnchecked(instance.firm_choice(edge.firm),
                             firm_local[edge.firm], instance.firm_slot(e))) {
      report.blocking_edges.push_back(e);
    }
  }
  report.stable = report.blocking_edges.empty() &&
                  report.unacceptable_vertices.empty() &&
                  report.quota_violations.empty();
  return report;
}

bool IsStable(const Instance& instance, const Assignment& x) {
  return CheckStability(instance, x).stable;
}

Preference CompareFirms(const Instance& instance, const Assignment& x,
                        const Assignment& y) {
  Preference result = Preference::kEqual;
  for (int f = 0; f < instance.num_firms(); ++f) {
    result = Combine(result, ComparePreference(instance.firm_choice(f),
                                               FirmLocal(instance, x, f),
                                               FirmLocal(instance, y, f)));
  }
  return result;
}

Preference CompareWorkers(const Instance& instance, const Assignment& x,
                          const Assignment& y) {
  Preference result = Preference::kEqual;
  for (int w = 0; w < instance.num_workers(); ++w) {
    result = Combine(result, ComparePreference(instance.worker_choice(w),
                                               WorkerLocal(instance, x, w),
                                               WorkerLocal(instance, y, w)));
  }
  return result;
}

bool FirmsWeaklyBelow(const Instance& instance, const Assignment& x,
                      const Assignment& y) {
  const Preference p = CompareFirms(instance, x, y);
  return p == Preference::kLess || p == Preference::kEqual;
}

}  // namespace galloc
