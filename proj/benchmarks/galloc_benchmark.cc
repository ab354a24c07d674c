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

#include <benchmark/benchmark.h>

#include "galloc/genrand.h"
#include "galloc/lattice.h"
#include "galloc/model.h"
#include "galloc/poset.h"

namespace galloc {
namespace {

// Opposed linear instance; large capacities make weighted steps matter.
Instance Wide(int size, Count capacity) {
  GeneratorConfig config;
  config.seed = 1;
  config.workers = size;
  config.firms = size;
  config.density = 1.0;
  config.capacity_bound = capacity;
  config.quota_bound = capacity;
  config.opposed = true;
  return Generate(config);
}

void BM_AlkanGaleAppendix(benchmark::State& state) {
  const Instance instance = MakeAppendixInstance(state.range(0));
  for (auto _ : state) {
    instance.ClearCaches();
    benchmark::DoNotOptimize(XminAlkanGale(instance));
  }
}
BENCHMARK(BM_AlkanGaleAppendix)->Arg(4)->Arg(16)->Arg(64);

void BM_DescentAppendix(benchmark::State& state) {
  const Instance instance = MakeAppendixInstance(state.range(0));
  for (auto _ : state) {
    instance.ClearCaches();
    benchmark::DoNotOptimize(XminByDescent(instance));
  }
}
BENCHMARK(BM_DescentAppendix)->Arg(4)->Arg(16)->Arg(64);

void BM_FullRouteAppendix(benchmark::State& state) {
  const Instance instance = MakeAppendixInstance(state.range(0));
  RouteOptions options;
  options.gapless = false;
  for (auto _ : state) {
    instance.ClearCaches();
    benchmark::DoNotOptimize(BuildFullRoute(instance, options));
  }
}
BENCHMARK(BM_FullRouteAppendix)->Arg(4)->Arg(16)->Arg(64);

void BM_AlkanGaleWide(benchmark::State& state) {
  const Instance instance = Wide(state.range(0), state.range(1));
  for (auto _ : state) {
    instance.ClearCaches();
    benchmark::DoNotOptimize(XminAlkanGale(instance));
  }
}
BENCHMARK(BM_AlkanGaleWide)->Args({4, 8})->Args({4, 1000})->Args({8, 1000});

void BM_DescentWide(benchmark::State& state) {
  const Instance instance = Wide(state.range(0), state.range(1));
  for (auto _ : state) {
    instance.ClearCaches();
    benchmark::DoNotOptimize(XminByDescent(instance));
  }
}
BENCHMARK(BM_DescentWide)->Args({4, 8})->Args({4, 1000})->Args({8, 1000});

void BM_PosetWide(benchmark::State& state) {
  const Instance instance = Wide(state.range(0), state.range(1));
  for (auto _ : state) {
    instance.ClearCaches();
    benchmark::DoNotOptimize(BuildPosetGapless(instance));
  }
}
BENCHMARK(BM_PosetWide)->Args({4, 8})->Args({4, 1000})->Args({6, 1000});

void BM_PosetGeneralAppendix(benchmark::State& state) {
  const Instance instance = MakeAppendixInstance(state.range(0));
  for (auto _ : state) {
    instance.ClearCaches();
    benchmark::DoNotOptimize(BuildPosetGeneral(instance));
  }
}
BENCHMARK(BM_PosetGeneralAppendix)->Arg(4)->Arg(16);

}  // namespace
}  // namespace galloc

BENCHMARK_MAIN();
