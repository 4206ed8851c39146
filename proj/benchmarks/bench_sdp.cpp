// Copyright 2026 The qsdc developers
//
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

#include "qsdc/programs.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/seesaw.hpp"

using namespace qsdc;

static void BM_OptimizePovm(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    PreparationFamily family = weyl_meb_protocol(isotropic(d, 0.8)).family;
    std::vector<DensityOperator> prepared;
    for (int x = 0; x < family.size(); ++x) prepared.push_back(prepare(family, x));
    for (auto _ : state) benchmark::DoNotOptimize(optimize_povm(prepared));
}
BENCHMARK(BM_OptimizePovm)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_OptimizePreparations(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const DensityOperator shared = isotropic(d, 0.8);
    const Povm povm = meb_povm(d);
    for (auto _ : state) benchmark::DoNotOptimize(optimize_preparations(shared, povm));
}
BENCHMARK(BM_OptimizePreparations)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_SeesawRestart(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const DensityOperator shared = werner(d, 0.9);
    SeesawConfig config;
    config.restarts = 1;
    config.seed = 5;
    config.max_rounds = 20;
    for (auto _ : state) benchmark::DoNotOptimize(seesaw_psuc(shared, config));
}
BENCHMARK(BM_SeesawRestart)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
