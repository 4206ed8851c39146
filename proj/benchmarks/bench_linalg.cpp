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

#include "qsdc/linalg.hpp"
#include "qsdc/rng.hpp"
#include "qsdc/states.hpp"

using namespace qsdc;

static void BM_Kron(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(1);
    const Matrix a = rng.ginibre(d, d);
    const Matrix b = rng.ginibre(d, d);
    for (auto _ : state) benchmark::DoNotOptimize(kron(a, b));
}
BENCHMARK(BM_Kron)->Arg(3)->Arg(5)->Arg(7);

static void BM_PartialTrace(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(2);
    const Matrix x = rng.random_psd(d * d);
    for (auto _ : state)
        benchmark::DoNotOptimize(partial_trace(x, d, d, Subsystem::B));
}
BENCHMARK(BM_PartialTrace)->Arg(3)->Arg(5)->Arg(7);

static void BM_HermEig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Rng rng(3);
    const Matrix h = rng.random_psd(n);
    for (auto _ : state) benchmark::DoNotOptimize(herm_eig(h));
}
BENCHMARK(BM_HermEig)->Arg(9)->Arg(25)->Arg(49);

static void BM_SingletFraction(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(4);
    const DensityOperator rho{rng.random_density(d * d), d, d};
    for (auto _ : state)
        benchmark::DoNotOptimize(singlet_fraction(rho, 1e-8, 4, 1));
}
BENCHMARK(BM_SingletFraction)->Arg(2)->Arg(3);
