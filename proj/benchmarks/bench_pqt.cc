// Copyright 2026 The pqtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "pqt/ensemble.h"
#include "pqt/optimizer.h"
#include "pqt/scenario.h"

namespace {

pqt::Arrangement noisy_arrangement() {
    pqt::ScenarioSpec spec = pqt::make_scenario(1, pqt::NoiseKind::AmplitudeDamping, pqt::NoiseKind::Depolarizing);
    spec.p_input = 0.3;
    spec.p_bob = 0.3;
    return pqt::bind(spec);
}

void BM_Run(benchmark::State &state) {
    pqt::Arrangement arr = noisy_arrangement();
    pqt::InputState input{0.36, 0.3};
    pqt::ChannelParams params{0.7, 0.9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqt::run(input, params, arr));
    }
}
BENCHMARK(BM_Run);

void BM_Average(benchmark::State &state) {
    pqt::Arrangement arr = noisy_arrangement();
    pqt::QuadratureGrid grid = pqt::QuadratureGrid::make();
    pqt::ChannelParams params{0.7, 0.9};
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqt::average(params, arr, grid));
    }
}
BENCHMARK(BM_Average);

void BM_Optimize(benchmark::State &state) {
    pqt::Arrangement arr = noisy_arrangement();
    pqt::SearchConfig cfg = pqt::default_config(arr, pqt::Target::outcome(1));
    cfg.prefer_success = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqt::optimize(arr, cfg));
    }
}
BENCHMARK(BM_Optimize)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State &state) {
    pqt::Arrangement arr = noisy_arrangement();
    pqt::SearchConfig cfg = pqt::default_config(arr);
    for (auto _ : state) {
        benchmark::DoNotOptimize(pqt::classify(arr, cfg));
    }
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
