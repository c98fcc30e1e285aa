// SPDX-License-Identifier: Apache-2.0
//
// sixdma: movable-antenna-surface secrecy simulator and optimizer
// Copyright (C) 2026 The sixdma authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Serial reference vs OpenMP trial runner on a small sweep.
// On a single core the two should be within noise; the parallel path only pays off with more workers.

#include "sixdma/harness.hpp"

#include <benchmark/benchmark.h>

#include <omp.h>

namespace
{

using namespace sixdma;

std::vector<TrialJob> small_sweep(SchemeKind scheme)
{
    ExperimentConfig cfg;
    cfg.scenario.surfaces = 4;
    cfg.scenario.antennas_per_surface = 4;
    cfg.scenario.mean_users = 4;
    cfg.scenario.mean_eves = 1;
    cfg.scenario.seed = 20260101;
    SweepSpec spec;
    spec.values = {1.0, 10.0};
    spec.trials = 4;
    spec.schemes = {scheme};
    spec.base_seed = cfg.scenario.seed;
    return expand_sweep(spec, cfg);
}

void bm_serial(benchmark::State &state)
{
    const auto jobs = small_sweep(static_cast<SchemeKind>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_jobs_serial(jobs));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()));
}

void bm_parallel(benchmark::State &state)
{
    const auto jobs = small_sweep(static_cast<SchemeKind>(state.range(0)));
    const int workers = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_jobs_parallel(jobs, workers));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()));
}

void worker_args(benchmark::internal::Benchmark *b)
{
    const int cores = omp_get_num_procs();
    for (auto scheme : {SchemeKind::fpa, SchemeKind::proposed})
        for (int w = 1; w <= cores; w *= 2)
            b->Args({static_cast<std::int64_t>(scheme), w});
}

} // namespace

BENCHMARK(bm_serial)->Arg(static_cast<std::int64_t>(SchemeKind::fpa))->Arg(static_cast<std::int64_t>(SchemeKind::proposed))
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(bm_parallel)->Apply(worker_args)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
