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

#include "sixdma/harness.hpp"

#include <omp.h>

namespace sixdma
{

std::vector<ResultRecord> run_jobs_serial(const std::vector<TrialJob> &jobs)
{
    std::vector<ResultRecord> out;
    out.reserve(jobs.size());
    for (const auto &job : jobs)
        out.push_back(run_trial(job));
    return out;
}

std::vector<ResultRecord> run_jobs_parallel(const std::vector<TrialJob> &jobs, int workers)
{
    std::vector<ResultRecord> out(jobs.size());
    const long n = static_cast<long>(jobs.size());
    // Trials are independent and read only their own job; run_trial does not throw.
    // Dynamic schedule because proposed-scheme trials cost an order of magnitude more than fpa.
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers > 0 ? workers : 1)
    for (long i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = run_trial(jobs[static_cast<std::size_t>(i)]);
    return out;
}

} // namespace sixdma
