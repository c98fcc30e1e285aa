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

#pragma once

#include "sixdma/config.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sixdma
{

enum class SweepParam
{
    power,
    users,
    eves
};

std::string_view to_string(SweepParam p);
/// Accepts power | users | eves.
SweepParam parse_sweep_param(std::string_view name);

struct SweepSpec
{
    SweepParam parameter = SweepParam::power;
    std::vector<double> values;
    int trials = 1;
    std::vector<SchemeKind> schemes;
    std::uint64_t base_seed = 1;

    void validate() const;
};

struct ResultRecord
{
    SchemeKind scheme = SchemeKind::proposed;
    std::string swept_param = "none";
    double swept_value = 0.0;
    int value_index = 0;
    int trial = 0;
    std::uint64_t seed = 0; // trial seed of the terminal draw
    int k_d = 0;
    int k_e = 0;
    double ssr = 0.0;
    double alpha = 0.0;
    int outer_iters = 0;
    double runtime_ms = 0.0;
    std::string status = "ok"; // ok | infeasible | error

    // Diagnostics kept out of the CSV.
    std::string message;
    double p_max = 0.0;
    double max_total_power = 0.0;
    double max_pose_violation = 0.0;
    double min_outer_increment = 0.0; // smallest difference of consecutive outer SSR values
    std::vector<double> outer_ssr;
    // Aggregate rows only: means of k_d, k_e and outer_iters.
    double mean_k_d = 0.0;
    double mean_k_e = 0.0;
    double mean_outer_iters = 0.0;
};

/// One unit of work: a fully resolved configuration, scheme and trial index.
struct TrialJob
{
    ExperimentConfig config;
    SchemeKind scheme = SchemeKind::proposed;
    std::string swept_param = "none";
    double swept_value = 0.0;
    int value_index = 0;
    int trial = 0;
};

/// Draws the trial's terminals, runs the scheme and fills a record. Never throws: failures are
/// reported through status and message. The trace, if requested, is written to `trace`.
ResultRecord run_trial(const TrialJob &job, SolveTrace *trace = nullptr);

/// Jobs expanded in (scheme, value, trial) order. Each trial index draws the same terminals for
/// every scheme; a power sweep keeps the draw fixed across values as well.
std::vector<TrialJob> expand_sweep(const SweepSpec &spec, const ExperimentConfig &config);

ExperimentConfig apply_sweep_value(ExperimentConfig config, SweepParam param, double value);

/// Serial reference runner.
std::vector<ResultRecord> run_jobs_serial(const std::vector<TrialJob> &jobs);
/// OpenMP runner; result i belongs to job i whatever the schedule.
std::vector<ResultRecord> run_jobs_parallel(const std::vector<TrialJob> &jobs, int workers);

/// Worker count from SIXDMA_WORKERS (default 1).
int worker_count_from_env();

struct SweepResult
{
    std::vector<ResultRecord> records;   // sorted by (scheme, value, trial)
    std::vector<ResultRecord> aggregates; // one per (scheme, value); mean over "ok" records
};

SweepResult run_sweep(const SweepSpec &spec, const ExperimentConfig &config, int workers = 1);

/// Runs trial 0 of the config for one scheme.
ResultRecord run_single(const ExperimentConfig &config, SchemeKind scheme, SolveTrace *trace = nullptr);

inline constexpr const char *kCsvHeader =
    "scheme,swept_param,swept_value,trial,seed,k_d,k_e,ssr_bps_hz,alpha,outer_iters,runtime_ms,status";

/// Shortest round-trip decimal form, locale independent.
std::string format_number(double x);

void write_csv(std::ostream &out, const std::vector<ResultRecord> &records);
void write_csv(std::ostream &out, const SweepResult &result);

/// JSON dump of a trace and its record.
std::string trace_to_json(const SolveTrace &trace, const ResultRecord &record);

} // namespace sixdma
