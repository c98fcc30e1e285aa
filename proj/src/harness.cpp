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

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace sixdma
{

std::string_view to_string(SweepParam p)
{
    switch (p)
    {
    case SweepParam::power:
        return "power";
    case SweepParam::users:
        return "users";
    case SweepParam::eves:
        return "eves";
    }
    return "unknown";
}

SweepParam parse_sweep_param(std::string_view name)
{
    for (auto p : {SweepParam::power, SweepParam::users, SweepParam::eves})
        if (to_string(p) == name)
            return p;
    throw std::invalid_argument("Unknown sweep parameter '" + std::string(name) + "' (expected power, users or eves).");
}

void SweepSpec::validate() const
{
    if (values.empty())
        throw std::invalid_argument("Sweep needs at least one value.");
    if (schemes.empty())
        throw std::invalid_argument("Sweep needs at least one scheme.");
    if (trials < 1)
        throw std::invalid_argument("Sweep needs at least one trial.");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("Sweep values must be positive and finite.");
}

ExperimentConfig apply_sweep_value(ExperimentConfig config, SweepParam param, double value)
{
    switch (param)
    {
    case SweepParam::power:
        config.scenario.p_max = value;
        break;
    case SweepParam::users:
        config.scenario.mean_users = value;
        break;
    case SweepParam::eves:
        config.scenario.mean_eves = value;
        break;
    }
    return config;
}

ResultRecord run_trial(const TrialJob &job, SolveTrace *trace)
{
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig &cfg = job.config;
    ResultRecord rec;
    rec.scheme = job.scheme;
    rec.swept_param = job.swept_param;
    rec.swept_value = job.swept_value;
    rec.value_index = job.value_index;
    rec.trial = job.trial;
    rec.seed = trial_seed(cfg.scenario.seed, static_cast<std::uint64_t>(job.trial));
    rec.p_max = cfg.scenario.p_max;
    rec.ssr = std::numeric_limits<double>::quiet_NaN();
    rec.alpha = std::numeric_limits<double>::quiet_NaN();

    try
    {
        const TerminalDraw draw = generate_terminals(cfg.scenario, static_cast<std::uint64_t>(job.trial));
        rec.k_d = static_cast<int>(draw.users.size());
        rec.k_e = static_cast<int>(draw.eves.size());
        const Scene scene = make_scene(cfg.scenario, draw);

        BaselinePolicy policy;
        try
        {
            policy = baseline_poses(job.scheme, cfg.scenario);
        }
        catch (const std::invalid_argument &e)
        {
            throw InfeasiblePosesError(e.what());
        }

        SolveTrace tr = optimize(scene, policy.initial, cfg.optimizer, policy.freedom);
        rec.ssr = tr.final_report.ssr;
        rec.alpha = tr.final_beams.alpha;
        rec.outer_iters = tr.outer_iterations;
        rec.max_total_power = tr.max_total_power;
        rec.max_pose_violation = constraint_violation(scene, tr.final_poses);
        rec.outer_ssr = tr.outer_ssr;
        rec.min_outer_increment = 0.0;
        for (std::size_t i = 1; i < tr.outer_ssr.size(); ++i)
            rec.min_outer_increment = std::min(rec.min_outer_increment, tr.outer_ssr[i] - tr.outer_ssr[i - 1]);
        if (trace)
            *trace = std::move(tr);
    }
    catch (const InfeasiblePosesError &e)
    {
        rec.status = "infeasible";
        rec.message = e.what();
    }
    catch (const std::exception &e)
    {
        rec.status = "error";
        rec.message = e.what();
    }
    rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<TrialJob> expand_sweep(const SweepSpec &spec, const ExperimentConfig &config)
{
    spec.validate();
    ExperimentConfig base = config;
    base.scenario.seed = spec.base_seed;
    std::vector<TrialJob> jobs;
    jobs.reserve(spec.schemes.size() * spec.values.size() * static_cast<std::size_t>(spec.trials));
    for (SchemeKind scheme : spec.schemes)
        for (std::size_t v = 0; v < spec.values.size(); ++v)
            for (int t = 0; t < spec.trials; ++t)
            {
                TrialJob job;
                job.config = apply_sweep_value(base, spec.parameter, spec.values[v]);
                job.scheme = scheme;
                job.swept_param = std::string(to_string(spec.parameter));
                job.swept_value = spec.values[v];
                job.value_index = static_cast<int>(v);
                job.trial = t;
                jobs.push_back(std::move(job));
            }
    return jobs;
}

int worker_count_from_env()
{
    const char *env = std::getenv("SIXDMA_WORKERS");
    if (!env || !*env)
        return 1;
    int n = 0;
    const std::string_view s(env);
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || ptr != s.data() + s.size() || n < 1)
        throw std::invalid_argument("SIXDMA_WORKERS must be a positive integer, got '" + std::string(s) + "'.");
    return n;
}

namespace
{

auto sort_key(const ResultRecord &r)
{
    return std::make_tuple(static_cast<int>(r.scheme), r.value_index, r.trial);
}

} // namespace

SweepResult run_sweep(const SweepSpec &spec, const ExperimentConfig &config, int workers)
{
    const auto jobs = expand_sweep(spec, config);
    SweepResult out;
    out.records = workers > 1 ? run_jobs_parallel(jobs, workers) : run_jobs_serial(jobs);
    std::stable_sort(out.records.begin(), out.records.end(),
                     [](const ResultRecord &a, const ResultRecord &b) { return sort_key(a) < sort_key(b); });

    // Means over successful trials, one row per (scheme, value).
    std::size_t i = 0;
    while (i < out.records.size())
    {
        std::size_t j = i;
        ResultRecord agg;
        agg.scheme = out.records[i].scheme;
        agg.swept_param = out.records[i].swept_param;
        agg.swept_value = out.records[i].swept_value;
        agg.value_index = out.records[i].value_index;
        agg.trial = -1;
        agg.seed = spec.base_seed;
        agg.status = "aggregate";
        agg.p_max = out.records[i].p_max;
        double ssr = 0.0, alpha = 0.0, iters = 0.0, kd = 0.0, ke = 0.0, ms = 0.0;
        int ok = 0;
        for (; j < out.records.size() && out.records[j].scheme == agg.scheme &&
               out.records[j].value_index == agg.value_index;
             ++j)
        {
            const ResultRecord &r = out.records[j];
            ms += r.runtime_ms;
            if (r.status != "ok")
                continue;
            ++ok;
            ssr += r.ssr;
            alpha += r.alpha;
            iters += r.outer_iters;
            kd += r.k_d;
            ke += r.k_e;
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        agg.ssr = ok ? ssr / ok : nan;
        agg.alpha = ok ? alpha / ok : nan;
        agg.mean_outer_iters = ok ? iters / ok : nan;
        agg.mean_k_d = ok ? kd / ok : nan;
        agg.mean_k_e = ok ? ke / ok : nan;
        agg.runtime_ms = ms / static_cast<double>(j - i);
        agg.message = std::to_string(ok) + " of " + std::to_string(j - i) + " trials ok";
        out.aggregates.push_back(std::move(agg));
        i = j;
    }
    return out;
}

ResultRecord run_single(const ExperimentConfig &config, SchemeKind scheme, SolveTrace *trace)
{
    TrialJob job;
    job.config = config;
    job.scheme = scheme;
    return run_trial(job, trace);
}

std::string format_number(double x)
{
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace
{

void write_row(std::ostream &out, const ResultRecord &r)
{
    const bool agg = r.status == "aggregate";
    out << to_string(r.scheme) << ',' << r.swept_param << ',' << format_number(r.swept_value) << ','
        << (agg ? std::string("mean") : std::to_string(r.trial)) << ',' << r.seed << ','
        << (agg ? format_number(r.mean_k_d) : std::to_string(r.k_d)) << ','
        << (agg ? format_number(r.mean_k_e) : std::to_string(r.k_e)) << ',' << format_number(r.ssr) << ','
        << format_number(r.alpha) << ',' << (agg ? format_number(r.mean_outer_iters) : std::to_string(r.outer_iters))
        << ',' << format_number(std::round(r.runtime_ms * 1000.0) / 1000.0) << ',' << r.status << '\n';
}

} // namespace

void write_csv(std::ostream &out, const std::vector<ResultRecord> &records)
{
    out << kCsvHeader << '\n';
    for (const auto &r : records)
        write_row(out, r);
}

void write_csv(std::ostream &out, const SweepResult &result)
{
    out << kCsvHeader << '\n';
    std::size_t a = 0;
    for (std::size_t i = 0; i < result.records.size(); ++i)
    {
        write_row(out, result.records[i]);
        const bool cell_ends = i + 1 == result.records.size() ||
                               result.records[i + 1].scheme != result.records[i].scheme ||
                               result.records[i + 1].value_index != result.records[i].value_index;
        if (cell_ends && a < result.aggregates.size())
            write_row(out, result.aggregates[a++]);
    }
}

std::string trace_to_json(const SolveTrace &trace, const ResultRecord &record)
{
    using nlohmann::json;
    auto poses = [](const std::vector<SurfacePose> &ps) {
        json arr = json::array();
        for (const auto &p : ps)
            arr.push_back({{"position", {p.position.x(), p.position.y(), p.position.z()}},
                           {"rotation", {p.rotation.x(), p.rotation.y(), p.rotation.z()}}});
        return arr;
    };
    auto finite = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };

    json steps = json::array();
    for (const auto &s : trace.steps)
    {
        const char *kind = s.kind == StepKind::position ? "position" : s.kind == StepKind::rotation ? "rotation" : "azimuth";
        steps.push_back({{"outer", s.outer},
                         {"inner", s.inner},
                         {"surface", s.surface},
                         {"kind", kind},
                         {"backtracks", s.backtracks},
                         {"accepted", s.accepted},
                         {"objective", finite(s.objective)}});
    }

    json rec = {{"scheme", std::string(to_string(record.scheme))},
                {"trial", record.trial},
                {"seed", record.seed},
                {"k_d", record.k_d},
                {"k_e", record.k_e},
                {"ssr_bps_hz", finite(record.ssr)},
                {"alpha", finite(record.alpha)},
                {"outer_iters", record.outer_iters},
                {"runtime_ms", record.runtime_ms},
                {"status", record.status},
                {"message", record.message}};

    json doc = {{"record", rec},
                {"outer_objective", trace.outer_objective},
                {"outer_ssr", trace.outer_ssr},
                {"inner_objective", trace.inner_objective},
                {"steps", steps},
                {"initial_poses", poses(trace.initial_poses)},
                {"final_poses", poses(trace.final_poses)},
                {"per_user", {{"sinr", trace.final_report.sinr},
                              {"user_rate", trace.final_report.user_rate},
                              {"eve_rate", trace.final_report.eve_rate},
                              {"secrecy_rate", trace.final_report.secrecy_rate}}},
                {"raw_objective", finite(trace.final_report.raw_objective)},
                {"max_total_power", trace.max_total_power},
                {"null_space_empty", trace.null_space_empty}};
    return doc.dump(2);
}

} // namespace sixdma
