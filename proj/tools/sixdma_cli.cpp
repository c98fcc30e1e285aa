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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace
{

using namespace sixdma;

std::vector<double> parse_values(const std::string &list)
{
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(item, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument("--values: cannot parse '" + item + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<SchemeKind> parse_schemes(const std::string &list)
{
    std::vector<SchemeKind> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_scheme(item));
    return out;
}

void write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

int cmd_run(const std::string &config_path, const std::string &scheme, const std::string &out_path,
            const std::string &trace_path)
{
    const ExperimentConfig cfg = load_config(config_path);
    SolveTrace trace;
    const ResultRecord rec = run_single(cfg, parse_scheme(scheme), &trace);

    std::ostringstream csv;
    write_csv(csv, std::vector<ResultRecord>{rec});
    std::cout << csv.str();
    if (!out_path.empty())
        write_file(out_path, csv.str());
    std::string tpath = trace_path;
    if (tpath.empty() && !out_path.empty())
        tpath = out_path + ".trace.json";
    if (!tpath.empty())
        write_file(tpath, trace_to_json(trace, rec) + "\n");

    if (rec.status != "ok")
    {
        std::cerr << "sixdma: " << rec.status << ": " << rec.message << '\n';
        return rec.status == "infeasible" ? 3 : 4;
    }
    return 0;
}

int cmd_sweep(const std::string &config_path, const std::string &param, const std::string &values, int trials,
              const std::string &schemes, const std::string &out_path)
{
    const ExperimentConfig cfg = load_config(config_path);
    SweepSpec spec;
    spec.parameter = parse_sweep_param(param);
    spec.values = parse_values(values);
    spec.trials = trials;
    spec.schemes = parse_schemes(schemes);
    spec.base_seed = cfg.scenario.seed;

    const SweepResult result = run_sweep(spec, cfg, worker_count_from_env());
    std::ostringstream csv;
    write_csv(csv, result);
    write_file(out_path, csv.str());

    int failed = 0;
    for (const auto &r : result.records)
        if (r.status != "ok")
        {
            ++failed;
            std::cerr << "sixdma: " << to_string(r.scheme) << " value " << format_number(r.swept_value) << " trial "
                      << r.trial << ": " << r.status << ": " << r.message << '\n';
        }
    for (const auto &a : result.aggregates)
        std::cout << to_string(a.scheme) << ' ' << param << '=' << format_number(a.swept_value)
                  << " mean_ssr=" << format_number(a.ssr) << " (" << a.message << ")\n";
    return failed ? 5 : 0;
}

int cmd_check(const std::string &config_path)
{
    ExperimentConfig cfg;
    try
    {
        cfg = load_config(config_path);
    }
    catch (const std::exception &e)
    {
        std::cerr << "sixdma: invalid config: " << e.what() << '\n';
        return 1;
    }
    try
    {
        const auto poses = initial_poses(cfg.scenario);
        Scene scene = make_scene(cfg.scenario, TerminalDraw{});
        const double violation = constraint_violation(scene, poses);
        if (violation > 1e-9)
        {
            std::cerr << "sixdma: initial poses violate the placement constraints by " << violation << '\n';
            return 1;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "sixdma: infeasible initial poses: " << e.what() << '\n';
        return 1;
    }
    std::cout << "config ok: " << cfg.scenario.surfaces << " surfaces x " << cfg.scenario.antennas_per_surface
              << " antennas, P_max " << format_number(cfg.scenario.p_max) << " W\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Secrecy-rate simulator and pose optimizer for movable antenna surfaces"};
    app.require_subcommand(1);

    std::string config, scheme = "proposed", out, trace, param, values, schemes = "proposed,rotation_only,circular,fpa";
    int trials = 1;

    auto *run = app.add_subcommand("run", "Optimize trial 0 of a configuration for one scheme");
    run->add_option("--config", config, "Config file")->required();
    run->add_option("--scheme", scheme, "proposed | fpa | circular | rotation_only");
    run->add_option("--out", out, "CSV output path");
    run->add_option("--trace", trace, "Trace JSON path (default: <out>.trace.json when --out is given)");

    auto *sweep = app.add_subcommand("sweep", "Paired Monte-Carlo sweep over one parameter");
    sweep->add_option("--config", config, "Config file")->required();
    sweep->add_option("--param", param, "power | users | eves")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();
    sweep->add_option("--trials", trials, "Trials per value")->required()->check(CLI::PositiveNumber);
    sweep->add_option("--schemes", schemes, "Comma-separated schemes");
    sweep->add_option("--out", out, "CSV output path")->required();

    auto *check = app.add_subcommand("check", "Validate a configuration and its initial poses");
    check->add_option("--config", config, "Config file")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
            return cmd_run(config, scheme, out, trace);
        if (*sweep)
            return cmd_sweep(config, param, values, trials, schemes, out);
        if (*check)
            return cmd_check(config);
    }
    catch (const std::exception &e)
    {
        std::cerr << "sixdma: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
