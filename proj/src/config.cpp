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

#include "sixdma/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace sixdma
{

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts) + 30.0;
}

namespace
{

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string &key, std::string_view v)
{
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out))
        throw ConfigError(key, "expected a finite number, got '" + std::string(v) + "'");
    return out;
}

long long to_integer(const std::string &key, std::string_view v)
{
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(key, "expected an integer, got '" + std::string(v) + "'");
    return out;
}

std::uint64_t to_unsigned(const std::string &key, std::string_view v)
{
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(key, "expected a non-negative 64-bit integer, got '" + std::string(v) + "'");
    return out;
}

int to_count(const std::string &key, std::string_view v)
{
    const long long n = to_integer(key, v);
    if (n < 1 || n > 1000000)
        throw ConfigError(key, "must be a positive integer");
    return static_cast<int>(n);
}

double positive(const std::string &key, std::string_view v)
{
    const double x = to_double(key, v);
    if (!(x > 0.0))
        throw ConfigError(key, "must be positive");
    return x;
}

std::vector<double> to_list(const std::string &key, std::string_view v)
{
    std::vector<double> out;
    while (!v.empty())
    {
        const auto comma = v.find(',');
        out.push_back(to_double(key, trim(v.substr(0, comma))));
        if (comma == std::string_view::npos)
            break;
        v.remove_prefix(comma + 1);
    }
    return out;
}

const std::set<std::string> kRequired = {"p_max_w",    "noise_dbm", "wavelength_m", "surfaces", "antennas_per_surface",
                                         "mean_users", "mean_eves", "seed"};

constexpr double kDeg = kPi / 180.0;

std::string number(double x)
{
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace

ExperimentConfig parse_config(std::string_view text)
{
    std::map<std::string, std::string> entries;
    int line_no = 0;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(std::string(line), "line " + std::to_string(line_no) + " is not of the form key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigError("", "line " + std::to_string(line_no) + " has an empty key");
        if (value.empty())
            throw ConfigError(key, "missing value");
        if (!entries.emplace(key, value).second)
            throw ConfigError(key, "given more than once");
    }

    for (const auto &key : kRequired)
        if (!entries.count(key))
            throw ConfigError(key, "required key is missing");

    ExperimentConfig cfg;
    ScenarioConfig &s = cfg.scenario;
    OptimizerConfig &o = cfg.optimizer;
    bool d_min_given = false;
    std::string region_shape = "ball";
    double region_size = 1.0;

    using Setter = std::function<void(const std::string &, std::string_view)>;
    const std::map<std::string, Setter> setters = {
        {"p_max_w", [&](auto &k, auto v) { s.p_max = positive(k, v); }},
        {"noise_dbm", [&](auto &k, auto v) { s.noise_power = dbm_to_watts(to_double(k, v)); }},
        {"wavelength_m", [&](auto &k, auto v) { s.wavelength = positive(k, v); }},
        {"surfaces", [&](auto &k, auto v) { s.surfaces = to_count(k, v); }},
        {"antennas_per_surface", [&](auto &k, auto v) { s.antennas_per_surface = to_count(k, v); }},
        {"mean_users", [&](auto &k, auto v) { s.mean_users = positive(k, v); }},
        {"mean_eves", [&](auto &k, auto v) { s.mean_eves = positive(k, v); }},
        {"d_min_m",
         [&](auto &k, auto v) {
             s.d_min = to_double(k, v);
             if (!(s.d_min >= 0.0))
                 throw ConfigError(k, "must be non-negative");
             d_min_given = true;
         }},
        {"region_radius_m", [&](auto &k, auto v) { region_size = positive(k, v); }},
        {"region_shape",
         [&](auto &k, auto v) {
             if (v != "ball" && v != "box")
                 throw ConfigError(k, "expected ball or box");
             region_shape = std::string(v);
         }},
        {"alpha_min", [&](auto &k, auto v) { o.alpha_grid.min = to_double(k, v); }},
        {"alpha_max", [&](auto &k, auto v) { o.alpha_grid.max = to_double(k, v); }},
        {"alpha_step", [&](auto &k, auto v) { o.alpha_grid.step = positive(k, v); }},
        {"delta", [&](auto &k, auto v) { o.delta = positive(k, v); }},
        {"t1_max", [&](auto &k, auto v) { o.t1_max = to_count(k, v); }},
        {"t2_max", [&](auto &k, auto v) { o.t2_max = to_count(k, v); }},
        {"rho_pos", [&](auto &k, auto v) { o.rho_pos = positive(k, v); }},
        {"rho_rot", [&](auto &k, auto v) { o.rho_rot = positive(k, v); }},
        {"fd_step_pos", [&](auto &k, auto v) { o.fd_step_pos = positive(k, v); }},
        {"fd_step_rot", [&](auto &k, auto v) { o.fd_step_rot = positive(k, v); }},
        {"pattern",
         [&](auto &k, auto v) {
             if (v == "iso")
                 s.pattern = GainPattern::isotropic();
             else if (v == "sector")
                 s.pattern = GainPattern{};
             else
                 throw ConfigError(k, "expected iso or sector");
         }},
        {"seed", [&](auto &k, auto v) { s.seed = to_unsigned(k, v); }},
        {"pose_beams",
         [&](auto &k, auto v) {
             if (v == "held")
                 o.pose_beams = PoseBeams::held;
             else if (v == "refreshed")
                 o.pose_beams = PoseBeams::refreshed;
             else
                 throw ConfigError(k, "expected held or refreshed");
         }},
        {"d_lo_m", [&](auto &k, auto v) { s.d_lo = positive(k, v); }},
        {"d_hi_m", [&](auto &k, auto v) { s.d_hi = positive(k, v); }},
        {"elevation_min_deg", [&](auto &k, auto v) { s.elevation_min = to_double(k, v) * kDeg; }},
        {"elevation_max_deg", [&](auto &k, auto v) { s.elevation_max = to_double(k, v) * kDeg; }},
        {"downtilt_deg", [&](auto &k, auto v) { s.downtilt = to_double(k, v) * kDeg; }},
        {"azimuth_weights", [&](auto &k, auto v) { s.azimuth_weights = to_list(k, v); }},
    };

    for (const auto &[key, value] : entries)
    {
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError(key, "unknown key");
        it->second(key, value);
    }

    if (!d_min_given)
        s.d_min = default_min_distance(s.wavelength);
    s.region = region_shape == "ball" ? DeploymentRegion::ball(region_size) : DeploymentRegion::box(Vec3::Constant(region_size));

    // Cross-field checks, reported against the key a user would edit.
    if (!(s.d_lo < s.d_hi))
        throw ConfigError("d_lo_m", "must be below d_hi_m");
    if (!(s.elevation_min <= s.elevation_max && s.elevation_min >= -kPi / 2 - 1e-12 && s.elevation_max <= kPi / 2 + 1e-12))
        throw ConfigError("elevation_min_deg", "elevation range must lie in [-90, 90] with min <= max");
    s.elevation_min = std::max(s.elevation_min, -kPi / 2);
    s.elevation_max = std::min(s.elevation_max, kPi / 2);
    for (double w : s.azimuth_weights)
        if (!(w >= 0.0))
            throw ConfigError("azimuth_weights", "weights must be non-negative");
    if (!(o.alpha_grid.min > 0.0 && o.alpha_grid.min < 1.0))
        throw ConfigError("alpha_min", "must lie in (0, 1)");
    if (!(o.alpha_grid.max > 0.0 && o.alpha_grid.max < 1.0))
        throw ConfigError("alpha_max", "must lie in (0, 1)");
    if (o.alpha_grid.min > o.alpha_grid.max)
        throw ConfigError("alpha_min", "must not exceed alpha_max");

    s.validate();
    o.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig &config)
{
    const ScenarioConfig &s = config.scenario;
    const OptimizerConfig &o = config.optimizer;
    std::ostringstream os;
    os << "p_max_w = " << number(s.p_max) << '\n'
       << "noise_dbm = " << number(watts_to_dbm(s.noise_power)) << '\n'
       << "wavelength_m = " << number(s.wavelength) << '\n'
       << "surfaces = " << s.surfaces << '\n'
       << "antennas_per_surface = " << s.antennas_per_surface << '\n'
       << "mean_users = " << number(s.mean_users) << '\n'
       << "mean_eves = " << number(s.mean_eves) << '\n'
       << "d_min_m = " << number(s.d_min) << '\n'
       << "region_shape = " << (s.region.shape == DeploymentRegion::Shape::ball ? "ball" : "box") << '\n'
       << "region_radius_m = " << number(s.region.extent[0]) << '\n'
       << "alpha_min = " << number(o.alpha_grid.min) << '\n'
       << "alpha_max = " << number(o.alpha_grid.max) << '\n'
       << "alpha_step = " << number(o.alpha_grid.step) << '\n'
       << "delta = " << number(o.delta) << '\n'
       << "t1_max = " << o.t1_max << '\n'
       << "t2_max = " << o.t2_max << '\n'
       << "rho_pos = " << number(o.rho_pos) << '\n'
       << "rho_rot = " << number(o.rho_rot) << '\n'
       << "fd_step_pos = " << number(o.fd_step_pos) << '\n'
       << "fd_step_rot = " << number(o.fd_step_rot) << '\n'
       << "pattern = " << (s.pattern.kind == GainPattern::Kind::isotropic ? "iso" : "sector") << '\n'
       << "seed = " << s.seed << '\n'
       << "pose_beams = " << (o.pose_beams == PoseBeams::held ? "held" : "refreshed") << '\n'
       << "d_lo_m = " << number(s.d_lo) << '\n'
       << "d_hi_m = " << number(s.d_hi) << '\n'
       << "elevation_min_deg = " << number(s.elevation_min / kDeg) << '\n'
       << "elevation_max_deg = " << number(s.elevation_max / kDeg) << '\n'
       << "downtilt_deg = " << number(s.downtilt / kDeg) << '\n';
    if (!s.azimuth_weights.empty())
    {
        os << "azimuth_weights = ";
        for (std::size_t i = 0; i < s.azimuth_weights.size(); ++i)
            os << (i ? "," : "") << number(s.azimuth_weights[i]);
        os << '\n';
    }
    return os.str();
}

} // namespace sixdma
