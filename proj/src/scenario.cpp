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

#include "sixdma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sixdma
{

std::string_view to_string(SchemeKind kind)
{
    switch (kind)
    {
    case SchemeKind::proposed:
        return "proposed";
    case SchemeKind::fpa:
        return "fpa";
    case SchemeKind::circular:
        return "circular";
    case SchemeKind::rotation_only:
        return "rotation_only";
    }
    return "unknown";
}

SchemeKind parse_scheme(std::string_view name)
{
    for (auto k : {SchemeKind::proposed, SchemeKind::fpa, SchemeKind::circular, SchemeKind::rotation_only})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("Unknown scheme '" + std::string(name) +
                                "' (expected proposed, fpa, circular or rotation_only).");
}

void ScenarioConfig::validate() const
{
    if (!(mean_users > 0.0) || !(mean_eves > 0.0))
        throw std::invalid_argument("Terminal means must be positive.");
    if (!(d_lo > 0.0 && d_lo < d_hi))
        throw std::invalid_argument("Distance range must satisfy 0 < d_lo < d_hi.");
    if (!(elevation_min <= elevation_max && elevation_min >= -kPi / 2 && elevation_max <= kPi / 2))
        throw std::invalid_argument("Elevation range must lie in [-pi/2, pi/2] with min <= max.");
    for (double w : azimuth_weights)
        if (!(w >= 0.0))
            throw std::invalid_argument("Azimuth intensity weights must be non-negative.");
    if (!azimuth_weights.empty() && !(std::accumulate(azimuth_weights.begin(), azimuth_weights.end(), 0.0) > 0.0))
        throw std::invalid_argument("Azimuth intensity weights must not all be zero.");
    if (!(wavelength > 0.0) || !(p_max > 0.0) || !(noise_power > 0.0))
        throw std::invalid_argument("Wavelength, power budget and noise power must be positive.");
    if (surfaces < 1 || antennas_per_surface < 1)
        throw std::invalid_argument("Surface and antenna counts must be positive.");
    if (!(d_min >= 0.0))
        throw std::invalid_argument("Minimum distance must be non-negative.");
    region.validate();
}

ArraySpec ScenarioConfig::array() const
{
    return ArraySpec::upa(antennas_per_surface, 0.5 * wavelength, pattern);
}

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t kind, std::uint64_t index)
{
    return splitmix64(splitmix64(seed ^ kind) ^ index);
}

// 53-bit uniform in [0, 1), independent of the standard library's distribution implementations.
double uniform01(std::mt19937_64 &rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double sample_azimuth(const std::vector<double> &weights, double u)
{
    if (weights.empty())
        return -kPi + kTwoPi * u;
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    const double width = kTwoPi / static_cast<double>(weights.size());
    double acc = 0.0;
    for (std::size_t s = 0; s < weights.size(); ++s)
    {
        const double p = weights[s] / total;
        if (u < acc + p || s + 1 == weights.size())
        {
            const double frac = p > 0.0 ? std::clamp((u - acc) / p, 0.0, 1.0) : 0.0;
            return -kPi + width * (static_cast<double>(s) + frac);
        }
        acc += p;
    }
    return kPi;
}

Terminal draw_terminal(const ScenarioConfig &c, std::mt19937_64 &rng, TerminalKind kind)
{
    const double u_r = uniform01(rng), u_el = uniform01(rng), u_az = uniform01(rng);
    const double lo3 = c.d_lo * c.d_lo * c.d_lo, hi3 = c.d_hi * c.d_hi * c.d_hi;
    const double r = std::clamp(std::cbrt(lo3 + u_r * (hi3 - lo3)), c.d_lo, c.d_hi);
    const double s_lo = std::sin(c.elevation_min), s_hi = std::sin(c.elevation_max);
    const double el = std::asin(std::clamp(s_lo + u_el * (s_hi - s_lo), -1.0, 1.0));
    const double az = sample_azimuth(c.azimuth_weights, u_az);
    const double ce = std::cos(el);
    Terminal t;
    t.position = r * Vec3(ce * std::cos(az), ce * std::sin(az), std::sin(el));
    t.noise_power = c.noise_power;
    t.kind = kind;
    return t;
}

} // namespace

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial)
{
    return splitmix64(splitmix64(base_seed) ^ trial);
}

int poisson_quantile(double mean, double u)
{
    if (!(mean > 0.0))
        throw std::invalid_argument("Poisson mean must be positive.");
    double pmf = std::exp(-mean);
    double cdf = pmf;
    int k = 0;
    while (cdf <= u && k < 100000)
    {
        ++k;
        pmf *= mean / k;
        cdf += pmf;
        if (pmf == 0.0 && cdf <= u) // u beyond the representable tail
            break;
    }
    return k;
}

TerminalDraw generate_terminals(const ScenarioConfig &config, std::uint64_t trial)
{
    config.validate();
    const std::uint64_t seed = trial_seed(config.seed, trial);
    std::mt19937_64 counts(stream_seed(seed, 0, 0));
    const double u_users = uniform01(counts);
    const double u_eves = uniform01(counts);

    // Users conditioned on K_D >= 1: invert the CDF on (F(0), 1).
    const double f0 = std::exp(-config.mean_users);
    const int k_d = std::max(1, poisson_quantile(config.mean_users, f0 + u_users * (1.0 - f0)));
    const int k_e = poisson_quantile(config.mean_eves, u_eves);

    TerminalDraw draw;
    for (int k = 0; k < k_d; ++k)
    {
        std::mt19937_64 rng(stream_seed(seed, 1, static_cast<std::uint64_t>(k)));
        draw.users.push_back(draw_terminal(config, rng, TerminalKind::user));
    }
    for (int k = 0; k < k_e; ++k)
    {
        std::mt19937_64 rng(stream_seed(seed, 2, static_cast<std::uint64_t>(k)));
        draw.eves.push_back(draw_terminal(config, rng, TerminalKind::eavesdropper));
    }
    return draw;
}

std::vector<SurfacePose> initial_poses(const ScenarioConfig &config)
{
    if (config.surfaces < 1)
        throw std::invalid_argument("At least one surface is required.");
    const double radius = 0.7 * config.region.inner_radius();
    const int b = config.surfaces;
    if (b > 1)
    {
        const double chord = 2.0 * radius * std::sin(kPi / b);
        if (chord < config.d_min)
        {
            std::ostringstream msg;
            msg << "Cannot place " << b << " surfaces on a ring of radius " << radius << " m: neighbour spacing "
                << chord << " m is below d_min = " << config.d_min << " m.";
            throw std::invalid_argument(msg.str());
        }
    }

    std::vector<SurfacePose> poses;
    poses.reserve(static_cast<std::size_t>(b));
    for (int i = 0; i < b; ++i)
    {
        const double az = kTwoPi * i / b;
        // Ry(pi/2 + tilt) turns local +z to (cos tilt, 0, -sin tilt); Rz(az) then points it outward.
        poses.emplace_back(Vec3(radius * std::cos(az), radius * std::sin(az), 0.0),
                           Vec3(0.0, 0.5 * kPi + config.downtilt, az));
    }
    return poses;
}

BaselinePolicy baseline_poses(SchemeKind kind, const ScenarioConfig &config)
{
    BaselinePolicy policy{PoseFreedom::full, initial_poses(config)};
    switch (kind)
    {
    case SchemeKind::proposed:
        policy.freedom = PoseFreedom::full;
        break;
    case SchemeKind::fpa:
        policy.freedom = PoseFreedom::fixed;
        break;
    case SchemeKind::circular:
        policy.freedom = PoseFreedom::circular;
        break;
    case SchemeKind::rotation_only:
        policy.freedom = PoseFreedom::rotation_only;
        break;
    }
    return policy;
}

Scene make_scene(const ScenarioConfig &config, const TerminalDraw &draw)
{
    config.validate();
    Scene scene;
    scene.array = config.array();
    scene.wavelength = config.wavelength;
    scene.users = draw.users;
    scene.eves = draw.eves;
    scene.p_max = config.p_max;
    scene.mmse_noise = config.noise_power;
    scene.region = config.region;
    scene.d_min = config.d_min;
    return scene;
}

} // namespace sixdma
