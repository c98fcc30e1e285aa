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

#include "sixdma/psca.hpp"
#include "sixdma/scene.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sixdma
{

enum class SchemeKind
{
    proposed,
    fpa,
    circular,
    rotation_only
};

std::string_view to_string(SchemeKind kind);
/// Accepts proposed | fpa | circular | rotation_only. Throws std::invalid_argument otherwise.
SchemeKind parse_scheme(std::string_view name);

struct ScenarioConfig
{
    double mean_users = 7.0;
    double mean_eves = 1.0;
    double d_lo = 20.0; // m, terminal distance from the CPU
    double d_hi = 200.0;
    // rad; terminals below a mast-mounted BS head
    double elevation_min = -75.0 * kPi / 180.0;
    double elevation_max = -5.0 * kPi / 180.0;
    // Relative terminal intensity over equal azimuth sectors starting at azimuth -pi. Empty = uniform.
    std::vector<double> azimuth_weights;

    double wavelength = 0.125;
    double p_max = 10.0;
    double noise_power = 1e-12; // W
    int surfaces = 8;
    int antennas_per_surface = 4;
    DeploymentRegion region = DeploymentRegion::ball(1.0);
    double d_min = default_min_distance(0.125);
    GainPattern pattern;
    double downtilt = 15.0 * kPi / 180.0;
    std::uint64_t seed = 1;

    void validate() const;
    ArraySpec array() const;
};

struct TerminalDraw
{
    std::vector<Terminal> users;
    std::vector<Terminal> eves;
};

/// Poisson terminal counts (users conditioned on at least one) with positions drawn from a
/// piecewise-constant intensity over the spherical shell d_lo..d_hi and the elevation band.
/// Deterministic in (seed, trial); counts and per-terminal positions use separate streams, so a
/// larger mean only appends terminals to the draw of a smaller one.
TerminalDraw generate_terminals(const ScenarioConfig &config, std::uint64_t trial);

/// Surfaces evenly spaced in azimuth on a horizontal ring of radius 0.7 x the region's inner radius,
/// facing radially outward with the configured downtilt. Throws std::invalid_argument when the
/// ring cannot honor d_min.
std::vector<SurfacePose> initial_poses(const ScenarioConfig &config);

struct BaselinePolicy
{
    PoseFreedom freedom;
    std::vector<SurfacePose> initial;
};

BaselinePolicy baseline_poses(SchemeKind kind, const ScenarioConfig &config);

Scene make_scene(const ScenarioConfig &config, const TerminalDraw &draw);

/// Seed of the terminal streams for one trial of a run seeded with `base_seed`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial);

/// Poisson quantile: smallest k with CDF(k) > u, for u in [0, 1).
int poisson_quantile(double mean, double u);

} // namespace sixdma
