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

#include "sixdma/channel.hpp"
#include "sixdma/secrecy.hpp"

#include <span>
#include <vector>

namespace sixdma
{

/// Minimum center separation for a 2x2 half-wavelength array: diagonal plus a quarter wavelength.
inline double default_min_distance(double wavelength)
{
    return 0.70710678118654752 * wavelength + 0.25 * wavelength;
}

/// Everything about one deployment except the surface poses and beamformers.
struct Scene
{
    ArraySpec array;
    double wavelength = 0.125;
    std::vector<Terminal> users;
    std::vector<Terminal> eves;
    double p_max = 10.0;
    double mmse_noise = 1e-12; // regularizer of the MMSE precoder
    DeploymentRegion region = DeploymentRegion::ball(1.0);
    double d_min = default_min_distance(0.125);

    std::vector<double> user_noise() const;
    std::vector<double> eve_noise() const;
    // Users first, then eavesdroppers.
    std::vector<Terminal> terminals() const;
    void validate() const;
};

ChannelSet scene_channels(const Scene &scene, std::span<const SurfacePose> poses);

RateReport evaluate_rates(const Scene &scene, std::span<const SurfacePose> poses, const BeamformerSet &beams);

} // namespace sixdma
