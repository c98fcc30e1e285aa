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

#include "sixdma/scene.hpp"

#include <stdexcept>

namespace sixdma
{

std::vector<double> Scene::user_noise() const
{
    std::vector<double> out;
    out.reserve(users.size());
    for (const auto &t : users)
        out.push_back(t.noise_power);
    return out;
}

std::vector<double> Scene::eve_noise() const
{
    std::vector<double> out;
    out.reserve(eves.size());
    for (const auto &t : eves)
        out.push_back(t.noise_power);
    return out;
}

std::vector<Terminal> Scene::terminals() const
{
    std::vector<Terminal> out(users);
    out.insert(out.end(), eves.begin(), eves.end());
    return out;
}

void Scene::validate() const
{
    array.validate();
    region.validate();
    if (!(wavelength > 0.0))
        throw std::invalid_argument("Wavelength must be positive.");
    if (!(p_max > 0.0))
        throw std::invalid_argument("Power budget must be positive.");
    if (!(mmse_noise > 0.0))
        throw std::invalid_argument("MMSE regularizer must be positive.");
    if (!(d_min >= 0.0))
        throw std::invalid_argument("Minimum distance must be non-negative.");
    if (users.empty())
        throw std::invalid_argument("Scene needs at least one user.");
    for (const auto &t : terminals())
        if (!(t.noise_power > 0.0))
            throw std::invalid_argument("Terminal noise power must be positive.");
}

ChannelSet scene_channels(const Scene &scene, std::span<const SurfacePose> poses)
{
    return assemble_channels(poses, scene.array, scene.terminals(), scene.wavelength);
}

RateReport evaluate_rates(const Scene &scene, std::span<const SurfacePose> poses, const BeamformerSet &beams)
{
    const ChannelSet ch = scene_channels(scene, poses);
    const auto un = scene.user_noise();
    const auto en = scene.eve_noise();
    return sum_secrecy_rate(ch.users, ch.eves, beams, un, en);
}

} // namespace sixdma
