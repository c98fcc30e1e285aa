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
#include "sixdma/scenario.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace sixdma
{

/// Invalid or missing configuration entry. key() names the offending key.
class ConfigError : public std::runtime_error
{
public:
    ConfigError(std::string key, const std::string &message)
        : std::runtime_error("config key '" + key + "': " + message), key_(std::move(key))
    {
    }
    const std::string &key() const { return key_; }

private:
    std::string key_;
};

struct ExperimentConfig
{
    ScenarioConfig scenario;
    OptimizerConfig optimizer;
};

/// Parses the flat "key = value" format. '#' starts a comment; blank lines are ignored.
/// Required keys: p_max_w, noise_dbm, wavelength_m, surfaces, antennas_per_surface, mean_users,
/// mean_eves, seed. Everything else falls back to the defaults of ScenarioConfig / OptimizerConfig.
/// Unknown keys, duplicates and malformed values raise ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string &path);

/// Canonical text form; parse_config(format_config(c)) reproduces c.
std::string format_config(const ExperimentConfig &config);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

} // namespace sixdma
