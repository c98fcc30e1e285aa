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

#include <span>
#include <vector>

namespace sixdma
{

/// Transmit precoder W (N*B x K_D), artificial-noise vector (N*B) and the power split that produced them.
struct BeamformerSet
{
    Eigen::MatrixXcd transmit;
    Eigen::VectorXcd an_vector;
    double alpha = 1.0;

    double total_power() const { return transmit.squaredNorm() + an_vector.squaredNorm(); }
};

struct RateReport
{
    std::vector<double> sinr;          // per user
    std::vector<double> user_rate;     // bits/s/Hz
    std::vector<double> eve_rate;      // cooperative eavesdropping rate on each user's stream
    std::vector<double> secrecy_rate;  // max(user - eve, 0)
    double ssr = 0.0;                  // sum of clamped secrecy rates
    double raw_objective = 0.0;        // sum of unclamped differences
};

double user_sinr(const ChannelVector &h, const BeamformerSet &beams, int user, double noise_power);

/// log2(1 + sum_e |h_e w|^2 / (|h_e v|^2 + sigma_e^2)) for jointly decoding eavesdroppers.
double eve_rate(const ChannelMatrix &h_eve, const Eigen::VectorXcd &w, const Eigen::VectorXcd &an_vector,
                std::span<const double> eve_noise);

RateReport sum_secrecy_rate(const ChannelMatrix &h_users, const ChannelMatrix &h_eve, const BeamformerSet &beams,
                            std::span<const double> user_noise, std::span<const double> eve_noise);

} // namespace sixdma
