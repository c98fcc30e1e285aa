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

#include "sixdma/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sixdma
{

namespace
{

void check_dims(Eigen::Index channel_cols, const BeamformerSet &beams)
{
    if (beams.transmit.rows() != channel_cols)
        throw std::invalid_argument("Transmit beamformer rows do not match the channel length.");
    if (beams.an_vector.size() != 0 && beams.an_vector.size() != channel_cols)
        throw std::invalid_argument("AN vector length does not match the channel length.");
}

double an_leak(const ChannelVector &h, const Eigen::VectorXcd &an)
{
    return an.size() == 0 ? 0.0 : std::norm((h * an).value());
}

} // namespace

double user_sinr(const ChannelVector &h, const BeamformerSet &beams, int user, double noise_power)
{
    check_dims(h.size(), beams);
    if (user < 0 || user >= beams.transmit.cols())
        throw std::out_of_range("User index out of range.");

    const Eigen::RowVectorXcd hw = h * beams.transmit;
    double interference = an_leak(h, beams.an_vector) + noise_power;
    for (Eigen::Index i = 0; i < hw.size(); ++i)
        if (i != user)
            interference += std::norm(hw[i]);
    return std::norm(hw[user]) / interference;
}

double eve_rate(const ChannelMatrix &h_eve, const Eigen::VectorXcd &w, const Eigen::VectorXcd &an_vector,
                std::span<const double> eve_noise)
{
    if (static_cast<Eigen::Index>(eve_noise.size()) != h_eve.rows())
        throw std::invalid_argument("One noise power per eavesdropper is required.");
    double sum = 0.0;
    for (Eigen::Index e = 0; e < h_eve.rows(); ++e)
    {
        const ChannelVector he = h_eve.row(e);
        sum += std::norm((he * w).value()) / (an_leak(he, an_vector) + eve_noise[static_cast<std::size_t>(e)]);
    }
    return std::log2(1.0 + sum);
}

RateReport sum_secrecy_rate(const ChannelMatrix &h_users, const ChannelMatrix &h_eve, const BeamformerSet &beams,
                            std::span<const double> user_noise, std::span<const double> eve_noise)
{
    check_dims(h_users.cols(), beams);
    const Eigen::Index k_d = h_users.rows();
    if (beams.transmit.cols() != k_d)
        throw std::invalid_argument("One transmit beam per user is required.");
    if (static_cast<Eigen::Index>(user_noise.size()) != k_d ||
        static_cast<Eigen::Index>(eve_noise.size()) != h_eve.rows())
        throw std::invalid_argument("Noise power count does not match the terminal count.");
    if (h_eve.rows() > 0 && h_eve.cols() != h_users.cols())
        throw std::invalid_argument("Eavesdropper channels have the wrong length.");

    const bool has_an = beams.an_vector.size() != 0;
    const Eigen::MatrixXcd g = h_users * beams.transmit;
    const Eigen::MatrixXcd ge = h_eve * beams.transmit;
    Eigen::VectorXd user_an = Eigen::VectorXd::Zero(k_d);
    Eigen::VectorXd eve_den(h_eve.rows());
    if (has_an)
        user_an = (h_users * beams.an_vector).cwiseAbs2();
    for (Eigen::Index e = 0; e < h_eve.rows(); ++e)
        eve_den[e] = eve_noise[static_cast<std::size_t>(e)] +
                     (has_an ? std::norm((h_eve.row(e) * beams.an_vector).value()) : 0.0);

    RateReport rep;
    rep.sinr.resize(static_cast<std::size_t>(k_d));
    rep.user_rate.resize(static_cast<std::size_t>(k_d));
    rep.eve_rate.resize(static_cast<std::size_t>(k_d));
    rep.secrecy_rate.resize(static_cast<std::size_t>(k_d));
    for (Eigen::Index k = 0; k < k_d; ++k)
    {
        const auto ks = static_cast<std::size_t>(k);
        double interference = user_an[k] + user_noise[ks];
        for (Eigen::Index i = 0; i < k_d; ++i)
            if (i != k)
                interference += std::norm(g(k, i));
        const double sinr = std::norm(g(k, k)) / interference;
        double leak = 0.0;
        for (Eigen::Index e = 0; e < h_eve.rows(); ++e)
            leak += std::norm(ge(e, k)) / eve_den[e];

        rep.sinr[ks] = sinr;
        rep.user_rate[ks] = std::log2(1.0 + sinr);
        rep.eve_rate[ks] = std::log2(1.0 + leak);
        const double diff = rep.user_rate[ks] - rep.eve_rate[ks];
        rep.secrecy_rate[ks] = std::max(diff, 0.0);
        rep.raw_objective += diff;
        rep.ssr += rep.secrecy_rate[ks];
    }
    return rep;
}

} // namespace sixdma
