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

#include "sixdma/scene.hpp"
#include "sixdma/secrecy.hpp"

#include <span>
#include <vector>

namespace sixdma
{

/// Share alpha of the budget goes to the data streams, split proportionally to ||h_k||^2.
struct PowerAllocation
{
    double alpha = 1.0;
    std::vector<double> per_user_power;
    double an_power = 0.0;
};

/// Orthonormal basis of the right null space of a channel matrix.
struct NullSpaceBasis
{
    Eigen::MatrixXcd columns;
    int rank = 0;

    int dimension() const { return static_cast<int>(columns.cols()); }
};

struct DominantEigenpair
{
    Eigen::VectorXcd vector;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct AnBeam
{
    Eigen::VectorXcd an_vector;
    bool null_space_empty = false; // set when eavesdroppers exist but no null space is left
};

/// Discrete set alpha_min, alpha_min + step, ..., alpha_max.
struct AlphaGrid
{
    double min = 0.5;
    double step = 0.05;
    double max = 0.95;

    std::vector<double> values() const;
    void validate() const;
};

struct PowerSplitResult
{
    BeamformerSet beams;
    RateReport report;
    double objective = 0.0;            // raw secrecy objective of the chosen point
    std::vector<double> grid_objective; // one entry per grid value
    double max_total_power = 0.0;       // over all candidates evaluated
    bool null_space_empty = false;
};

/// Throws std::invalid_argument for an all-zero channel matrix or alpha outside (0, 1].
PowerAllocation allocate_user_powers(const ChannelMatrix &h, double alpha, double p_max);

/// Regularized channel inverse (H^H P H + s2 I)^-1 H^H, each column rescaled to ||w_k||^2 = P_k.
Eigen::MatrixXcd mmse_beamformer(const ChannelMatrix &h, const PowerAllocation &alloc, double noise_power);

NullSpaceBasis null_space_basis(const ChannelMatrix &h);

/// Power iteration for a Hermitian positive semidefinite matrix given as B^H B, started from the
/// normalized all-ones vector. A numerically zero B yields e_1.
DominantEigenpair dominant_eigenvector(const Eigen::MatrixXcd &b, double tol = 1e-12, int max_iterations = 10000);

/// Null-space artificial noise steered at the dominant leakage direction of the eavesdroppers.
AnBeam an_beamformer(const ChannelMatrix &h, const ChannelMatrix &h_eve, double alpha, double p_max);

/// Same AN beam through the projector I - H^H (H H^H)^-1 H instead of an SVD: the dominant
/// leakage direction is P H_e^H y with y the top eigenvector of H_e P H_e^H (K_E x K_E). Agrees with
/// an_beamformer up to a global phase whenever H has full row rank; falls back to it otherwise.
AnBeam an_beamformer_projected(const ChannelMatrix &h, const ChannelMatrix &h_eve, double alpha, double p_max);

/// Transmit and AN beams for one alpha, using the projected AN construction.
BeamformerSet beams_for_alpha(const ChannelMatrix &h, const ChannelMatrix &h_eve, double alpha, double p_max,
                              double mmse_noise);

PowerSplitResult power_split_search(const ChannelMatrix &h, const ChannelMatrix &h_eve,
                                    std::span<const double> user_noise, std::span<const double> eve_noise,
                                    double p_max, double mmse_noise, const AlphaGrid &grid);

PowerSplitResult power_split_search(const Scene &scene, std::span<const SurfacePose> poses, const AlphaGrid &grid);

} // namespace sixdma
