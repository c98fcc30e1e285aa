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

#include "sixdma/beamform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sixdma
{

std::vector<double> AlphaGrid::values() const
{
    validate();
    std::vector<double> out;
    for (int i = 0;; ++i)
    {
        const double a = min + i * step;
        if (a > max + 1e-12)
            break;
        out.push_back(std::min(a, max));
    }
    return out;
}

void AlphaGrid::validate() const
{
    if (!(min > 0.0 && max < 1.0 && min <= max))
        throw std::invalid_argument("Alpha grid bounds must satisfy 0 < alpha_min <= alpha_max < 1.");
    if (!(step > 0.0))
        throw std::invalid_argument("Alpha grid step must be positive.");
}

PowerAllocation allocate_user_powers(const ChannelMatrix &h, double alpha, double p_max)
{
    if (h.rows() < 1)
        throw std::invalid_argument("Power allocation needs at least one user.");
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("Power split factor must lie in (0, 1].");
    const Eigen::VectorXd norms = h.rowwise().squaredNorm();
    const double total = norms.sum();
    if (!(total > 0.0))
        throw std::invalid_argument("Cannot split power over an all-zero channel matrix.");

    PowerAllocation alloc;
    alloc.alpha = alpha;
    alloc.an_power = (1.0 - alpha) * p_max;
    alloc.per_user_power.resize(static_cast<std::size_t>(h.rows()));
    for (Eigen::Index k = 0; k < h.rows(); ++k)
        alloc.per_user_power[static_cast<std::size_t>(k)] = alpha * p_max * norms[k] / total;
    return alloc;
}

Eigen::MatrixXcd mmse_beamformer(const ChannelMatrix &h, const PowerAllocation &alloc, double noise_power)
{
    const Eigen::Index k_d = h.rows();
    if (static_cast<Eigen::Index>(alloc.per_user_power.size()) != k_d)
        throw std::invalid_argument("Power allocation does not match the number of users.");
    if (!(noise_power > 0.0))
        throw std::invalid_argument("MMSE regularizer must be positive.");

    // (H^H P H + s2 I)^-1 H^H = H^H (P H H^H + s2 I)^-1, so only a K_D x K_D system is solved.
    const Eigen::Map<const Eigen::VectorXd> p(alloc.per_user_power.data(), k_d);
    Eigen::MatrixXcd gram = p.asDiagonal() * (h * h.adjoint());
    gram.diagonal().array() += noise_power;
    Eigen::MatrixXcd w = h.adjoint() * gram.partialPivLu().inverse();

    for (Eigen::Index k = 0; k < k_d; ++k)
    {
        const double norm = w.col(k).norm();
        const double pk = p[k];
        if (norm > 0.0 && pk > 0.0)
            w.col(k) *= std::sqrt(pk) / norm;
        else
            w.col(k).setZero();
    }
    return w;
}

NullSpaceBasis null_space_basis(const ChannelMatrix &h)
{
    const Eigen::Index n = h.cols();
    NullSpaceBasis out;
    if (h.rows() == 0)
    {
        out.columns = Eigen::MatrixXcd::Identity(n, n);
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h, Eigen::ComputeFullV);
    const auto &s = svd.singularValues();
    const double tol = static_cast<double>(std::max(h.rows(), n)) * std::numeric_limits<double>::epsilon() *
                       (s.size() > 0 ? s[0] : 0.0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s[i] > tol)
            ++rank;
    out.rank = rank;
    out.columns = svd.matrixV().rightCols(n - rank);
    return out;
}

DominantEigenpair dominant_eigenvector(const Eigen::MatrixXcd &b, double tol, int max_iterations)
{
    const Eigen::Index m = b.cols();
    DominantEigenpair out;
    if (m == 0)
        return out;

    auto apply = [&](const Eigen::VectorXcd &z) -> Eigen::VectorXcd { return b.adjoint() * (b * z); };

    Eigen::VectorXcd z = Eigen::VectorXcd::Ones(m) / std::sqrt(static_cast<double>(m));
    Eigen::VectorXcd y = apply(z);
    // A start vector inside the kernel of a nonzero matrix gets replaced by the first unit vector that is not.
    for (Eigen::Index i = 0; y.norm() == 0.0 && i < m; ++i)
    {
        z = Eigen::VectorXcd::Unit(m, i);
        y = apply(z);
    }
    if (y.norm() == 0.0)
    {
        out.vector = Eigen::VectorXcd::Unit(m, 0);
        out.converged = true;
        return out;
    }

    for (int it = 1; it <= max_iterations; ++it)
    {
        Eigen::VectorXcd next = y / y.norm();
        const double change = (next - z).norm();
        z = std::move(next);
        y = apply(z);
        out.iterations = it;
        if (change <= tol)
        {
            out.converged = true;
            break;
        }
    }
    out.vector = z;
    out.value = (b * z).squaredNorm();
    return out;
}

AnBeam an_beamformer(const ChannelMatrix &h, const ChannelMatrix &h_eve, double alpha, double p_max)
{
    const Eigen::Index n = h.cols();
    AnBeam out;
    out.an_vector = Eigen::VectorXcd::Zero(n);
    if (h_eve.rows() == 0)
        return out;

    const NullSpaceBasis basis = null_space_basis(h);
    if (basis.dimension() == 0)
    {
        out.null_space_empty = true;
        return out;
    }

    const Eigen::MatrixXcd leak = h_eve * basis.columns;
    Eigen::VectorXcd z;
    if (leak.norm() <= 1e-12 * h_eve.norm())
        z = Eigen::VectorXcd::Unit(basis.dimension(), 0);
    else
        z = dominant_eigenvector(leak).vector;
    out.an_vector = std::sqrt((1.0 - alpha) * p_max) * (basis.columns * z);
    return out;
}

AnBeam an_beamformer_projected(const ChannelMatrix &h, const ChannelMatrix &h_eve, double alpha, double p_max)
{
    const Eigen::Index n = h.cols();
    AnBeam out;
    out.an_vector = Eigen::VectorXcd::Zero(n);
    if (h_eve.rows() == 0)
        return out;
    if (h.rows() >= n)
        return an_beamformer(h, h_eve, alpha, p_max);

    const Eigen::MatrixXcd gram = h * h.adjoint();
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
    // Near-singular Gram matrix: leave the rank decision to the SVD path.
    const double cond_floor = 1e-10 * gram.diagonal().real().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().real().minCoeff() > cond_floor))
        return an_beamformer(h, h_eve, alpha, p_max);

    // Rows of h_eve projected onto the null space of h.
    const Eigen::MatrixXcd he_h = h_eve.adjoint();
    const Eigen::MatrixXcd proj = he_h - h.adjoint() * ldlt.solve(h * he_h);
    if (proj.norm() <= 1e-12 * h_eve.norm())
        return an_beamformer(h, h_eve, alpha, p_max);

    Eigen::VectorXcd dir;
    if (h_eve.rows() == 1)
        dir = proj.col(0);
    else
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(proj.adjoint() * proj);
        dir = proj * eig.eigenvectors().col(eig.eigenvalues().size() - 1);
    }
    out.an_vector = std::sqrt((1.0 - alpha) * p_max) * dir / dir.norm();
    return out;
}

BeamformerSet beams_for_alpha(const ChannelMatrix &h, const ChannelMatrix &h_eve, double alpha, double p_max,
                              double mmse_noise)
{
    BeamformerSet beams;
    beams.alpha = alpha;
    beams.transmit = mmse_beamformer(h, allocate_user_powers(h, alpha, p_max), mmse_noise);
    beams.an_vector = an_beamformer_projected(h, h_eve, alpha, p_max).an_vector;
    return beams;
}

PowerSplitResult power_split_search(const ChannelMatrix &h, const ChannelMatrix &h_eve,
                                    std::span<const double> user_noise, std::span<const double> eve_noise,
                                    double p_max, double mmse_noise, const AlphaGrid &grid)
{
    const auto alphas = grid.values();

    // The AN direction does not depend on alpha; only its power does.
    const AnBeam unit_an = an_beamformer(h, h_eve, 0.0, 1.0);

    PowerSplitResult best;
    best.objective = -std::numeric_limits<double>::infinity();
    best.null_space_empty = unit_an.null_space_empty;
    best.grid_objective.reserve(alphas.size());
    for (double alpha : alphas)
    {
        BeamformerSet beams;
        beams.alpha = alpha;
        beams.transmit = mmse_beamformer(h, allocate_user_powers(h, alpha, p_max), mmse_noise);
        beams.an_vector = std::sqrt((1.0 - alpha) * p_max) * unit_an.an_vector;
        best.max_total_power = std::max(best.max_total_power, beams.total_power());
        RateReport rep = sum_secrecy_rate(h, h_eve, beams, user_noise, eve_noise);
        best.grid_objective.push_back(rep.raw_objective);
        if (rep.raw_objective > best.objective)
        {
            best.objective = rep.raw_objective;
            best.beams = std::move(beams);
            best.report = std::move(rep);
        }
    }
    if (best.beams.transmit.size() == 0)
        throw std::runtime_error("Alpha search produced no finite objective.");
    return best;
}

PowerSplitResult power_split_search(const Scene &scene, std::span<const SurfacePose> poses, const AlphaGrid &grid)
{
    const ChannelSet ch = scene_channels(scene, poses);
    const auto un = scene.user_noise();
    const auto en = scene.eve_noise();
    return power_split_search(ch.users, ch.eves, un, en, scene.p_max, scene.mmse_noise, grid);
}

} // namespace sixdma
