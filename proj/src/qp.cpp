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

#include "sixdma/qp.hpp"

#include <algorithm>
#include <cmath>

namespace sixdma
{

namespace
{

constexpr int kActiveSetCap = 100;
constexpr int kBisectionCap = 200;

double feasibility_tol(const Halfspace &h, double scale)
{
    return 1e-9 * std::max(1.0, h.normal.norm() * scale + std::abs(h.offset));
}

// Orthonormal basis of span{a_i : i in working} (normals are linearly independent by construction).
int orthonormal_span(std::span<const Halfspace> hs, const std::vector<int> &working, Vec3 basis[3])
{
    int k = 0;
    for (int idx : working)
    {
        Vec3 v = hs[static_cast<std::size_t>(idx)].normal;
        for (int j = 0; j < k; ++j)
            v -= basis[j].dot(v) * basis[j];
        const double nv = v.norm();
        if (nv > 1e-12 * hs[static_cast<std::size_t>(idx)].normal.norm())
            basis[k++] = v / nv;
    }
    return k;
}

} // namespace

Vec3 project_by_enumeration(const Vec3 &target, std::span<const Halfspace> halfspaces, double tol)
{
    const int m = static_cast<int>(halfspaces.size());
    const double scale = 1.0 + target.norm();
    bool found = false;
    Vec3 best = target;
    double best_dist = 0.0;

    auto consider = [&](const std::vector<int> &subset) {
        Vec3 x = target;
        if (!subset.empty())
        {
            const auto k = static_cast<Eigen::Index>(subset.size());
            Eigen::MatrixXd a(k, 3);
            Eigen::VectorXd rhs(k);
            for (Eigen::Index i = 0; i < k; ++i)
            {
                const Halfspace &h = halfspaces[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])];
                a.row(i) = h.normal.transpose();
                rhs[i] = h.offset - h.normal.dot(target);
            }
            Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
            if (cod.rank() < k)
                return; // dependent normals: covered by a smaller subset
            x = target + cod.solve(rhs);
        }
        for (const auto &h : halfspaces)
            if (h.residual(x) > tol * std::max(1.0, h.normal.norm() * scale))
                return;
        const double dist = (x - target).squaredNorm();
        if (!found || dist < best_dist)
        {
            found = true;
            best = x;
            best_dist = dist;
        }
    };

    std::vector<int> subset;
    consider(subset);
    for (int i = 0; i < m; ++i)
    {
        consider({i});
        for (int j = i + 1; j < m; ++j)
        {
            consider({i, j});
            for (int l = j + 1; l < m; ++l)
                consider({i, j, l});
        }
    }
    if (!found)
        throw QpError("No feasible vertex, edge or face candidate; the halfspaces look infeasible.");
    return best;
}

Vec3 project_onto_polytope(const Vec3 &target, const Vec3 &start, std::span<const Halfspace> halfspaces)
{
    const double scale = 1.0 + start.norm() + target.norm();
    for (const auto &h : halfspaces)
        if (h.residual(start) > feasibility_tol(h, scale))
            throw QpError("Proximal subproblem is infeasible at its expansion point.");

    Vec3 x = start;
    std::vector<int> working;
    working.reserve(3);

    for (int iter = 0; iter < kActiveSetCap; ++iter)
    {
        const Vec3 r = target - x;
        Vec3 basis[3];
        const int k = orthonormal_span(halfspaces, working, basis);
        Vec3 d = r;
        for (int j = 0; j < k; ++j)
            d -= basis[j].dot(r) * basis[j];

        if (d.norm() <= 1e-13 * scale)
        {
            if (working.empty())
                return x;
            // Multipliers of x - target + A_W^T lambda = 0.
            const auto w = static_cast<Eigen::Index>(working.size());
            Eigen::MatrixXd a(w, 3);
            for (Eigen::Index i = 0; i < w; ++i)
                a.row(i) = halfspaces[static_cast<std::size_t>(working[static_cast<std::size_t>(i)])].normal.transpose();
            const Eigen::VectorXd lambda = (a * a.transpose()).ldlt().solve(a * r);
            Eigen::Index worst = 0;
            const double lmin = lambda.minCoeff(&worst);
            if (lmin >= -1e-12 * scale)
                return x;
            working.erase(working.begin() + worst);
            continue;
        }

        double step = 1.0;
        int blocking = -1;
        for (int i = 0; i < static_cast<int>(halfspaces.size()); ++i)
        {
            if (std::find(working.begin(), working.end(), i) != working.end())
                continue;
            const Halfspace &h = halfspaces[static_cast<std::size_t>(i)];
            const double ad = h.normal.dot(d);
            if (ad <= 1e-15 * h.normal.norm() * d.norm())
                continue;
            const double t = std::max(0.0, -h.residual(x) / ad);
            if (t < step)
            {
                step = t;
                blocking = i;
            }
        }
        x += step * d;
        if (blocking >= 0)
            working.push_back(blocking);
    }
    // Degenerate or nearly parallel constraints can make the working set cycle; in three
    // dimensions the exact answer is still cheap to find by enumerating active sets.
    return project_by_enumeration(target, halfspaces);
}

Vec3 solve_proximal_qp(const QpProblem &problem)
{
    if (!(problem.rho > 0.0))
        throw QpError("Proximal weight must be positive.");
    const Vec3 target = problem.center + problem.gradient / problem.rho;

    std::vector<Halfspace> hs = problem.halfspaces;
    const bool ball = problem.region && problem.region->shape == DeploymentRegion::Shape::ball;
    if (problem.region && !ball)
    {
        for (int k = 0; k < 3; ++k)
        {
            const double w = problem.region->extent[k];
            hs.push_back({Vec3::Unit(k), w});
            hs.push_back({-Vec3::Unit(k), w});
        }
    }

    const Vec3 x = project_onto_polytope(target, problem.center, hs);
    if (!ball)
        return x;

    const double radius = problem.region->extent[0];
    if (x.norm() <= radius)
        return x;
    if (problem.center.norm() > radius * (1.0 + 1e-12))
        throw QpError("Proximal subproblem center lies outside the deployment region.");

    // Stationary point of the Lagrangian for multiplier mu is Proj_P(s * target), s = 1 / (1 + 2 mu),
    // and its norm is non-decreasing in s; bisect s so the norm meets the radius from inside.
    double lo = 0.0, hi = 1.0;
    Vec3 x_lo = project_onto_polytope(Vec3::Zero(), problem.center, hs);
    if (x_lo.norm() > radius)
        x_lo = problem.center; // only reachable through rounding, center is feasible
    for (int it = 0; it < kBisectionCap && hi - lo > 1e-16; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        const Vec3 xm = project_onto_polytope(mid * target, problem.center, hs);
        if (xm.norm() <= radius)
        {
            lo = mid;
            x_lo = xm;
        }
        else
        {
            hi = mid;
        }
    }
    return x_lo;
}

} // namespace sixdma
