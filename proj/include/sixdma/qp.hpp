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

#include "sixdma/geometry.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace sixdma
{

class QpError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// maximize g^T (x - x0) - rho/2 ||x - x0||^2  s.t.  a_i^T x <= b_i,  x in region.
/// The center x0 must be feasible.
struct QpProblem
{
    Vec3 gradient = Vec3::Zero();
    Vec3 center = Vec3::Zero();
    double rho = 1.0;
    std::vector<Halfspace> halfspaces;
    std::optional<DeploymentRegion> region;

    double objective(const Vec3 &x) const
    {
        const Vec3 d = x - center;
        return gradient.dot(d) - 0.5 * rho * d.squaredNorm();
    }
};

/// Euclidean projection of `target` onto {x : a_i^T x <= b_i} by a primal active-set method
/// started at the feasible point `start`. Throws QpError if `start` is infeasible. If the working
/// set cycles past the iteration cap the result comes from project_by_enumeration instead.
Vec3 project_onto_polytope(const Vec3 &target, const Vec3 &start, std::span<const Halfspace> halfspaces);

/// Projection by enumerating every candidate active set of at most three halfspaces: the
/// nearest feasible point among the affine projections. O(m^3); used when the active-set
/// iteration cycles.
Vec3 project_by_enumeration(const Vec3 &target, std::span<const Halfspace> halfspaces, double tol = 1e-12);

/// Exact maximizer of the proximal subproblem, i.e. the projection of x0 + g / rho onto the
/// feasible set. Box regions become six extra halfspaces; a ball region is handled through its
/// scalar Lagrange multiplier, bisected until the projection lands on the sphere.
Vec3 solve_proximal_qp(const QpProblem &problem);

} // namespace sixdma
