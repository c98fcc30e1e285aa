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

#include "sixdma/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace sixdma
{

double wrap_angle(double radians)
{
    double w = std::fmod(radians, kTwoPi);
    if (w < 0.0)
        w += kTwoPi;
    if (w >= kTwoPi) // fmod + 2pi can round up to exactly 2pi
        w = 0.0;
    return w;
}

Vec3 wrap_angles(const Vec3 &radians)
{
    return {wrap_angle(radians[0]), wrap_angle(radians[1]), wrap_angle(radians[2])};
}

GainPattern GainPattern::isotropic()
{
    GainPattern p;
    p.kind = Kind::isotropic;
    p.max_gain_dbi = 0.0;
    return p;
}

GainPattern GainPattern::sectored(double max_gain_dbi, double theta_3db_deg, double phi_3db_deg,
                                  double front_to_back_db)
{
    if (theta_3db_deg <= 0.0 || phi_3db_deg <= 0.0 || front_to_back_db < 0.0)
        throw std::invalid_argument("Sectored pattern needs positive beamwidths and a non-negative front-to-back ratio.");
    GainPattern p;
    p.kind = Kind::sectored;
    p.max_gain_dbi = max_gain_dbi;
    p.theta_3db = theta_3db_deg * kPi / 180.0;
    p.phi_3db = phi_3db_deg * kPi / 180.0;
    p.front_to_back_db = front_to_back_db;
    return p;
}

void ArraySpec::validate() const
{
    if (local_positions.empty())
        throw std::invalid_argument("ArraySpec needs at least one antenna.");
    if (std::abs(local_normal.norm() - 1.0) > 1e-12)
        throw std::invalid_argument("ArraySpec local_normal must be a unit vector.");

    Vec3 mean = Vec3::Zero();
    double scale = 0.0;
    for (const auto &r : local_positions)
    {
        mean += r;
        scale = std::max(scale, r.norm());
    }
    mean /= static_cast<double>(local_positions.size());
    const double tol = 1e-12 * std::max(1.0, scale);
    if (mean.norm() > tol)
        throw std::invalid_argument("ArraySpec local_positions must have zero mean.");
    for (const auto &r : local_positions)
        if (std::abs(r.dot(local_normal)) > tol)
            throw std::invalid_argument("ArraySpec local_positions must lie in the plane orthogonal to local_normal.");
}

ArraySpec ArraySpec::upa(int antenna_count, double spacing, GainPattern pattern)
{
    if (antenna_count < 1)
        throw std::invalid_argument("UPA needs at least one antenna.");
    if (spacing <= 0.0)
        throw std::invalid_argument("UPA spacing must be positive.");

    int rows = 1;
    for (int r = 1; r * r <= antenna_count; ++r)
        if (antenna_count % r == 0)
            rows = r;
    const int cols = antenna_count / rows;

    ArraySpec spec;
    spec.pattern = pattern;
    spec.local_normal = Vec3::UnitZ();
    spec.local_positions.reserve(static_cast<std::size_t>(antenna_count));
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            spec.local_positions.emplace_back((c - 0.5 * (cols - 1)) * spacing, (r - 0.5 * (rows - 1)) * spacing, 0.0);
    return spec;
}

DeploymentRegion DeploymentRegion::ball(double radius)
{
    DeploymentRegion r;
    r.shape = Shape::ball;
    r.extent = Vec3::Constant(radius);
    r.validate();
    return r;
}

DeploymentRegion DeploymentRegion::box(const Vec3 &half_widths)
{
    DeploymentRegion r;
    r.shape = Shape::box;
    r.extent = half_widths;
    r.validate();
    return r;
}

double DeploymentRegion::excess(const Vec3 &q) const
{
    if (shape == Shape::ball)
        return q.norm() - extent[0];
    return (q.cwiseAbs() - extent).maxCoeff();
}

double DeploymentRegion::inner_radius() const
{
    return shape == Shape::ball ? extent[0] : extent.minCoeff();
}

void DeploymentRegion::validate() const
{
    const bool ok = shape == Shape::ball ? extent[0] > 0.0 : (extent.array() > 0.0).all();
    if (!ok)
        throw std::invalid_argument("DeploymentRegion extent must be strictly positive.");
}

bool ConstraintReport::feasible(double tol) const
{
    return max_violation() <= tol;
}

double ConstraintReport::max_violation() const
{
    double v = 0.0;
    for (const auto &p : min_distance)
        v = std::max(v, -p.value);
    for (const auto &p : reflection)
        v = std::max(v, p.value);
    for (double b : blockage)
        v = std::max(v, -b);
    for (double e : region_excess)
        v = std::max(v, e);
    return v;
}

namespace
{

Mat3 rot_x(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << 1, 0, 0, 0, c, -s, 0, s, c;
    return m;
}

Mat3 rot_y(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, 0, s, 0, 1, 0, -s, 0, c;
    return m;
}

Mat3 rot_z(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, -s, 0, s, c, 0, 0, 0, 1;
    return m;
}

Mat3 drot_x(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << 0, 0, 0, 0, -s, -c, 0, c, -s;
    return m;
}

Mat3 drot_y(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << -s, 0, c, 0, 0, 0, -c, 0, -s;
    return m;
}

Mat3 drot_z(double a)
{
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << -s, -c, 0, c, -s, 0, 0, 0, 0;
    return m;
}

} // namespace

Mat3 rotation_matrix(const Vec3 &rotation)
{
    return rot_z(rotation[2]) * rot_y(rotation[1]) * rot_x(rotation[0]);
}

std::array<Mat3, 3> rotation_matrix_derivatives(const Vec3 &rotation)
{
    const Mat3 rx = rot_x(rotation[0]), ry = rot_y(rotation[1]), rz = rot_z(rotation[2]);
    return {rz * ry * drot_x(rotation[0]), rz * drot_y(rotation[1]) * rx, drot_z(rotation[2]) * ry * rx};
}

std::vector<Vec3> antenna_positions(const SurfacePose &pose, const ArraySpec &array)
{
    const Mat3 r = rotation_matrix(pose.rotation);
    std::vector<Vec3> out;
    out.reserve(array.local_positions.size());
    for (const auto &local : array.local_positions)
        out.push_back(pose.position + r * local);
    return out;
}

Vec3 surface_normal(const Vec3 &rotation, const ArraySpec &array)
{
    return rotation_matrix(rotation) * array.local_normal;
}

Mat3 normal_jacobian(const Vec3 &rotation, const ArraySpec &array)
{
    const auto d = rotation_matrix_derivatives(rotation);
    Mat3 j;
    for (int k = 0; k < 3; ++k)
        j.col(k) = d[static_cast<std::size_t>(k)] * array.local_normal;
    return j;
}

ConstraintReport check_constraints(std::span<const SurfacePose> poses, const ArraySpec &array,
                                   const DeploymentRegion &region, double d_min)
{
    ConstraintReport rep;
    const int b = static_cast<int>(poses.size());
    std::vector<Vec3> normals;
    normals.reserve(poses.size());
    for (const auto &p : poses)
        normals.push_back(surface_normal(p.rotation, array));

    for (int i = 0; i < b; ++i)
    {
        const Vec3 &qi = poses[i].position;
        rep.blockage.push_back(normals[i].dot(qi));
        const double ex = region.excess(qi);
        rep.region_excess.push_back(ex);
        rep.in_region.push_back(ex <= 0.0);
        for (int j = 0; j < b; ++j)
        {
            if (j == i)
                continue;
            const Vec3 &qj = poses[j].position;
            rep.reflection.push_back({i, j, normals[i].dot(qj - qi)});
            if (i < j)
                rep.min_distance.push_back({i, j, (qi - qj).squaredNorm() - d_min * d_min});
        }
    }
    return rep;
}

Halfspace linearize_min_distance(const Vec3 &q_prev, const Vec3 &q_other, double d_min)
{
    const Vec3 delta = q_prev - q_other;
    const double dist2 = delta.squaredNorm();
    if (!(dist2 > 0.0))
        throw GeometryError("Cannot linearize the separation constraint at coincident surface centers.");
    // -|D|^2 - 2 D^T (q - q_prev) <= -d_min^2  rewritten as  a^T q <= b
    Halfspace h;
    h.normal = -2.0 * delta;
    h.offset = -d_min * d_min + dist2 - 2.0 * delta.dot(q_prev);
    return h;
}

std::vector<Halfspace> linearize_rotation_constraints(const Vec3 &u_prev, std::span<const SurfacePose> poses,
                                                      int index, const ArraySpec &array)
{
    if (index < 0 || index >= static_cast<int>(poses.size()))
        throw std::out_of_range("Surface index " + std::to_string(index) + " out of range.");

    const Vec3 n0 = surface_normal(u_prev, array);
    const Mat3 jac = normal_jacobian(u_prev, array);
    const Vec3 &qi = poses[index].position;

    std::vector<Halfspace> out;
    out.reserve(poses.size());

    // blockage: -q_i^T n(u) <= 0
    Halfspace blk;
    blk.normal = -jac.transpose() * qi;
    blk.offset = qi.dot(n0) + blk.normal.dot(u_prev);
    out.push_back(blk);

    // reflection: (q_j - q_i)^T n(u) <= 0
    for (int j = 0; j < static_cast<int>(poses.size()); ++j)
    {
        if (j == index)
            continue;
        const Vec3 c = poses[j].position - qi;
        Halfspace h;
        h.normal = jac.transpose() * c;
        h.offset = h.normal.dot(u_prev) - c.dot(n0);
        out.push_back(h);
    }
    return out;
}

std::vector<Halfspace> position_halfspaces(std::span<const SurfacePose> poses, int index, const ArraySpec &array)
{
    if (index < 0 || index >= static_cast<int>(poses.size()))
        throw std::out_of_range("Surface index " + std::to_string(index) + " out of range.");

    const Vec3 ni = surface_normal(poses[index].rotation, array);
    std::vector<Halfspace> out;
    out.reserve(2 * poses.size());
    out.push_back({-ni, 0.0});
    for (int j = 0; j < static_cast<int>(poses.size()); ++j)
    {
        if (j == index)
            continue;
        const Vec3 &qj = poses[j].position;
        const Vec3 nj = surface_normal(poses[j].rotation, array);
        out.push_back({-ni, -ni.dot(qj)}); // n_i^T (q_j - q) <= 0
        out.push_back({nj, nj.dot(qj)});   // n_j^T (q - q_j) <= 0
    }
    return out;
}

} // namespace sixdma
