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

#include <Eigen/Dense>

#include <array>
#include <span>
#include <stdexcept>
#include <vector>

namespace sixdma
{

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Raised when a geometric quantity is undefined (coincident points, empty arrays, ...).
class GeometryError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Wraps an angle into [0, 2*pi).
double wrap_angle(double radians);
Vec3 wrap_angles(const Vec3 &radians);

/// Position and Euler rotation (x, y, z axis angles) of one movable surface.
/// The rotation is stored wrapped into [0, 2*pi).
struct SurfacePose
{
    Vec3 position = Vec3::Zero();
    Vec3 rotation = Vec3::Zero();

    SurfacePose() = default;
    SurfacePose(const Vec3 &q, const Vec3 &u) : position(q), rotation(wrap_angles(u)) {}
};

// Element radiation pattern. Angles are relative to the surface broadside.
struct GainPattern
{
    enum class Kind
    {
        isotropic,
        sectored
    };

    Kind kind = Kind::sectored;
    double max_gain_dbi = 8.0;
    double theta_3db = 65.0 * kPi / 180.0; // vertical half-power beamwidth [rad]
    double phi_3db = 65.0 * kPi / 180.0;   // horizontal half-power beamwidth [rad]
    double front_to_back_db = 30.0;

    static GainPattern isotropic();
    static GainPattern sectored(double max_gain_dbi = 8.0, double theta_3db_deg = 65.0,
                                double phi_3db_deg = 65.0, double front_to_back_db = 30.0);
};

/// Antenna layout of a surface in its local frame.
struct ArraySpec
{
    std::vector<Vec3> local_positions;
    Vec3 local_normal = Vec3::UnitZ();
    GainPattern pattern;

    int antenna_count() const { return static_cast<int>(local_positions.size()); }

    // Throws std::invalid_argument if the layout is not centered or not planar.
    void validate() const;

    /// Uniform planar array in the local x-y plane, centered on the origin, broadside +z.
    /// N is factored into the most square rows x cols grid (N = 4 gives 2x2).
    static ArraySpec upa(int antenna_count, double spacing, GainPattern pattern = {});
};

struct DeploymentRegion
{
    enum class Shape
    {
        ball,
        box
    };

    Shape shape = Shape::ball;
    Vec3 extent = Vec3::Constant(1.0); // ball: extent[0] is the radius; box: half-widths

    static DeploymentRegion ball(double radius);
    static DeploymentRegion box(const Vec3 &half_widths);

    // Positive outside the region, <= 0 inside (meters).
    double excess(const Vec3 &q) const;
    bool contains(const Vec3 &q, double tol = 0.0) const { return excess(q) <= tol; }
    // Radius of the largest origin-centered ball inside the region.
    double inner_radius() const;
    void validate() const;
};

/// Residuals of the placement constraints for a set of poses.
struct ConstraintReport
{
    struct PairResidual
    {
        int i;
        int j;
        double value;
    };

    std::vector<PairResidual> min_distance; // ||q_i - q_j||^2 - d_min^2, i < j, feasible >= 0
    std::vector<PairResidual> reflection;   // n_i^T (q_j - q_i), i != j, feasible <= 0
    std::vector<double> blockage;           // n_i^T q_i, feasible >= 0
    std::vector<bool> in_region;
    std::vector<double> region_excess;

    bool feasible(double tol = 1e-9) const;
    // Largest violation over all residuals (0 when feasible).
    double max_violation() const;
};

struct Halfspace
{
    Vec3 normal = Vec3::Zero();
    double offset = 0.0;

    // a^T x - b; the halfspace holds when <= 0.
    double residual(const Vec3 &x) const { return normal.dot(x) - offset; }
};

/// R = Rz(gamma) Ry(beta) Rx(alpha). Angles are taken modulo 2*pi.
Mat3 rotation_matrix(const Vec3 &rotation);

/// Partial derivatives of rotation_matrix with respect to (alpha, beta, gamma).
std::array<Mat3, 3> rotation_matrix_derivatives(const Vec3 &rotation);

std::vector<Vec3> antenna_positions(const SurfacePose &pose, const ArraySpec &array);

Vec3 surface_normal(const Vec3 &rotation, const ArraySpec &array);

/// d n(u) / d u, columns ordered (alpha, beta, gamma).
Mat3 normal_jacobian(const Vec3 &rotation, const ArraySpec &array);

ConstraintReport check_constraints(std::span<const SurfacePose> poses, const ArraySpec &array,
                                   const DeploymentRegion &region, double d_min);

/// First-order inner approximation of ||q - q_other|| >= d_min around q_prev.
/// Throws GeometryError when q_prev and q_other coincide.
Halfspace linearize_min_distance(const Vec3 &q_prev, const Vec3 &q_other, double d_min);

/// Reflection and blockage constraints of surface `index`, affine in its rotation around u_prev,
/// with the surface normal replaced by n(u_prev) + J(u_prev)(u - u_prev).
/// The blockage constraint comes first, followed by one reflection constraint per other surface.
std::vector<Halfspace> linearize_rotation_constraints(const Vec3 &u_prev, std::span<const SurfacePose> poses,
                                                      int index, const ArraySpec &array);

/// Reflection and blockage constraints of surface `index`, which are exactly affine in its position
/// when every rotation is held fixed.
std::vector<Halfspace> position_halfspaces(std::span<const SurfacePose> poses, int index, const ArraySpec &array);

} // namespace sixdma
