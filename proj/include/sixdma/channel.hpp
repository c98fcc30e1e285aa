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

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

namespace sixdma
{

using cdouble = std::complex<double>;
using ChannelVector = Eigen::RowVectorXcd; // length N*B, surface-major
using ChannelMatrix = Eigen::MatrixXcd;    // one ChannelVector per row

enum class TerminalKind
{
    user,
    eavesdropper
};

struct Terminal
{
    Vec3 position = Vec3::Zero();
    double noise_power = 1e-12; // W
    TerminalKind kind = TerminalKind::user;
};

struct Direction
{
    Vec3 unit;
    double distance;
};

// Elevation from the local x-y plane and azimuth from the local x axis.
struct LocalAngles
{
    double elevation;
    double azimuth;
};

/// (cos(el) cos(az), cos(el) sin(az), sin(el))
Vec3 dod_vector(double azimuth, double elevation);

/// Unit vector and distance from a surface center to a terminal. Throws GeometryError on coincidence.
Direction direction_to_terminal(const Vec3 &surface_center, const Vec3 &terminal);

/// Angles of the global direction f seen in the frame of a surface rotated by `rotation`.
LocalAngles local_angles(const Vec3 &f, const Vec3 &rotation);

/// Same, but expressed in the array's broadside frame (broadside along +z). Identical to the
/// two-argument overload when the array normal is the local z axis.
LocalAngles local_angles(const Vec3 &f, const Vec3 &rotation, const ArraySpec &array);

/// Linear power gain of one element; broadside is local elevation pi/2.
/// Sectored pattern: A = A_max - min(12 (dth/th3)^2 + 12 (dph/ph3)^2, FTB) in dBi.
double element_gain(const LocalAngles &angles, const GainPattern &pattern);

/// exp(j 2pi/lambda f^T r_n) for every antenna of the posed surface.
Eigen::VectorXcd steering_vector(const SurfacePose &pose, const ArraySpec &array, const Vec3 &f, double wavelength);

/// Free-space amplitude lambda / (4 pi d). Throws std::invalid_argument for d <= 0.
cdouble path_gain(double distance, double wavelength);

/// Per-pose quantities shared by every terminal's channel block.
struct SurfaceFrame
{
    Vec3 center;
    Mat3 rotation;
    std::vector<Vec3> antennas;
    Vec3 broadside_h, broadside_v, broadside_n; // array broadside frame in global coordinates
};

SurfaceFrame make_surface_frame(const SurfacePose &pose, const ArraySpec &array);

/// Block of N channel entries v sqrt(g) exp(-j 2pi d_b / lambda) a for one surface.
void write_channel_block(const SurfaceFrame &frame, const GainPattern &pattern, const Vec3 &terminal,
                         double wavelength, cdouble v, Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> out);

ChannelVector terminal_channel(std::span<const SurfacePose> poses, const ArraySpec &array, const Terminal &terminal,
                               double wavelength);

struct ChannelSet
{
    ChannelMatrix users; // K_D x N*B
    ChannelMatrix eves;  // K_E x N*B
};

/// Rows are ordered by terminal index within each kind.
ChannelSet assemble_channels(std::span<const SurfacePose> poses, const ArraySpec &array,
                             std::span<const Terminal> terminals, double wavelength);

} // namespace sixdma
