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

#include "sixdma/channel.hpp"

#include <algorithm>
#include <cmath>

namespace sixdma
{

namespace
{

LocalAngles angles_of(const Vec3 &v)
{
    return {std::asin(std::clamp(v[2], -1.0, 1.0)), std::atan2(v[1], v[0])};
}

// Orthonormal frame (h, v, n) with n the broadside; for n = +z this is (x, y, z).
void broadside_axes(const Vec3 &n, Vec3 &h, Vec3 &v)
{
    Vec3 ref = Vec3::UnitX();
    if (std::abs(n.dot(ref)) > 0.9)
        ref = Vec3::UnitY();
    v = n.cross(ref).normalized();
    h = v.cross(n);
}

} // namespace

Vec3 dod_vector(double azimuth, double elevation)
{
    const double ce = std::cos(elevation);
    return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

Direction direction_to_terminal(const Vec3 &surface_center, const Vec3 &terminal)
{
    const Vec3 d = terminal - surface_center;
    const double dist = d.norm();
    if (!(dist > 0.0))
        throw GeometryError("Terminal coincides with a surface center.");
    return {d / dist, dist};
}

LocalAngles local_angles(const Vec3 &f, const Vec3 &rotation)
{
    return angles_of(rotation_matrix(rotation).transpose() * f);
}

LocalAngles local_angles(const Vec3 &f, const Vec3 &rotation, const ArraySpec &array)
{
    Vec3 h, v;
    broadside_axes(array.local_normal, h, v);
    const Vec3 fl = rotation_matrix(rotation).transpose() * f;
    return angles_of(Vec3(h.dot(fl), v.dot(fl), array.local_normal.dot(fl)));
}

double element_gain(const LocalAngles &angles, const GainPattern &pattern)
{
    if (pattern.kind == GainPattern::Kind::isotropic)
        return 1.0;

    const Vec3 f = dod_vector(angles.azimuth, angles.elevation);
    const double dphi = std::atan2(f[0], f[2]);
    const double dtheta = std::asin(std::clamp(f[1], -1.0, 1.0));
    const double att = 12.0 * (dtheta / pattern.theta_3db) * (dtheta / pattern.theta_3db) +
                       12.0 * (dphi / pattern.phi_3db) * (dphi / pattern.phi_3db);
    const double a_dbi = pattern.max_gain_dbi - std::min(att, pattern.front_to_back_db);
    return std::pow(10.0, a_dbi / 10.0);
}

Eigen::VectorXcd steering_vector(const SurfacePose &pose, const ArraySpec &array, const Vec3 &f, double wavelength)
{
    const auto r = antenna_positions(pose, array);
    const double k = kTwoPi / wavelength;
    Eigen::VectorXcd a(static_cast<Eigen::Index>(r.size()));
    for (std::size_t n = 0; n < r.size(); ++n)
        a[static_cast<Eigen::Index>(n)] = std::polar(1.0, k * f.dot(r[n]));
    return a;
}

cdouble path_gain(double distance, double wavelength)
{
    if (!(distance > 0.0))
        throw std::invalid_argument("Path gain needs a positive distance.");
    return {wavelength / (4.0 * kPi * distance), 0.0};
}

SurfaceFrame make_surface_frame(const SurfacePose &pose, const ArraySpec &array)
{
    SurfaceFrame fr;
    fr.center = pose.position;
    fr.rotation = rotation_matrix(pose.rotation);
    fr.antennas.reserve(array.local_positions.size());
    for (const auto &local : array.local_positions)
        fr.antennas.push_back(pose.position + fr.rotation * local);
    Vec3 h, v;
    broadside_axes(array.local_normal, h, v);
    fr.broadside_h = fr.rotation * h;
    fr.broadside_v = fr.rotation * v;
    fr.broadside_n = fr.rotation * array.local_normal;
    return fr;
}

void write_channel_block(const SurfaceFrame &frame, const GainPattern &pattern, const Vec3 &terminal,
                         double wavelength, cdouble v, Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> out)
{
    const Direction dir = direction_to_terminal(frame.center, terminal);
    const Vec3 fb(frame.broadside_h.dot(dir.unit), frame.broadside_v.dot(dir.unit), frame.broadside_n.dot(dir.unit));
    const double g = element_gain(angles_of(fb), pattern);
    const cdouble amp = v * std::sqrt(g);
    const double k = kTwoPi / wavelength;
    for (std::size_t n = 0; n < frame.antennas.size(); ++n)
        out[static_cast<Eigen::Index>(n)] = amp * std::polar(1.0, k * (dir.unit.dot(frame.antennas[n]) - dir.distance));
}

ChannelVector terminal_channel(std::span<const SurfacePose> poses, const ArraySpec &array, const Terminal &terminal,
                               double wavelength)
{
    const Eigen::Index n = array.antenna_count();
    ChannelVector h(n * static_cast<Eigen::Index>(poses.size()));
    const cdouble v = path_gain(terminal.position.norm(), wavelength);
    for (std::size_t b = 0; b < poses.size(); ++b)
    {
        const SurfaceFrame fr = make_surface_frame(poses[b], array);
        write_channel_block(fr, array.pattern, terminal.position, wavelength, v,
                            h.segment(static_cast<Eigen::Index>(b) * n, n));
    }
    return h;
}

ChannelSet assemble_channels(std::span<const SurfacePose> poses, const ArraySpec &array,
                             std::span<const Terminal> terminals, double wavelength)
{
    const Eigen::Index n = array.antenna_count();
    const Eigen::Index cols = n * static_cast<Eigen::Index>(poses.size());
    const auto n_users = std::count_if(terminals.begin(), terminals.end(),
                                       [](const Terminal &t) { return t.kind == TerminalKind::user; });
    const auto n_eves = static_cast<Eigen::Index>(terminals.size()) - n_users;

    std::vector<SurfaceFrame> frames;
    frames.reserve(poses.size());
    for (const auto &p : poses)
        frames.push_back(make_surface_frame(p, array));

    ChannelSet out{ChannelMatrix(n_users, cols), ChannelMatrix(n_eves, cols)};
    Eigen::Index iu = 0, ie = 0;
    for (const auto &t : terminals)
    {
        const cdouble v = path_gain(t.position.norm(), wavelength);
        auto row = t.kind == TerminalKind::user ? out.users.row(iu++) : out.eves.row(ie++);
        for (std::size_t b = 0; b < frames.size(); ++b)
            write_channel_block(frames[b], array.pattern, t.position, wavelength, v,
                                row.segment(static_cast<Eigen::Index>(b) * n, n));
    }
    return out;
}

} // namespace sixdma
