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

#include "sixdma/psca.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sixdma
{

namespace
{

constexpr double kAcceptTol = 1e-10; // true-constraint slack allowed for an accepted step

void require_positive(double v, const char *name)
{
    if (!(v > 0.0))
        throw std::invalid_argument(std::string("OptimizerConfig: ") + name + " must be positive.");
}

} // namespace

void OptimizerConfig::validate() const
{
    require_positive(rho_pos, "rho_pos");
    require_positive(rho_rot, "rho_rot");
    require_positive(fd_step_pos, "fd_step_pos");
    require_positive(fd_step_rot, "fd_step_rot");
    require_positive(delta, "delta");
    if (t1_max < 0 || t2_max < 1)
        throw std::invalid_argument("OptimizerConfig: t1_max must be >= 0 and t2_max >= 1.");
    if (!(backtrack_shrink > 0.0 && backtrack_shrink < 1.0))
        throw std::invalid_argument("OptimizerConfig: backtrack_shrink must lie in (0, 1).");
    if (max_backtracks < 0)
        throw std::invalid_argument("OptimizerConfig: max_backtracks must be non-negative.");
    alpha_grid.validate();
}

// ----- PoseObjective -------------------------------------------------------

PoseObjective::PoseObjective(const Scene &scene, std::vector<SurfacePose> poses, PoseBeams mode)
    : scene_(&scene), poses_(std::move(poses)), mode_(mode)
{
    const Eigen::Index n = scene.array.antenna_count();
    const Eigen::Index cols = n * static_cast<Eigen::Index>(poses_.size());
    users_.resize(static_cast<Eigen::Index>(scene.users.size()), cols);
    eves_.resize(static_cast<Eigen::Index>(scene.eves.size()), cols);
    for (const auto &t : scene.users)
        user_gain_.push_back(path_gain(t.position.norm(), scene.wavelength));
    for (const auto &t : scene.eves)
        eve_gain_.push_back(path_gain(t.position.norm(), scene.wavelength));
    user_noise_ = scene.user_noise();
    eve_noise_ = scene.eve_noise();
    for (int b = 0; b < static_cast<int>(poses_.size()); ++b)
        write_block(b, poses_[static_cast<std::size_t>(b)]);
}

void PoseObjective::write_block(int surface, const SurfacePose &pose)
{
    const Scene &sc = *scene_;
    const Eigen::Index n = sc.array.antenna_count();
    const Eigen::Index off = n * surface;
    const SurfaceFrame fr = make_surface_frame(pose, sc.array);
    for (std::size_t k = 0; k < sc.users.size(); ++k)
        write_channel_block(fr, sc.array.pattern, sc.users[k].position, sc.wavelength, user_gain_[k],
                            users_.row(static_cast<Eigen::Index>(k)).segment(off, n));
    for (std::size_t k = 0; k < sc.eves.size(); ++k)
        write_channel_block(fr, sc.array.pattern, sc.eves[k].position, sc.wavelength, eve_gain_[k],
                            eves_.row(static_cast<Eigen::Index>(k)).segment(off, n));
}

double PoseObjective::value() const
{
    if (mode_ == PoseBeams::refreshed)
    {
        const BeamformerSet beams =
            beams_for_alpha(users_, eves_, beams_.alpha, scene_->p_max, scene_->mmse_noise);
        return sum_secrecy_rate(users_, eves_, beams, user_noise_, eve_noise_).raw_objective;
    }
    return sum_secrecy_rate(users_, eves_, beams_, user_noise_, eve_noise_).raw_objective;
}

double PoseObjective::value_with(int surface, const SurfacePose &trial)
{
    const Eigen::Index n = scene_->array.antenna_count();
    const Eigen::Index off = n * surface;
    const Eigen::MatrixXcd saved_users = users_.middleCols(off, n);
    const Eigen::MatrixXcd saved_eves = eves_.middleCols(off, n);
    write_block(surface, trial);
    const double v = value();
    users_.middleCols(off, n) = saved_users;
    eves_.middleCols(off, n) = saved_eves;
    return v;
}

void PoseObjective::commit(int surface, const SurfacePose &pose)
{
    poses_[static_cast<std::size_t>(surface)] = pose;
    write_block(surface, pose);
}

// ----- gradient ------------------------------------------------------------

Vec3 finite_diff_gradient(const std::function<double(const Vec3 &)> &objective, const Vec3 &x, double eps)
{
    if (!(eps > 0.0))
        throw std::invalid_argument("Finite-difference step must be positive.");
    const double f0 = objective(x);
    if (!std::isfinite(f0))
        throw std::domain_error("Objective is not finite at the expansion point.");
    Vec3 g;
    for (int j = 0; j < 3; ++j)
    {
        const double fj = objective(x + eps * Vec3::Unit(j));
        if (!std::isfinite(fj))
            throw std::domain_error("Objective is not finite at a finite-difference probe.");
        g[j] = (fj - f0) / eps;
    }
    return g;
}

// ----- ring parameterization ----------------------------------------------

Ring Ring::from_poses(std::span<const SurfacePose> poses)
{
    if (poses.empty())
        throw std::invalid_argument("Ring needs at least one surface.");
    Ring ring;
    ring.radius = std::hypot(poses[0].position[0], poses[0].position[1]);
    ring.height = poses[0].position[2];
    if (!(ring.radius > 0.0))
        throw std::invalid_argument("Ring radius must be positive.");
    for (const auto &p : poses)
    {
        const double r = std::hypot(p.position[0], p.position[1]);
        if (std::abs(r - ring.radius) > 1e-9 || std::abs(p.position[2] - ring.height) > 1e-9)
            throw std::invalid_argument("Circular movement needs every surface on one horizontal ring.");
        const double az = std::atan2(p.position[1], p.position[0]);
        ring.yaw_offset.push_back(p.rotation[2] - az);
        ring.tilt_alpha.push_back(p.rotation[0]);
        ring.tilt_beta.push_back(p.rotation[1]);
    }
    return ring;
}

SurfacePose Ring::pose(int surface, double azimuth) const
{
    const auto s = static_cast<std::size_t>(surface);
    return SurfacePose(Vec3(radius * std::cos(azimuth), radius * std::sin(azimuth), height),
                       Vec3(tilt_alpha[s], tilt_beta[s], azimuth + yaw_offset[s]));
}

// ----- per-surface updates -------------------------------------------------

double constraint_violation(const Scene &scene, std::span<const SurfacePose> poses)
{
    return check_constraints(poses, scene.array, scene.region, scene.d_min).max_violation();
}

namespace
{

// Moves from x_prev toward the subproblem solution, shrinking the step until the true constraints
// hold and the objective does not drop.
template <class MakePose>
StepOutcome safeguarded_step(int surface, PoseObjective &state, const Scene &scene, const OptimizerConfig &config,
                             const Vec3 &x_prev, const Vec3 &x_new, double f_prev, MakePose make_pose)
{
    StepOutcome out;
    out.pose = state.poses()[static_cast<std::size_t>(surface)];
    out.objective = f_prev;
    const Vec3 step = x_new - x_prev;
    if (step.norm() == 0.0)
    {
        out.accepted = true;
        return out;
    }

    std::vector<SurfacePose> trial_poses = state.poses();
    double scale = 1.0;
    for (int k = 0; k <= config.max_backtracks; ++k, scale *= config.backtrack_shrink)
    {
        const SurfacePose trial = make_pose(x_prev + scale * step);
        trial_poses[static_cast<std::size_t>(surface)] = trial;
        out.backtracks = k;
        if (constraint_violation(scene, trial_poses) > kAcceptTol)
            continue;
        const double f = state.value_with(surface, trial);
        if (f >= f_prev)
        {
            state.commit(surface, trial);
            out.pose = trial;
            out.accepted = true;
            out.objective = f;
            return out;
        }
    }
    return out;
}

} // namespace

StepOutcome update_position(int surface, PoseObjective &state, const Scene &scene, const OptimizerConfig &config)
{
    const auto &poses = state.poses();
    const SurfacePose current = poses[static_cast<std::size_t>(surface)];
    const Vec3 q_prev = current.position;
    auto make_pose = [&](const Vec3 &q) { return SurfacePose(q, current.rotation); };

    const double f_prev = state.value();
    const Vec3 grad = finite_diff_gradient(
        [&](const Vec3 &q) { return state.value_with(surface, make_pose(q)); }, q_prev, config.fd_step_pos);

    QpProblem qp;
    qp.gradient = grad;
    qp.center = q_prev;
    qp.rho = config.rho_pos;
    qp.region = scene.region;
    qp.halfspaces = position_halfspaces(poses, surface, scene.array);
    for (std::size_t j = 0; j < poses.size(); ++j)
        if (static_cast<int>(j) != surface)
            qp.halfspaces.push_back(linearize_min_distance(q_prev, poses[j].position, scene.d_min));

    const Vec3 q_new = solve_proximal_qp(qp);
    return safeguarded_step(surface, state, scene, config, q_prev, q_new, f_prev, make_pose);
}

StepOutcome update_rotation(int surface, PoseObjective &state, const Scene &scene, const OptimizerConfig &config)
{
    const auto &poses = state.poses();
    const SurfacePose current = poses[static_cast<std::size_t>(surface)];
    const Vec3 u_prev = current.rotation;
    // SurfacePose wraps the angles; the gradient and the linearization use the unwrapped values.
    auto make_pose = [&](const Vec3 &u) { return SurfacePose(current.position, u); };

    const double f_prev = state.value();
    const Vec3 grad = finite_diff_gradient(
        [&](const Vec3 &u) { return state.value_with(surface, make_pose(u)); }, u_prev, config.fd_step_rot);

    QpProblem qp;
    qp.gradient = grad;
    qp.center = u_prev;
    qp.rho = config.rho_rot;
    qp.halfspaces = linearize_rotation_constraints(u_prev, poses, surface, scene.array);

    const Vec3 u_new = solve_proximal_qp(qp);
    return safeguarded_step(surface, state, scene, config, u_prev, u_new, f_prev, make_pose);
}

StepOutcome update_azimuth(int surface, PoseObjective &state, const Scene &scene, const OptimizerConfig &config,
                           const Ring &ring)
{
    const auto &poses = state.poses();
    const Vec3 q = poses[static_cast<std::size_t>(surface)].position;
    const double psi = std::atan2(q[1], q[0]);
    // The subproblem variable is the azimuth offset, embedded as the first coordinate of a 3-vector.
    auto make_pose = [&](const Vec3 &x) { return ring.pose(surface, psi + x[0]); };

    const double f_prev = state.value();
    const double eps = config.fd_step_rot;
    const double f_eps = state.value_with(surface, make_pose(Vec3(eps, 0.0, 0.0)));
    if (!std::isfinite(f_prev) || !std::isfinite(f_eps))
        throw std::domain_error("Objective is not finite during the azimuth update.");

    QpProblem qp;
    qp.gradient = Vec3((f_eps - f_prev) / eps, 0.0, 0.0);
    qp.center = Vec3::Zero();
    qp.rho = config.rho_rot;

    // Separation on a circle is an angular gap of at least 2 asin(d_min / 2r) to both neighbours.
    if (poses.size() > 1)
    {
        const double gap = 2.0 * std::asin(std::min(1.0, scene.d_min / (2.0 * ring.radius)));
        double ahead = kTwoPi, behind = kTwoPi;
        for (std::size_t j = 0; j < poses.size(); ++j)
        {
            if (static_cast<int>(j) == surface)
                continue;
            const double psi_j = std::atan2(poses[j].position[1], poses[j].position[0]);
            ahead = std::min(ahead, wrap_angle(psi_j - psi));
            behind = std::min(behind, wrap_angle(psi - psi_j));
        }
        qp.halfspaces.push_back({Vec3::UnitX(), std::max(0.0, ahead - gap)});
        qp.halfspaces.push_back({-Vec3::UnitX(), std::max(0.0, behind - gap)});
    }

    const Vec3 x_new = solve_proximal_qp(qp);
    return safeguarded_step(surface, state, scene, config, Vec3::Zero(), x_new, f_prev, make_pose);
}

// ----- outer loop ----------------------------------------------------------

SolveTrace optimize(const Scene &scene, std::vector<SurfacePose> initial_poses, const OptimizerConfig &config,
                    PoseFreedom freedom)
{
    config.validate();
    scene.validate();
    if (initial_poses.empty())
        throw std::invalid_argument("At least one surface is required.");
    const double violation = constraint_violation(scene, initial_poses);
    if (violation > 1e-9)
        throw InfeasiblePosesError("Initial poses violate the placement constraints by " + std::to_string(violation) +
                                   ".");

    SolveTrace trace;
    trace.initial_poses = initial_poses;

    PowerSplitResult best = power_split_search(scene, initial_poses, config.alpha_grid);
    std::vector<SurfacePose> best_poses = initial_poses;
    trace.max_total_power = best.max_total_power;
    trace.null_space_empty = best.null_space_empty;
    trace.outer_objective.push_back(best.objective);
    trace.outer_ssr.push_back(best.report.ssr);

    const int surfaces = static_cast<int>(initial_poses.size());
    Ring ring;
    if (freedom == PoseFreedom::circular)
        ring = Ring::from_poses(initial_poses);

    const int outer_cap = freedom == PoseFreedom::fixed ? 0 : config.t1_max;
    for (int m = 1; m <= outer_cap; ++m)
    {
        PoseObjective state(scene, best_poses, config.pose_beams);
        // Precoder refresh at the retained alpha; identical to the retained beams for these poses.
        state.set_beams(best.beams);

        double f = state.value();
        for (int t = 1; t <= config.t2_max; ++t)
        {
            auto record = [&](int b, StepKind kind, const StepOutcome &s) {
                trace.steps.push_back({m, t, b, kind, s.backtracks, s.accepted, s.objective});
            };
            if (freedom == PoseFreedom::full)
                for (int b = 0; b < surfaces; ++b)
                    record(b, StepKind::position, update_position(b, state, scene, config));
            if (freedom == PoseFreedom::full || freedom == PoseFreedom::rotation_only)
                for (int b = 0; b < surfaces; ++b)
                    record(b, StepKind::rotation, update_rotation(b, state, scene, config));
            if (freedom == PoseFreedom::circular)
                for (int b = 0; b < surfaces; ++b)
                    record(b, StepKind::azimuth, update_azimuth(b, state, scene, config, ring));

            const double f_new = state.value();
            trace.inner_objective.push_back(f_new);
            const double gain = f_new - f;
            f = f_new;
            if (gain < config.delta)
                break;
        }

        trace.outer_iterations = m;
        bool moved = false;
        for (int b = 0; b < surfaces; ++b)
        {
            const auto &now = state.poses()[static_cast<std::size_t>(b)];
            const auto &was = best_poses[static_cast<std::size_t>(b)];
            moved = moved || now.position != was.position || now.rotation != was.rotation;
        }
        if (!moved)
        {
            // fixed point: every later iteration would repeat this one
            trace.outer_objective.push_back(best.objective);
            trace.outer_ssr.push_back(best.report.ssr);
            break;
        }

        PowerSplitResult candidate = power_split_search(scene, state.poses(), config.alpha_grid);
        trace.max_total_power = std::max(trace.max_total_power, candidate.max_total_power);
        // The clamped SSR is guarded too: a raw gain can hide a user dropping below its eavesdroppers.
        if (!(candidate.objective >= best.objective) || !(candidate.report.ssr >= best.report.ssr))
        {
            // keep the retained poses; repeating from them reproduces this iteration
            trace.outer_objective.push_back(best.objective);
            trace.outer_ssr.push_back(best.report.ssr);
            break;
        }
        best = std::move(candidate);
        best_poses = state.poses();
        trace.null_space_empty = best.null_space_empty;
        trace.outer_objective.push_back(best.objective);
        trace.outer_ssr.push_back(best.report.ssr);
    }

    trace.final_poses = std::move(best_poses);
    trace.final_beams = std::move(best.beams);
    trace.final_report = std::move(best.report);
    return trace;
}

} // namespace sixdma
