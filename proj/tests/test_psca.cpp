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
#include "sixdma/scenario.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace sixdma;
using Catch::Approx;

namespace
{

Terminal at(double r, double az_deg, double el_deg, TerminalKind kind)
{
    const double az = az_deg * kPi / 180, el = el_deg * kPi / 180;
    return {r * dod_vector(az, el), 1e-12, kind};
}

ScenarioConfig toy_config(int surfaces)
{
    ScenarioConfig c;
    c.surfaces = surfaces;
    c.antennas_per_surface = 2;
    return c;
}

Scene toy_scene(int surfaces, std::vector<Terminal> users, std::vector<Terminal> eves)
{
    return make_scene(toy_config(surfaces), TerminalDraw{std::move(users), std::move(eves)});
}

OptimizerConfig quick()
{
    OptimizerConfig c;
    c.t1_max = 3;
    c.t2_max = 5;
    return c;
}

} // namespace

TEST_CASE("finite_diff_gradient")
{
    const auto sq = [](const Vec3 &x) { return x.squaredNorm(); };
    CHECK((finite_diff_gradient(sq, Vec3(1, 2, 3), 1e-6) - Vec3(2, 4, 6)).cwiseAbs().maxCoeff() < 1e-5);
    CHECK(finite_diff_gradient([](const Vec3 &) { return 4.2; }, Vec3(1, 2, 3), 1e-6).norm() == 0.0);
    const Vec3 a(0.5, -2.0, 3.0);
    const Vec3 g = finite_diff_gradient([&](const Vec3 &x) { return a.dot(x); }, Vec3(0.1, 0.2, 0.3), 1e-3);
    CHECK((g - a).norm() < 1e-10);
    CHECK_THROWS(finite_diff_gradient(sq, Vec3::Zero(), 0.0));
    CHECK_THROWS_AS(finite_diff_gradient([](const Vec3 &x) { return x[0] > 0 ? NAN : 0.0; }, Vec3::Zero(), 1e-3),
                    std::domain_error);
}

TEST_CASE("PoseObjective mirrors a full channel rebuild")
{
    const Scene s = toy_scene(3, {at(60, 10, -20, TerminalKind::user), at(90, 140, -30, TerminalKind::user)},
                              {at(70, -100, -15, TerminalKind::eavesdropper)});
    auto poses = initial_poses(toy_config(3));
    const auto split = power_split_search(s, poses, AlphaGrid{});
    for (PoseBeams mode : {PoseBeams::held, PoseBeams::refreshed})
    {
        PoseObjective obj(s, poses, mode);
        obj.set_beams(split.beams);
        // at the starting poses both modes reproduce the search result
        REQUIRE(obj.value() == Approx(split.objective).epsilon(1e-7));

        SurfacePose moved(poses[1].position + Vec3(0.01, -0.02, 0.0), poses[1].rotation + Vec3(0.05, 0, 0.1));
        const double v = obj.value_with(1, moved);
        // value_with leaves the state untouched
        REQUIRE(obj.value() == Approx(split.objective).epsilon(1e-7));

        auto trial = poses;
        trial[1] = moved;
        const ChannelSet ch = scene_channels(s, trial);
        const PoseObjective fresh(s, trial, mode);
        REQUIRE((ch.users - fresh.user_channels()).norm() <= 1e-12 * ch.users.norm());
        REQUIRE((ch.eves - fresh.eve_channels()).norm() <= 1e-12 * ch.eves.norm());
        const BeamformerSet b = mode == PoseBeams::held
                                    ? split.beams
                                    : beams_for_alpha(ch.users, ch.eves, split.beams.alpha, s.p_max, s.mmse_noise);
        REQUIRE(v == Approx(sum_secrecy_rate(ch.users, ch.eves, b, s.user_noise(), s.eve_noise()).raw_objective)
                         .epsilon(1e-12));
        obj.commit(1, moved);
        REQUIRE(obj.value() == Approx(v).epsilon(1e-12));
        REQUIRE(obj.poses()[1].position == moved.position);
    }
}

TEST_CASE("single-surface position step equals the direct proximal solution")
{
    Scene s = toy_scene(1, {at(50, 20, -30, TerminalKind::user), at(80, -30, -10, TerminalKind::user)}, {});
    const auto poses = initial_poses(toy_config(1));
    PoseObjective state(s, poses, PoseBeams::refreshed);
    state.set_beams(power_split_search(s, poses, AlphaGrid{}).beams);
    OptimizerConfig cfg;
    cfg.rho_pos = 1e4; // small step, stays away from the ball boundary

    const SurfacePose p0 = poses[0];
    const Vec3 grad = finite_diff_gradient(
        [&](const Vec3 &q) { return state.value_with(0, SurfacePose(q, p0.rotation)); }, p0.position,
        cfg.fd_step_pos);
    QpProblem qp;
    qp.gradient = grad;
    qp.center = p0.position;
    qp.rho = cfg.rho_pos;
    qp.region = s.region;
    qp.halfspaces = position_halfspaces(poses, 0, s.array);
    const Vec3 expect = solve_proximal_qp(qp);

    const double before = state.value();
    const StepOutcome out = update_position(0, state, s, cfg);
    REQUIRE(out.accepted);
    if (out.backtracks == 0)
        CHECK((out.pose.position - expect).norm() < 1e-12);
    CHECK(out.objective >= before);
    CHECK(constraint_violation(s, state.poses()) <= 1e-9);
}

TEST_CASE("rotation step output is wrapped and feasible")
{
    Scene s = toy_scene(2, {at(50, 20, -30, TerminalKind::user)}, {at(70, 100, -20, TerminalKind::eavesdropper)});
    const auto poses = initial_poses(toy_config(2));
    PoseObjective state(s, poses, PoseBeams::refreshed);
    state.set_beams(power_split_search(s, poses, AlphaGrid{}).beams);
    const double before = state.value();
    for (int b = 0; b < 2; ++b)
    {
        const StepOutcome out = update_rotation(b, state, s, OptimizerConfig{});
        CHECK(out.pose.rotation.minCoeff() >= 0.0);
        CHECK(out.pose.rotation.maxCoeff() < kTwoPi);
    }
    CHECK(state.value() >= before);
    CHECK(constraint_violation(s, state.poses()) <= 1e-9);
}

TEST_CASE("optimize with T1 = 0 only evaluates the start")
{
    Scene s = toy_scene(2, {at(50, 20, -30, TerminalKind::user)}, {at(70, 100, -20, TerminalKind::eavesdropper)});
    OptimizerConfig cfg;
    cfg.t1_max = 0;
    const auto poses = initial_poses(toy_config(2));
    const auto tr = optimize(s, poses, cfg);
    CHECK(tr.outer_objective.size() == 1);
    CHECK(tr.outer_iterations == 0);
    CHECK(tr.steps.empty());
    for (std::size_t b = 0; b < poses.size(); ++b)
        CHECK(tr.final_poses[b].position == poses[b].position);
    CHECK(tr.final_report.ssr == Approx(power_split_search(s, poses, cfg.alpha_grid).report.ssr));
}

TEST_CASE("one user and no eavesdropper")
{
    Scene s = toy_scene(2, {at(60, 30, -25, TerminalKind::user)}, {});
    const auto tr = optimize(s, initial_poses(toy_config(2)), quick());
    REQUIRE(tr.final_report.user_rate.size() == 1);
    CHECK(tr.final_report.ssr == Approx(tr.final_report.user_rate[0]));
    for (std::size_t i = 1; i < tr.outer_ssr.size(); ++i)
        CHECK(tr.outer_ssr[i] >= tr.outer_ssr[i - 1] - 1e-6);
}

TEST_CASE("optimizing poses never loses to frozen poses")
{
    Scene s = toy_scene(2, {at(60, 30, -25, TerminalKind::user), at(120, -60, -10, TerminalKind::user)},
                        {at(80, 0, -20, TerminalKind::eavesdropper)});
    const auto init = initial_poses(toy_config(2));
    const auto moved = optimize(s, init, quick());
    const auto frozen = optimize(s, init, quick(), PoseFreedom::fixed);
    CHECK(moved.final_report.ssr >= frozen.final_report.ssr);
    CHECK(moved.final_report.raw_objective >= frozen.final_report.raw_objective);
    CHECK(constraint_violation(s, moved.final_poses) <= 1e-9);
    CHECK(moved.max_total_power <= s.p_max + 1e-9);
}

TEST_CASE("pose freedoms")
{
    Scene s = toy_scene(4, {at(60, 30, -25, TerminalKind::user), at(120, -60, -10, TerminalKind::user)},
                        {at(80, 170, -20, TerminalKind::eavesdropper)});
    const auto init = initial_poses(toy_config(4));

    const auto fixed = optimize(s, init, quick(), PoseFreedom::fixed);
    for (std::size_t b = 0; b < init.size(); ++b)
    {
        CHECK(fixed.final_poses[b].position == init[b].position);
        CHECK(fixed.final_poses[b].rotation == init[b].rotation);
    }

    const auto rot = optimize(s, init, quick(), PoseFreedom::rotation_only);
    for (std::size_t b = 0; b < init.size(); ++b)
        CHECK(rot.final_poses[b].position == init[b].position);
    CHECK(rot.final_report.ssr >= fixed.final_report.ssr);

    const auto circ = optimize(s, init, quick(), PoseFreedom::circular);
    const double r0 = std::hypot(init[0].position.x(), init[0].position.y());
    for (std::size_t b = 0; b < init.size(); ++b)
    {
        const Vec3 &q = circ.final_poses[b].position;
        CHECK(std::abs(std::hypot(q.x(), q.y()) - r0) <= 1e-9);
        CHECK(std::abs(q.z() - init[b].position.z()) <= 1e-9);
        // orientation tracks the azimuth: same downtilt, yaw offset unchanged
        CHECK(circ.final_poses[b].rotation[1] == Approx(init[b].rotation[1]));
    }
    CHECK(constraint_violation(s, circ.final_poses) <= 1e-9);
    CHECK(circ.final_report.ssr >= fixed.final_report.ssr);
}

TEST_CASE("Ring round trip")
{
    const auto init = initial_poses(toy_config(5));
    const Ring ring = Ring::from_poses(init);
    for (int b = 0; b < 5; ++b)
    {
        const double az = std::atan2(init[b].position.y(), init[b].position.x());
        const SurfacePose p = ring.pose(b, az);
        CHECK((p.position - init[b].position).norm() < 1e-14);
        const Mat3 d = rotation_matrix(p.rotation) - rotation_matrix(init[b].rotation);
        CHECK(d.norm() < 1e-12);
    }
    auto off = init;
    off[2].position.z() += 0.01;
    CHECK_THROWS(Ring::from_poses(off));
}

TEST_CASE("monotone outer sequence on random toy scenes, both pose-beam modes")
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> r(20, 200), az(-180, 180), el(-75, -5);
    for (int i = 0; i < 6; ++i)
    {
        std::vector<Terminal> users, eves;
        for (int k = 0; k < 2 + i % 2; ++k)
            users.push_back(at(r(rng), az(rng), el(rng), TerminalKind::user));
        eves.push_back(at(r(rng), az(rng), el(rng), TerminalKind::eavesdropper));
        const int b = 2 + i % 3;
        Scene s = toy_scene(b, users, eves);
        OptimizerConfig cfg = quick();
        cfg.pose_beams = i < 3 ? PoseBeams::refreshed : PoseBeams::held;
        const auto tr = optimize(s, initial_poses(toy_config(b)), cfg);
        for (std::size_t m = 1; m < tr.outer_ssr.size(); ++m)
            REQUIRE(tr.outer_ssr[m] - tr.outer_ssr[m - 1] >= -1e-6);
        for (std::size_t m = 1; m < tr.outer_objective.size(); ++m)
            REQUIRE(tr.outer_objective[m] >= tr.outer_objective[m - 1]);
        REQUIRE(constraint_violation(s, tr.final_poses) <= 1e-9);
        REQUIRE(tr.max_total_power <= s.p_max + 1e-9);
    }
}

TEST_CASE("optimize is deterministic")
{
    Scene s = toy_scene(3, {at(60, 30, -25, TerminalKind::user), at(120, -60, -10, TerminalKind::user)},
                        {at(80, 170, -20, TerminalKind::eavesdropper)});
    const auto init = initial_poses(toy_config(3));
    const auto a = optimize(s, init, quick());
    const auto b = optimize(s, init, quick());
    CHECK(a.outer_objective == b.outer_objective);
    CHECK(a.inner_objective == b.inner_objective);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t i = 0; i < a.final_poses.size(); ++i)
    {
        CHECK(a.final_poses[i].position == b.final_poses[i].position);
        CHECK(a.final_poses[i].rotation == b.final_poses[i].rotation);
    }
    CHECK(a.final_beams.transmit == b.final_beams.transmit);
}

TEST_CASE("infeasible start is rejected before any iteration")
{
    Scene s = toy_scene(2, {at(60, 30, -25, TerminalKind::user)}, {});
    auto init = initial_poses(toy_config(2));
    init[1].position = init[0].position + Vec3(0.01, 0, 0);
    CHECK_THROWS_AS(optimize(s, init, quick()), InfeasiblePosesError);

    OptimizerConfig bad;
    bad.rho_pos = -1;
    CHECK_THROWS_AS(optimize(s, initial_poses(toy_config(2)), bad), std::invalid_argument);
}
