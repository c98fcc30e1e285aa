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

#include "sixdma/beamform.hpp"
#include "sixdma/geometry.hpp"
#include "sixdma/qp.hpp"
#include "sixdma/scene.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace sixdma
{

class InfeasiblePosesError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// What the pose subproblems hold fixed. `held` keeps W and the AN vector of the last alpha search;
/// `refreshed` rebuilds both from the trial channels at the retained alpha on every evaluation.
enum class PoseBeams
{
    held,
    refreshed
};

struct OptimizerConfig
{
    double rho_pos = 100.0;   // proximal weight for positions [1/m^2 scale]
    double rho_rot = 10.0;    // proximal weight for angles [1/rad^2 scale]
    double fd_step_pos = 1e-7; // m
    double fd_step_rot = 1e-7; // rad
    double delta = 1e-3;      // inner-loop convergence threshold on the objective gain
    int t1_max = 10;
    int t2_max = 20;
    AlphaGrid alpha_grid;
    double backtrack_shrink = 0.5;
    int max_backtracks = 20;
    PoseBeams pose_beams = PoseBeams::refreshed;

    void validate() const;
};

/// Which pose variables a run may change.
enum class PoseFreedom
{
    full,          // positions and rotations
    rotation_only, // rotations only
    circular,      // one azimuth per surface on a fixed horizontal ring, orientation tracks the azimuth
    fixed          // no pose updates
};

/// Raw secrecy objective as a function of the surface poses with the beamformers held fixed.
/// Channel blocks are cached per surface so a single-surface trial only rebuilds that block.
class PoseObjective
{
public:
    PoseObjective(const Scene &scene, std::vector<SurfacePose> poses, PoseBeams mode = PoseBeams::held);

    const std::vector<SurfacePose> &poses() const { return poses_; }
    const ChannelMatrix &user_channels() const { return users_; }
    const ChannelMatrix &eve_channels() const { return eves_; }

    void set_beams(const BeamformerSet &beams) { beams_ = beams; }
    const BeamformerSet &beams() const { return beams_; }

    double value() const;
    double value_with(int surface, const SurfacePose &trial);
    void commit(int surface, const SurfacePose &pose);

private:
    void write_block(int surface, const SurfacePose &pose);

    const Scene *scene_;
    std::vector<SurfacePose> poses_;
    ChannelMatrix users_;
    ChannelMatrix eves_;
    std::vector<cdouble> user_gain_;
    std::vector<cdouble> eve_gain_;
    std::vector<double> user_noise_;
    std::vector<double> eve_noise_;
    BeamformerSet beams_;
    PoseBeams mode_;
};

/// Forward differences (f(x + eps e_j) - f(x)) / eps. Throws std::domain_error on non-finite values.
Vec3 finite_diff_gradient(const std::function<double(const Vec3 &)> &objective, const Vec3 &x, double eps);

enum class StepKind
{
    position,
    rotation,
    azimuth
};

struct StepRecord
{
    int outer = 0;
    int inner = 0;
    int surface = 0;
    StepKind kind = StepKind::position;
    int backtracks = 0;
    bool accepted = false;
    double objective = 0.0;
};

struct StepOutcome
{
    SurfacePose pose;
    bool accepted = false; // false: the previous pose was kept
    int backtracks = 0;
    double objective = 0.0;
};

/// Horizontal circle carrying the surfaces of the circular-movement scheme.
struct Ring
{
    double radius = 0.0;
    double height = 0.0;
    std::vector<double> yaw_offset; // rotation gamma minus azimuth, per surface
    std::vector<double> tilt_alpha;
    std::vector<double> tilt_beta;

    /// Throws std::invalid_argument unless all centers share one radius and height.
    static Ring from_poses(std::span<const SurfacePose> poses);
    SurfacePose pose(int surface, double azimuth) const;
};

StepOutcome update_position(int surface, PoseObjective &state, const Scene &scene, const OptimizerConfig &config);
StepOutcome update_rotation(int surface, PoseObjective &state, const Scene &scene, const OptimizerConfig &config);
StepOutcome update_azimuth(int surface, PoseObjective &state, const Scene &scene, const OptimizerConfig &config,
                           const Ring &ring);

struct SolveTrace
{
    std::vector<double> outer_objective; // index 0 is the initial evaluation
    std::vector<double> outer_ssr;       // clamped counterpart of outer_objective
    std::vector<double> inner_objective;
    std::vector<StepRecord> steps;
    std::vector<SurfacePose> initial_poses;
    std::vector<SurfacePose> final_poses;
    BeamformerSet final_beams;
    RateReport final_report;
    int outer_iterations = 0;
    double max_total_power = 0.0; // over every beamformer set produced during the run
    bool null_space_empty = false;
};

/// Alternating optimization: poses by proximal SCA steps, then beamformers by the alpha search.
/// Throws InfeasiblePosesError if the initial poses violate a placement constraint.
SolveTrace optimize(const Scene &scene, std::vector<SurfacePose> initial_poses, const OptimizerConfig &config,
                    PoseFreedom freedom = PoseFreedom::full);

/// Largest placement-constraint violation of a pose set, measured as in check_constraints.
double constraint_violation(const Scene &scene, std::span<const SurfacePose> poses);

} // namespace sixdma
