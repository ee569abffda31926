// Copyright 2026 The latgait Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Model-based expert gaits: a footstep feedback law turns a desired
// per-cycle CoM displacement into footholds, a tripod schedule alternates
// swing and stance, and leg inverse kinematics produces joint targets.

#ifndef LATGAIT_EXPERT_H_
#define LATGAIT_EXPERT_H_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "latgait/robot.h"
#include "latgait/sim.h"
#include "latgait/types.h"

namespace latgait {

// Desired CoM displacement over one gait cycle, in the body frame.
struct ComCommand {
  double dx = 0.0;    // m per cycle
  double dy = 0.0;    // m per cycle
  double dyaw = 0.0;  // rad per cycle

  bool operator==(const ComCommand&) const = default;
};

struct CommandBounds {
  double max_step = 0.15;  // bound on |(dx, dy)|
  double max_yaw = 0.3;    // bound on |dyaw|

  bool Contains(const ComCommand& cmd) const;
  // Scales (dx, dy) onto the disk and clamps dyaw.
  ComCommand Clamp(const ComCommand& cmd) const;
};

struct ExpertConfig {
  int cycle_length = 100;      // N low-level ticks per cycle
  double clearance = 0.04;     // swing apex height, m
  double reach_margin = 0.01;  // foothold clamp margin inside the workspace
};

// Foothold for a foot at `foot` (CoM frame) so that after the body moves by
// `cmd` the foot keeps its place relative to the rotated body.
Eigen::Vector2d FootstepTarget(const ComCommand& cmd,
                               const Eigen::Vector2d& foot);

struct FootholdPlan {
  std::vector<Eigen::Vector2d> footholds;
  int clamped = 0;  // footholds pulled back into the leg workspace
};

// FootstepTarget for every leg, clamped radially to each leg's reach at
// nominal height.
FootholdPlan FootstepTargets(const RobotModel& model, const ComCommand& cmd,
                             std::span<const Eigen::Vector2d> feet,
                             double margin = 0.0);

struct GaitPhase {
  bool is_swing = false;
  double local_phase = 0.0;  // position inside the current half cycle
};

// Tripod (hexapod) or diagonal-pair (quadruped) schedule: even legs swing on
// t in (0, 0.5], odd legs on (0.5, 1].
GaitPhase TripodPhase(int leg, double t, const RobotModel& model);

// Linear horizontal path with a half-sine lift; z is in the body frame.
Eigen::Vector3d SwingTrajectory(const Eigen::Vector2d& from,
                                const Eigen::Vector2d& to, double clearance,
                                double nominal_height, double local_phase);

struct ExpertTrajectory {
  int gait_id = 0;
  ComCommand command;
  Eigen::MatrixXd angles;    // N x joint_count, row n-1 at phase n/N
  Pose2 measured_com_delta;  // one simulated cycle from nominal stance
};

// Joint targets of one cycle following `cmd`; rows as in ExpertTrajectory.
// Angles are clamped to the joint limits; `clamp_count`, when given,
// receives the number of clamped footholds and joints.
Eigen::MatrixXd ExpertJointTable(const RobotModel& model,
                                 const ComCommand& cmd,
                                 const ExpertConfig& cfg,
                                 int* clamp_count = nullptr);

// Builds the joint table and validates it with one simulator cycle.
ExpertTrajectory GenerateExpert(const RobotModel& model, const ComCommand& cmd,
                                const ExpertConfig& cfg,
                                const SimConfig& sim_cfg, int gait_id = 0);

// Uniform draw: (dx, dy) on the disk of radius max_step, dyaw on
// [-max_yaw, max_yaw].
ComCommand SampleCommand(const CommandBounds& bounds, std::mt19937_64& rng);

std::vector<ExpertTrajectory> SampleExpertLibrary(
    const RobotModel& model, int count, const CommandBounds& bounds,
    std::uint64_t seed, const ExpertConfig& cfg, const SimConfig& sim_cfg);

}  // namespace latgait

#endif  // LATGAIT_EXPERT_H_
