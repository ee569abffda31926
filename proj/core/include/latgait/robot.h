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

#ifndef LATGAIT_ROBOT_H_
#define LATGAIT_ROBOT_H_

#include <array>
#include <set>
#include <vector>

#include <Eigen/Core>

#include "latgait/types.h"

namespace latgait {

// Three joints per leg: hip yaw, shoulder pitch, elbow pitch.
inline constexpr int kJointsPerLeg = 3;

struct LegMount {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();  // body frame, m
  double yaw = 0.0;                                    // rad
};

struct JointRange {
  double min = -1.57;
  double max = 1.57;
};

// Leg geometry and joint layout of a legged robot. Joint vectors are laid out
// leg-major: [leg0 (q1,q2,q3), leg1 (q1,q2,q3), ...].
//
// Forward kinematics convention: with all joints at zero the leg is fully
// stretched horizontally along the mount axis. q1 yaws the leg about the body
// z axis, positive q2 and q3 pitch the distal links downwards.
struct RobotModel {
  int leg_count = 6;
  std::vector<LegMount> hips;
  std::array<double, 3> link_lengths = {0.1, 0.3, 0.3};
  std::vector<std::array<JointRange, kJointsPerLeg>> joint_limits;
  double nominal_height = 0.25;
  Eigen::VectorXd nominal_stance_angles;
  std::set<int> disabled_legs;

  int joint_count() const { return leg_count * kJointsPerLeg; }
  bool is_disabled(int leg) const { return disabled_legs.contains(leg); }

  Eigen::VectorXd lower_limits() const;
  Eigen::VectorXd upper_limits() const;
  Eigen::VectorXd ClampToLimits(const Eigen::VectorXd& q) const;

  // Throws InvalidConfig when an invariant does not hold.
  void Validate() const;
};

// Parameters of the built-in robot families.
struct RobotGeometry {
  enum class Morphology { kHexapod, kQuadruped };
  Morphology morphology = Morphology::kHexapod;
  double hip_radius = 0.55;      // hexapod hexagon radius
  double body_length = 0.5;      // quadruped hip rectangle
  double body_width = 0.3;
  std::array<double, 3> link_lengths = {0.1, 0.3, 0.3};
  double nominal_height = 0.25;
  // Horizontal distance from hip to foot in nominal stance.
  double nominal_reach = 0.55;
  double joint_limit = 1.57;
  std::set<int> disabled_legs;
};

RobotModel MakeRobot(const RobotGeometry& geometry);
RobotModel DeskHexapod();
RobotModel DeskQuadruped();

// The two rearmost legs (most negative hip x), used by the adverse setting.
std::set<int> HindLegs(const RobotModel& model);

// Foot position of one leg in the body frame.
Eigen::Vector3d LegForwardKinematics(const RobotModel& model, int leg,
                                     const Eigen::Vector3d& q);

// Foot positions of all legs in the body frame.
std::vector<Eigen::Vector3d> ForwardKinematics(const RobotModel& model,
                                               const Eigen::VectorXd& q);

// Joint angles placing the foot of `leg` at `target` (body frame). Chooses the
// branch with q3 >= 0 (knee above the hip-foot line). Throws Unreachable.
Eigen::Vector3d LegInverseKinematics(const RobotModel& model, int leg,
                                     const Eigen::Vector3d& target);

// Horizontal hip-to-foot distance range reachable by `leg` with the foot at
// depth `depth` below the hip, within the elbow limit, shrunk by `margin` on
// both ends.
struct ReachAnnulus {
  double min = 0.0;
  double max = 0.0;
};
ReachAnnulus HorizontalReach(const RobotModel& model, int leg, double depth,
                             double margin = 0.0);

}  // namespace latgait

#endif  // LATGAIT_ROBOT_H_
