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

#include "latgait/robot.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace latgait {

Eigen::VectorXd RobotModel::lower_limits() const {
  Eigen::VectorXd lo(joint_count());
  for (int leg = 0; leg < leg_count; ++leg) {
    for (int j = 0; j < kJointsPerLeg; ++j) {
      lo[leg * kJointsPerLeg + j] = joint_limits[leg][j].min;
    }
  }
  return lo;
}

Eigen::VectorXd RobotModel::upper_limits() const {
  Eigen::VectorXd hi(joint_count());
  for (int leg = 0; leg < leg_count; ++leg) {
    for (int j = 0; j < kJointsPerLeg; ++j) {
      hi[leg * kJointsPerLeg + j] = joint_limits[leg][j].max;
    }
  }
  return hi;
}

Eigen::VectorXd RobotModel::ClampToLimits(const Eigen::VectorXd& q) const {
  return q.cwiseMax(lower_limits()).cwiseMin(upper_limits());
}

void RobotModel::Validate() const {
  if (leg_count != 4 && leg_count != 6) {
    throw InvalidConfig("leg_count must be 4 or 6, got " +
                        std::to_string(leg_count));
  }
  if (static_cast<int>(hips.size()) != leg_count ||
      static_cast<int>(joint_limits.size()) != leg_count) {
    throw InvalidConfig("per-leg arrays must have leg_count entries");
  }
  for (double l : link_lengths) {
    if (!(l > 0.0)) throw InvalidConfig("link lengths must be positive");
  }
  if (!(nominal_height > 0.0)) {
    throw InvalidConfig("nominal_height must be positive");
  }
  if (nominal_stance_angles.size() != joint_count()) {
    throw InvalidConfig("nominal_stance_angles has wrong size");
  }
  const Eigen::VectorXd lo = lower_limits();
  const Eigen::VectorXd hi = upper_limits();
  if ((lo.array() > hi.array()).any()) {
    throw InvalidConfig("joint limit min exceeds max");
  }
  if ((nominal_stance_angles.array() < lo.array()).any() ||
      (nominal_stance_angles.array() > hi.array()).any()) {
    throw InvalidConfig("nominal stance angles violate joint limits");
  }
  for (int leg : disabled_legs) {
    if (leg < 0 || leg >= leg_count) {
      throw InvalidConfig("disabled leg index out of range: " +
                          std::to_string(leg));
    }
  }
}

RobotModel MakeRobot(const RobotGeometry& geometry) {
  RobotModel model;
  model.link_lengths = geometry.link_lengths;
  model.nominal_height = geometry.nominal_height;
  model.disabled_legs = geometry.disabled_legs;

  if (geometry.morphology == RobotGeometry::Morphology::kHexapod) {
    model.leg_count = 6;
    // Legs alternate around the hexagon so {0,2,4} and {1,3,5} form tripods.
    for (int leg = 0; leg < 6; ++leg) {
      const double yaw = kPi / 6.0 + leg * kPi / 3.0;
      model.hips.push_back(
          {geometry.hip_radius * Eigen::Vector2d(std::cos(yaw), std::sin(yaw)),
           yaw});
    }
  } else {
    model.leg_count = 4;
    // FL, FR, HR, HL: diagonal pairs {0,2} and {1,3}.
    const double hx = 0.5 * geometry.body_length;
    const double hy = 0.5 * geometry.body_width;
    const std::array<Eigen::Vector2d, 4> corners = {
        Eigen::Vector2d(hx, hy), Eigen::Vector2d(hx, -hy),
        Eigen::Vector2d(-hx, -hy), Eigen::Vector2d(-hx, hy)};
    for (const auto& c : corners) {
      model.hips.push_back({c, std::atan2(c.y(), c.x())});
    }
  }

  const JointRange range{-geometry.joint_limit, geometry.joint_limit};
  model.joint_limits.assign(model.leg_count, {range, range, range});

  model.nominal_stance_angles = Eigen::VectorXd::Zero(model.joint_count());
  for (int leg = 0; leg < model.leg_count; ++leg) {
    const LegMount& hip = model.hips[leg];
    const Eigen::Vector2d foot =
        hip.position + Rotate(hip.yaw, {geometry.nominal_reach, 0.0});
    const Eigen::Vector3d q = LegInverseKinematics(
        model, leg, {foot.x(), foot.y(), -geometry.nominal_height});
    model.nominal_stance_angles.segment<3>(leg * kJointsPerLeg) = q;
  }
  model.Validate();
  return model;
}

RobotModel DeskHexapod() { return MakeRobot(RobotGeometry{}); }

RobotModel DeskQuadruped() {
  RobotGeometry g;
  g.morphology = RobotGeometry::Morphology::kQuadruped;
  return MakeRobot(g);
}

std::set<int> HindLegs(const RobotModel& model) {
  std::vector<int> order(model.leg_count);
  for (int i = 0; i < model.leg_count; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return model.hips[a].position.x() < model.hips[b].position.x();
  });
  return {order[0], order[1]};
}

Eigen::Vector3d LegForwardKinematics(const RobotModel& model, int leg,
                                     const Eigen::Vector3d& q) {
  const auto [l1, l2, l3] = model.link_lengths;
  const LegMount& hip = model.hips[leg];
  const double reach = l1 + l2 * std::cos(q[1]) + l3 * std::cos(q[1] + q[2]);
  const double drop = l2 * std::sin(q[1]) + l3 * std::sin(q[1] + q[2]);
  const Eigen::Vector2d xy = hip.position + Rotate(hip.yaw + q[0], {reach, 0.0});
  return {xy.x(), xy.y(), -drop};
}

std::vector<Eigen::Vector3d> ForwardKinematics(const RobotModel& model,
                                               const Eigen::VectorXd& q) {
  if (q.size() != model.joint_count()) {
    throw DimensionMismatch("joint vector size " + std::to_string(q.size()) +
                            " != " + std::to_string(model.joint_count()));
  }
  std::vector<Eigen::Vector3d> feet(model.leg_count);
  for (int leg = 0; leg < model.leg_count; ++leg) {
    feet[leg] = LegForwardKinematics(model, leg,
                                     q.segment<3>(leg * kJointsPerLeg));
  }
  return feet;
}

Eigen::Vector3d LegInverseKinematics(const RobotModel& model, int leg,
                                     const Eigen::Vector3d& target) {
  const auto [l1, l2, l3] = model.link_lengths;
  const LegMount& hip = model.hips[leg];
  const Eigen::Vector2d local =
      Rotate(-hip.yaw, target.head<2>() - hip.position);
  const double q1 = std::atan2(local.y(), local.x());
  const double d = local.norm() - l1;
  const double h = -target.z();
  const double r2 = d * d + h * h;
  const double r = std::sqrt(r2);

  constexpr double kSlack = 1e-12;
  if (r > l2 + l3 + kSlack) throw Unreachable(leg, r - (l2 + l3));
  if (r < std::abs(l2 - l3) - kSlack) {
    throw Unreachable(leg, std::abs(l2 - l3) - r);
  }
  const double c3 =
      std::clamp((r2 - l2 * l2 - l3 * l3) / (2.0 * l2 * l3), -1.0, 1.0);
  const double q3 = std::acos(c3);
  const double q2 = std::atan2(h, d) -
                    std::atan2(l3 * std::sin(q3), l2 + l3 * std::cos(q3));
  return {q1, q2, q3};
}

ReachAnnulus HorizontalReach(const RobotModel& model, int leg, double depth,
                             double margin) {
  const auto [l1, l2, l3] = model.link_lengths;
  const double outer = l2 + l3;
  // The elbow limit bounds how far the leg can fold.
  const double fold = std::min(kPi, model.joint_limits[leg][2].max);
  const double inner =
      std::sqrt(l2 * l2 + l3 * l3 + 2.0 * l2 * l3 * std::cos(fold));
  ReachAnnulus annulus;
  annulus.max = l1 + std::sqrt(std::max(0.0, outer * outer - depth * depth));
  annulus.min =
      l1 + std::sqrt(std::max(0.0, inner * inner - depth * depth));
  annulus.max -= margin;
  annulus.min += margin;
  return annulus;
}

}  // namespace latgait
