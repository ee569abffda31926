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

#include "latgait/sim.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "latgait/registration.h"

namespace latgait {

void SimConfig::Validate() const {
  if (!(dt > 0.0)) throw InvalidConfig("sim.dt must be positive");
  if (!(slip_gain >= 0.0 && slip_gain <= 1.0)) {
    throw InvalidConfig("sim.slip_gain must lie in [0, 1]");
  }
  if (!(servo_rate_limit >= 0.0) || !(contact_epsilon >= 0.0) ||
      !(slip_threshold >= 0.0) || !(registration_noise_std >= 0.0)) {
    throw InvalidConfig("sim tolerances must be nonnegative");
  }
  if (!(velocity_smoothing > 0.0 && velocity_smoothing <= 1.0)) {
    throw InvalidConfig("sim.velocity_smoothing must lie in (0, 1]");
  }
}

std::uint32_t SimState::stance_mask() const {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < stance.size(); ++i) {
    if (stance[i]) mask |= 1u << i;
  }
  return mask;
}

SimState InitialState(const RobotModel& model, const ComState& com,
                      std::uint64_t seed) {
  SimState state;
  state.com = com;
  state.com.vx = 0.0;
  state.com.vy = 0.0;
  state.joint_angles = model.nominal_stance_angles;
  state.rng.seed(seed);
  const auto feet = ForwardKinematics(model, state.joint_angles);
  state.foot_anchors.resize(model.leg_count);
  state.stance.assign(model.leg_count, true);
  for (int leg = 0; leg < model.leg_count; ++leg) {
    state.foot_anchors[leg] = ToWorld(com.pose(), feet[leg].head<2>());
  }
  return state;
}

void StepInPlace(SimState& state, const Eigen::VectorXd& q_des,
                 const SimConfig& cfg, const RobotModel& model) {
  const int legs = model.leg_count;
  if (q_des.size() != model.joint_count()) {
    throw DimensionMismatch("q_des has " + std::to_string(q_des.size()) +
                            " entries, expected " +
                            std::to_string(model.joint_count()));
  }

  // Servo towards the clamped target; disabled legs hold nominal stance.
  const double max_move = cfg.servo_rate_limit * cfg.dt;
  const Eigen::VectorXd target = model.ClampToLimits(q_des);
  for (int leg = 0; leg < legs; ++leg) {
    for (int j = 0; j < kJointsPerLeg; ++j) {
      const int idx = leg * kJointsPerLeg + j;
      if (model.is_disabled(leg)) {
        state.joint_angles[idx] = model.nominal_stance_angles[idx];
        continue;
      }
      const double move = std::clamp(target[idx] - state.joint_angles[idx],
                                     -max_move, max_move);
      state.joint_angles[idx] += move;
    }
  }

  const auto feet = ForwardKinematics(model, state.joint_angles);
  const Pose2 prior = state.com.pose();

  // Contact by height at the fixed body height; new contacts anchor where
  // they touch down.
  std::vector<Eigen::Vector2d> anchors;
  std::vector<Eigen::Vector2d> body_feet;
  std::vector<int> stance_legs;
  for (int leg = 0; leg < legs; ++leg) {
    const double height = model.nominal_height + feet[leg].z();
    const bool contact = height <= cfg.ground_height + cfg.contact_epsilon;
    state.stance[leg] = contact;
    if (!contact) {
      state.foot_anchors[leg].reset();
      continue;
    }
    if (!state.foot_anchors[leg]) {
      state.foot_anchors[leg] = ToWorld(prior, feet[leg].head<2>());
    }
    anchors.push_back(*state.foot_anchors[leg]);
    body_feet.push_back(feet[leg].head<2>());
    stance_legs.push_back(leg);
  }

  Pose2 delta;
  if (stance_legs.size() >= 2) {
    delta = RegisterStanceMotion(anchors, body_feet, prior);
    if (cfg.registration_noise_std > 0.0) {
      std::normal_distribution<double> noise(0.0, cfg.registration_noise_std);
      delta.x += noise(state.rng);
      delta.y += noise(state.rng);
      delta.yaw += noise(state.rng);
    }
  } else {
    ++state.instability_events;
  }

  const Pose2 next{prior.x + delta.x, prior.y + delta.y,
                   WrapAngle(prior.yaw + delta.yaw)};

  // Slip: anchors that disagree with the registered pose are dragged.
  for (std::size_t i = 0; i < stance_legs.size(); ++i) {
    const int leg = stance_legs[i];
    const Eigen::Vector2d world = ToWorld(next, body_feet[i]);
    const Eigen::Vector2d residual = world - *state.foot_anchors[leg];
    if (residual.norm() > cfg.slip_threshold) {
      *state.foot_anchors[leg] += cfg.slip_gain * residual;
    }
  }

  const Eigen::Vector2d v_inst =
      Rotate(-prior.yaw, {delta.x, delta.y}) / cfg.dt;
  const double a = cfg.velocity_smoothing;
  state.com.x = next.x;
  state.com.y = next.y;
  state.com.yaw = next.yaw;
  state.com.vx = (1.0 - a) * state.com.vx + a * v_inst.x();
  state.com.vy = (1.0 - a) * state.com.vy + a * v_inst.y();
  ++state.step_index;
}

SimState Step(const SimState& state, const Eigen::VectorXd& q_des,
              const SimConfig& cfg, const RobotModel& model) {
  SimState next = state;
  StepInPlace(next, q_des, cfg, model);
  return next;
}

CycleResult RolloutCycle(SimState& state, const Eigen::MatrixXd& commands,
                         const SimConfig& cfg, const RobotModel& model,
                         bool record) {
  if (commands.cols() != model.joint_count()) {
    throw DimensionMismatch("command table has " +
                            std::to_string(commands.cols()) +
                            " columns, expected " +
                            std::to_string(model.joint_count()));
  }
  CycleResult result;
  if (record) result.log.reserve(commands.rows());
  Eigen::VectorXd q_des(commands.cols());
  for (Eigen::Index n = 0; n < commands.rows(); ++n) {
    q_des = commands.row(n).transpose();
    StepInPlace(state, q_des, cfg, model);
    if (record) {
      result.log.push_back({state.step_index, state.com, state.stance_mask(),
                            state.joint_angles});
    }
  }
  result.end = state.com;
  return result;
}

Simulator::Simulator(RobotModel model, SimConfig cfg, std::uint64_t seed)
    : model_(std::move(model)), cfg_(cfg), seed_(seed) {
  model_.Validate();
  cfg_.Validate();
  Reset();
}

void Simulator::Reset(const ComState& com) { Reset(com, seed_); }

void Simulator::Reset(const ComState& com, std::uint64_t seed) {
  seed_ = seed;
  state_ = InitialState(model_, com, seed);
}

}  // namespace latgait
