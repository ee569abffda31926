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

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "latgait/checks.h"
#include "latgait/registration.h"
#include "latgait/robot.h"
#include "latgait/sim.h"

namespace latgait {
namespace {

// Desk hexapod with leg 0 mounted at (0.25, 0), facing +x.
RobotModel OffsetHipModel() {
  RobotModel model = DeskHexapod();
  model.hips[0] = {Eigen::Vector2d(0.25, 0.0), 0.0};
  return model;
}

void ExpectNear3(const Eigen::Vector3d& actual, const Eigen::Vector3d& expected,
                 double tol) {
  EXPECT_NEAR(actual.x(), expected.x(), tol);
  EXPECT_NEAR(actual.y(), expected.y(), tol);
  EXPECT_NEAR(actual.z(), expected.z(), tol);
}

TEST(ForwardKinematics, ZeroAnglesStretchAlongHipAxis) {
  const RobotModel model = OffsetHipModel();
  ExpectNear3(LegForwardKinematics(model, 0, Eigen::Vector3d::Zero()),
              {0.95, 0.0, 0.0}, 1e-12);
}

TEST(ForwardKinematics, QuarterTurnOfHipYaw) {
  const RobotModel model = OffsetHipModel();
  ExpectNear3(LegForwardKinematics(model, 0, {kPi / 2, 0.0, 0.0}),
              {0.25, 0.7, 0.0}, 1e-12);
}

// Reference values from an independent homogeneous-transform composition.
TEST(ForwardKinematics, MatchesTransformChain) {
  const RobotModel model = OffsetHipModel();
  ExpectNear3(LegForwardKinematics(model, 0, {0.3, -0.4, 0.8}),
              {0.8734875546813148, 0.1928673018433928, 0.0}, 1e-12);
  ExpectNear3(LegForwardKinematics(model, 0, {0.2, 0.5, 0.6}),
              {0.7393997787799261, 0.09920624653441529, -0.4111898695996915},
              1e-12);

  RobotModel yawed = DeskHexapod();
  yawed.hips[0] = {Eigen::Vector2d(0.55 * std::cos(kPi / 6),
                                   0.55 * std::sin(kPi / 6)),
                   kPi / 6};
  ExpectNear3(LegForwardKinematics(yawed, 0, {0.3, -0.4, 0.8}),
              {0.9198363824572029, 0.7537717602963969, 0.0}, 1e-12);
}

TEST(ForwardKinematics, RejectsWrongAngleCount) {
  const RobotModel model = DeskHexapod();
  EXPECT_THROW(ForwardKinematics(model, Eigen::VectorXd::Zero(5)),
               DimensionMismatch);
}

TEST(InverseKinematics, RecoversNominalStance) {
  const RobotModel model = DeskHexapod();
  const auto feet = ForwardKinematics(model, model.nominal_stance_angles);
  for (int leg = 0; leg < model.leg_count; ++leg) {
    const Eigen::Vector3d q = LegInverseKinematics(model, leg, feet[leg]);
    for (int j = 0; j < 3; ++j) {
      EXPECT_NEAR(q[j], model.nominal_stance_angles[3 * leg + j], 1e-9);
    }
  }
}

TEST(InverseKinematics, MaximumReachGivesStretchedLeg) {
  const RobotModel model = OffsetHipModel();
  const Eigen::Vector3d q = LegInverseKinematics(model, 0, {0.95, 0.0, 0.0});
  EXPECT_NEAR(q[0], 0.0, 1e-9);
  EXPECT_NEAR(q[1], 0.0, 1e-6);
  EXPECT_NEAR(q[2], 0.0, 1e-6);
}

TEST(InverseKinematics, UnreachableTargetReportsExcess) {
  const RobotModel model = OffsetHipModel();
  try {
    LegInverseKinematics(model, 0, {1.25, 0.0, 0.0});
    FAIL() << "expected Unreachable";
  } catch (const Unreachable& e) {
    EXPECT_EQ(e.leg(), 0);
    EXPECT_NEAR(e.excess(), 0.3, 1e-9);
  }
}

TEST(InverseKinematics, RoundTripOnRandomReachableTargets) {
  const RobotModel model = DeskHexapod();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int leg = i % model.leg_count;
    const Eigen::Vector3d q(0.6 * unit(rng), 0.6 * unit(rng),
                            0.2 + 0.5 * (unit(rng) + 1.0));
    const Eigen::Vector3d target = LegForwardKinematics(model, leg, q);
    const Eigen::Vector3d back =
        LegForwardKinematics(model, leg, LegInverseKinematics(model, leg, target));
    worst = std::max(worst, (back - target).norm());
  }
  EXPECT_LT(worst, 1e-9);
}

TEST(Registration, IdentityWhenFeetMatchAnchors) {
  const Pose2 prior{0.3, -0.2, 0.4};
  const std::vector<Eigen::Vector2d> body = {{0.5, 0.1}, {-0.3, 0.4}, {0.0, -0.6}};
  std::vector<Eigen::Vector2d> anchors;
  for (const auto& p : body) anchors.push_back(ToWorld(prior, p));
  const Pose2 update = RegisterStanceMotion(anchors, body, prior);
  EXPECT_NEAR(update.x, 0.0, 1e-12);
  EXPECT_NEAR(update.y, 0.0, 1e-12);
  EXPECT_NEAR(update.yaw, 0.0, 1e-12);
}

TEST(Registration, PureTranslation) {
  const std::vector<Eigen::Vector2d> anchors = {{0.5, 0.1}, {-0.3, 0.4}, {0.0, -0.6}};
  std::vector<Eigen::Vector2d> body;
  for (const auto& p : anchors) body.push_back(p - Eigen::Vector2d(0.05, 0.0));
  const Pose2 update = RegisterStanceMotion(anchors, body, Pose2{});
  EXPECT_NEAR(update.x, 0.05, 1e-12);
  EXPECT_NEAR(update.y, 0.0, 1e-12);
  EXPECT_NEAR(update.yaw, 0.0, 1e-12);
}

TEST(Registration, MatchesGridSearchOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(-0.8, 0.8);
  std::uniform_real_distribution<double> turn(-0.3, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Eigen::Vector2d> body(3);
    for (auto& p : body) p = {coord(rng), coord(rng)};
    const Pose2 motion{0.1 * coord(rng), 0.1 * coord(rng), turn(rng)};
    std::vector<Eigen::Vector2d> anchors;
    for (const auto& p : body) anchors.push_back(ToWorld(motion, p));
    const Pose2 update = RegisterStanceMotion(anchors, body, Pose2{});
    EXPECT_NEAR(update.x, motion.x, 1e-9);
    EXPECT_NEAR(update.y, motion.y, 1e-9);
    EXPECT_NEAR(update.yaw, motion.yaw, 1e-9);
    const Pose2 grid = RegistrationGridOracle(anchors, body, 0.0, 0.35, 7001);
    EXPECT_NEAR(update.yaw, grid.yaw, 1e-4);
    EXPECT_NEAR(update.x, grid.x, 1e-4);
  }
}

TEST(Registration, FewerThanTwoFeetThrows) {
  const std::vector<Eigen::Vector2d> one = {{0.1, 0.2}};
  try {
    RegisterStanceMotion(one, one, Pose2{});
    FAIL() << "expected InsufficientStance";
  } catch (const InsufficientStance& e) {
    EXPECT_EQ(e.count(), 1);
  }
}

TEST(Step, HoldingAnglesKeepsComStill) {
  const RobotModel model = DeskHexapod();
  SimState state = InitialState(model, ComState{}, 1);
  const SimState next =
      Step(state, model.nominal_stance_angles, SimConfig{}, model);
  EXPECT_NEAR(next.com.x, 0.0, 1e-12);
  EXPECT_NEAR(next.com.y, 0.0, 1e-12);
  EXPECT_NEAR(next.com.yaw, 0.0, 1e-12);
  EXPECT_EQ(next.instability_events, 0);
}

TEST(Step, IdenticalInputsGiveIdenticalStates) {
  const RobotModel model = DeskHexapod();
  SimConfig cfg;
  cfg.registration_noise_std = 1e-3;
  const SimState a = InitialState(model, ComState{}, 5);
  Eigen::VectorXd q = model.nominal_stance_angles;
  q[0] += 0.02;
  EXPECT_EQ(Step(a, q, cfg, model), Step(a, q, cfg, model));
}

// Tripod A (legs 0, 2, 4) slides its feet 2 cm backward while tripod B
// (legs 1, 3, 5) is lifted clear of the ground: the body moves 2 cm forward.
TEST(Step, AnchoredTripodSweepAdvancesCom) {
  const RobotModel model = DeskHexapod();
  SimConfig cfg;
  cfg.servo_rate_limit = 1e6;
  const SimState start = InitialState(model, ComState{}, 2);
  const auto feet = ForwardKinematics(model, model.nominal_stance_angles);
  Eigen::VectorXd q = model.nominal_stance_angles;
  for (int leg = 0; leg < model.leg_count; ++leg) {
    Eigen::Vector3d target = feet[leg];
    if (leg % 2 == 0) {
      target.x() -= 0.02;
    } else {
      target.z() += 0.03;
    }
    q.segment<3>(3 * leg) = LegInverseKinematics(model, leg, target);
  }
  const SimState next = Step(start, q, cfg, model);
  EXPECT_NEAR(next.com.x, 0.02, 1e-9);
  EXPECT_NEAR(next.com.y, 0.0, 1e-9);
  EXPECT_NEAR(next.com.yaw, 0.0, 1e-9);
  EXPECT_EQ(next.stance_mask(), 0b010101u);
}

TEST(Step, DisabledLegsHoldTheirAngles) {
  RobotModel model = DeskHexapod();
  model.disabled_legs = {2, 3};
  const SimState start = InitialState(model, ComState{}, 4);
  Eigen::VectorXd q = model.nominal_stance_angles;
  q.array() += 0.01;
  const SimState next = Step(start, q, SimConfig{}, model);
  for (int leg : {2, 3}) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(next.joint_angles[3 * leg + j],
                model.nominal_stance_angles[3 * leg + j]);
    }
  }
}

TEST(RolloutCycle, DeterministicAndRecordsEveryTick) {
  const RobotModel model = DeskHexapod();
  Eigen::MatrixXd commands(100, model.joint_count());
  for (int n = 0; n < 100; ++n) {
    commands.row(n) = model.nominal_stance_angles.transpose();
    commands(n, 1) += 0.1 * std::sin(2 * kPi * (n + 1) / 100.0);
  }
  SimState a = InitialState(model, ComState{}, 9);
  SimState b = InitialState(model, ComState{}, 9);
  const CycleResult ra = RolloutCycle(a, commands, SimConfig{}, model, true);
  const CycleResult rb = RolloutCycle(b, commands, SimConfig{}, model, true);
  EXPECT_EQ(ra.end, rb.end);
  EXPECT_EQ(ra.log.size(), 100u);
  EXPECT_EQ(a, b);
}

TEST(SimConfig, RejectsNonPositiveTimestep) {
  SimConfig cfg;
  cfg.dt = 0.0;
  EXPECT_THROW(cfg.Validate(), InvalidConfig);
}

}  // namespace
}  // namespace latgait
