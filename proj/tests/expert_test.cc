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
#include <set>

#include <gtest/gtest.h>

#include "latgait/expert.h"
#include "latgait/robot.h"
#include "latgait/sim.h"

namespace latgait {
namespace {

TEST(FootstepTarget, PureTranslation) {
  const Eigen::Vector2d f = FootstepTarget({0.1, 0.0, 0.0}, {0.5, 0.2});
  EXPECT_NEAR(f.x(), 0.6, 1e-12);
  EXPECT_NEAR(f.y(), 0.2, 1e-12);
}

TEST(FootstepTarget, PureRotation) {
  const Eigen::Vector2d f = FootstepTarget({0.0, 0.0, kPi / 2}, {1.0, 0.0});
  EXPECT_NEAR(f.x(), 0.0, 1e-12);
  EXPECT_NEAR(f.y(), 1.0, 1e-12);
}

// Reference from a direct trigonometric evaluation.
TEST(FootstepTarget, CombinedCommand) {
  const Eigen::Vector2d foot(0.4, 0.3);
  const Eigen::Vector2d delta = FootstepTarget({0.05, 0.05, 0.1}, foot) - foot;
  EXPECT_NEAR(delta.x(), 0.018051641117161857, 1e-12);
  EXPECT_NEAR(delta.y(), 0.08843461624213901, 1e-12);
}

TEST(FootstepTargets, ClampsUnreachableFootholds) {
  const RobotModel model = DeskHexapod();
  const auto feet3 = ForwardKinematics(model, model.nominal_stance_angles);
  std::vector<Eigen::Vector2d> feet;
  for (const auto& f : feet3) feet.push_back(f.head<2>());
  EXPECT_EQ(FootstepTargets(model, {0.05, 0.0, 0.0}, feet).clamped, 0);
  EXPECT_GT(FootstepTargets(model, {2.0, 0.0, 0.0}, feet).clamped, 0);
}

TEST(TripodPhase, ComplementaryTripods) {
  const RobotModel model = DeskHexapod();
  const GaitPhase a = TripodPhase(0, 0.25, model);
  EXPECT_TRUE(a.is_swing);
  EXPECT_NEAR(a.local_phase, 0.5, 1e-12);
  const GaitPhase b = TripodPhase(1, 0.25, model);
  EXPECT_FALSE(b.is_swing);
  EXPECT_NEAR(b.local_phase, 0.5, 1e-12);
}

TEST(TripodPhase, SecondHalfSwapsRoles) {
  const RobotModel model = DeskHexapod();
  EXPECT_FALSE(TripodPhase(0, 0.75, model).is_swing);
  EXPECT_TRUE(TripodPhase(1, 0.75, model).is_swing);
  EXPECT_NEAR(TripodPhase(1, 1.0, model).local_phase, 1.0, 1e-12);
}

TEST(TripodPhase, RejectsUnknownLeg) {
  EXPECT_THROW(TripodPhase(6, 0.5, DeskHexapod()), IndexOutOfRange);
}

TEST(SwingTrajectory, EndpointsAndApex) {
  const Eigen::Vector2d from(0.5, 0.1);
  const Eigen::Vector2d to(0.6, 0.2);
  const Eigen::Vector3d start = SwingTrajectory(from, to, 0.04, 0.25, 0.0);
  EXPECT_NEAR((start.head<2>() - from).norm(), 0.0, 1e-12);
  EXPECT_NEAR(start.z(), -0.25, 1e-12);
  const Eigen::Vector3d end = SwingTrajectory(from, to, 0.04, 0.25, 1.0);
  EXPECT_NEAR((end.head<2>() - to).norm(), 0.0, 1e-12);
  EXPECT_NEAR(end.z(), -0.25, 1e-12);
  const Eigen::Vector3d apex = SwingTrajectory(from, to, 0.04, 0.25, 0.5);
  EXPECT_NEAR((apex.head<2>() - 0.5 * (from + to)).norm(), 0.0, 1e-12);
  EXPECT_NEAR(apex.z(), -0.21, 1e-12);
}

class GenerateExpertTest : public ::testing::Test {
 protected:
  RobotModel model = DeskHexapod();
  ExpertConfig cfg;
  SimConfig sim;
};

TEST_F(GenerateExpertTest, NullCommandStaysPut) {
  const ExpertTrajectory e = GenerateExpert(model, {0.0, 0.0, 0.0}, cfg, sim);
  EXPECT_LT(std::hypot(e.measured_com_delta.x, e.measured_com_delta.y), 0.005);
  EXPECT_LT(std::abs(e.measured_com_delta.yaw), 0.01);
}

TEST_F(GenerateExpertTest, ForwardCommandWalksForward) {
  const ExpertTrajectory e = GenerateExpert(model, {0.1, 0.0, 0.0}, cfg, sim);
  EXPECT_GE(e.measured_com_delta.x, 0.08);
  EXPECT_LE(e.measured_com_delta.x, 0.12);
}

TEST_F(GenerateExpertTest, YawCommandTurns) {
  const ExpertTrajectory e = GenerateExpert(model, {0.0, 0.0, 0.1}, cfg, sim);
  EXPECT_GE(e.measured_com_delta.yaw, 0.08);
  EXPECT_LE(e.measured_com_delta.yaw, 0.12);
}

TEST_F(GenerateExpertTest, TrajectoryIsCyclicAndWithinLimits) {
  const ExpertTrajectory e = GenerateExpert(model, {0.07, -0.05, 0.2}, cfg, sim);
  ASSERT_EQ(e.angles.rows(), cfg.cycle_length);
  ASSERT_EQ(e.angles.cols(), model.joint_count());
  const Eigen::VectorXd last = e.angles.row(cfg.cycle_length - 1).transpose();
  EXPECT_LT((last - model.nominal_stance_angles).cwiseAbs().maxCoeff(), 1e-6);
  const Eigen::VectorXd lo = model.lower_limits();
  const Eigen::VectorXd hi = model.upper_limits();
  for (int n = 0; n < e.angles.rows(); ++n) {
    for (int j = 0; j < e.angles.cols(); ++j) {
      EXPECT_GE(e.angles(n, j), lo[j]);
      EXPECT_LE(e.angles(n, j), hi[j]);
    }
  }
}

TEST(SampleExpertLibrary, ReproducibleAndDistinct) {
  const RobotModel model = DeskHexapod();
  const auto a = SampleExpertLibrary(model, 8, CommandBounds{}, 7,
                                     ExpertConfig{}, SimConfig{});
  const auto b = SampleExpertLibrary(model, 8, CommandBounds{}, 7,
                                     ExpertConfig{}, SimConfig{});
  ASSERT_EQ(a.size(), 8u);
  std::set<std::pair<double, double>> commands;
  for (std::size_t g = 0; g < a.size(); ++g) {
    EXPECT_EQ(a[g].command, b[g].command);
    EXPECT_EQ(a[g].angles, b[g].angles);
    EXPECT_TRUE(CommandBounds{}.Contains(a[g].command));
    commands.insert({a[g].command.dx, a[g].command.dy});
  }
  EXPECT_EQ(commands.size(), 8u);
}

TEST(SampleExpertLibrary, SingleExpert) {
  const auto lib = SampleExpertLibrary(DeskHexapod(), 1, CommandBounds{}, 3,
                                       ExpertConfig{}, SimConfig{});
  EXPECT_EQ(lib.size(), 1u);
}

TEST(SampleExpertLibrary, ZeroCountRejected) {
  EXPECT_THROW(SampleExpertLibrary(DeskHexapod(), 0, CommandBounds{}, 3,
                                   ExpertConfig{}, SimConfig{}),
               InvalidConfig);
}

TEST(CommandBounds, ClampProjectsOntoDisk) {
  const CommandBounds bounds;
  const ComCommand c = bounds.Clamp({0.3, 0.4, -1.0});
  EXPECT_NEAR(std::hypot(c.dx, c.dy), bounds.max_step, 1e-12);
  EXPECT_NEAR(c.dyaw, -bounds.max_yaw, 1e-12);
  EXPECT_TRUE(bounds.Contains(c));
}

TEST(ExpertJointTable, QuadrupedTableCoversAllJoints) {
  const RobotModel model = DeskQuadruped();
  const Eigen::MatrixXd table =
      ExpertJointTable(model, {0.05, 0.0, 0.0}, ExpertConfig{});
  EXPECT_EQ(table.cols(), 12);
  EXPECT_EQ(table.rows(), 100);
}

}  // namespace
}  // namespace latgait
