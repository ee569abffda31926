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
#include <memory>

#include <gtest/gtest.h>

#include "latgait/action.h"
#include "latgait/checks.h"
#include "latgait/dynamics.h"
#include "latgait/planner.h"
#include "latgait/robot.h"

namespace latgait {
namespace {

std::shared_ptr<const DynamicsModel> CommandDynamics(std::uint64_t seed) {
  DynamicsModel model = RandomDynamics(3, seed);
  model.action_kind = ActionKind::kCommand;
  return std::make_shared<const DynamicsModel>(std::move(model));
}

ActionSpace UnitBox() {
  ActionSpace space;
  space.kind = ActionKind::kLatent;
  space.lo = -Eigen::Vector2d::Ones();
  space.hi = Eigen::Vector2d::Ones();
  return space;
}

TEST(CostVelocity, ExactTrackingIsFree) {
  const TaskSpec task = TaskSpec::Velocity(0.0, 0.2);
  EXPECT_EQ(CostVelocity({0.0, 0.0, 0.0, 0.0, 0.2}, task), 0.0);
}

TEST(CostVelocity, WeightedErrors) {
  const TaskSpec task = TaskSpec::Velocity(0.2, 0.0);
  EXPECT_NEAR(CostVelocity({0.0, 0.0, 0.1, 0.0, 0.0}, task), 0.5, 1e-12);
}

TEST(CostVelocity, BodyVelocityIsRotatedToWorld) {
  const TaskSpec task = TaskSpec::Velocity(0.0, 0.2, kPi / 2);
  EXPECT_NEAR(CostVelocity({0.0, 0.0, kPi / 2, 0.2, 0.0}, task), 0.0, 1e-12);
}

TEST(CostVelocity, YawErrorWraps) {
  const TaskSpec task = TaskSpec::Velocity(0.0, 0.0, kPi - 0.05);
  EXPECT_NEAR(CostVelocity({0.0, 0.0, -kPi + 0.05, 0.0, 0.0}, task), 0.1,
              1e-12);
}

TEST(CostGoal, AtGoalIsFree) {
  const TaskSpec task = TaskSpec::Goal(1.0, 2.0, 0.5);
  EXPECT_EQ(CostGoal({1.0, 2.0, 0.5, 0.3, 0.0}, task), 0.0);
}

TEST(CostGoal, OneMetreAway) {
  const TaskSpec task = TaskSpec::Goal(1.0, 0.0, 0.0);
  EXPECT_NEAR(CostGoal(ComState{}, task), 2.0, 1e-12);
}

TEST(CostGoal, WrongKindThrows) {
  EXPECT_THROW(CostGoal(ComState{}, TaskSpec::Velocity(0.1, 0.0)),
               WrongTaskKind);
}

TEST(CostTrajectory, OnScheduleIsFree) {
  const TaskSpec task = TaskSpec::Trajectory(DefaultSCurve());
  const Pose2 p = task.waypoints[7];
  EXPECT_NEAR(CostTrajectory({p.x, p.y, p.yaw, 0.0, 0.0}, task, 7), 0.0,
              1e-12);
}

TEST(CostTrajectory, LaggingOneWaypoint) {
  const TaskSpec task = TaskSpec::Trajectory(
      {{0.0, 0.0, 0.0}, {0.1, 0.0, 0.0}, {0.2, 0.0, 0.0}});
  EXPECT_NEAR(CostTrajectory({0.1, 0.0, 0.0, 0.0, 0.0}, task, 2), 0.2, 1e-12);
}

TEST(CostTrajectory, IndexBeyondLastWaypointClamps) {
  const TaskSpec task = TaskSpec::Trajectory(
      {{0.0, 0.0, 0.0}, {0.1, 0.0, 0.0}, {0.2, 0.0, 0.0}});
  EXPECT_NEAR(CostTrajectory({0.2, 0.0, 0.0, 0.0, 0.0}, task, 50), 0.0, 1e-12);
}

TEST(DefaultSCurve, FortyOnePointsAlongTheSine) {
  const auto wps = DefaultSCurve();
  ASSERT_EQ(wps.size(), 41u);
  EXPECT_NEAR(wps[5].x, 0.5, 1e-12);
  EXPECT_NEAR(wps[5].y, 0.5, 1e-12);
  EXPECT_NEAR(wps[40].x, 4.0, 1e-12);
  EXPECT_NEAR(wps[0].yaw, std::atan2(0.5 * kPi, 1.0), 1e-12);
}

TEST(GoalReached, UsesBothTolerances) {
  const TaskSpec task = TaskSpec::Goal(1.0, 0.0, 0.0);
  EXPECT_TRUE(GoalReached({0.95, 0.0, 0.1, 0.0, 0.0}, task));
  EXPECT_FALSE(GoalReached({0.85, 0.0, 0.0, 0.0, 0.0}, task));
  EXPECT_FALSE(GoalReached({1.0, 0.0, 0.3, 0.0, 0.0}, task));
}

TEST(RandomShooting, ConstantCostKeepsFirstSample) {
  const DynamicsModel model = RandomDynamics(2, 3);
  PlanConfig cfg;
  cfg.samples = 500;
  cfg.seed = 9;
  const ShootingResult r = RandomShooting(
      model, ComState{}, [](const ComState&, int) { return 1.5; }, UnitBox(),
      cfg);
  EXPECT_EQ(r.index, 0);
  EXPECT_EQ(r.cost, 1.5);
  std::mt19937_64 rng(cfg.seed);
  EXPECT_EQ(r.actions.col(0), UnitBox().Sample(rng));
}

TEST(RandomShooting, FewerSamplesSeeAPrefix) {
  const DynamicsModel model = RandomDynamics(2, 4);
  const TaskSpec task = TaskSpec::Goal(1.0, 1.0, 0.0);
  const StepCostFn cost = [&](const ComState& s, int) {
    return CostGoal(s, task);
  };
  PlanConfig small;
  small.samples = 200;
  small.horizon = 3;
  PlanConfig large = small;
  large.samples = 2000;
  const ShootingResult a = RandomShooting(model, ComState{}, cost, UnitBox(), small);
  const ShootingResult b = RandomShooting(model, ComState{}, cost, UnitBox(), large);
  EXPECT_LE(b.cost, a.cost);
  if (b.index < small.samples) {
    EXPECT_EQ(a.index, b.index);
  }
  EXPECT_EQ(b.actions.cols(), 3);
}

TEST(RandomShooting, ThreadCountDoesNotChangeResult) {
  const DynamicsModel model = RandomDynamics(2, 5);
  const TaskSpec task = TaskSpec::Goal(-1.0, 0.5, 1.0);
  const StepCostFn cost = [&](const ComState& s, int) {
    return CostGoal(s, task);
  };
  PlanConfig one;
  one.samples = 3000;
  PlanConfig four = one;
  four.threads = 4;
  const ShootingResult a = RandomShooting(model, ComState{}, cost, UnitBox(), one);
  const ShootingResult b = RandomShooting(model, ComState{}, cost, UnitBox(), four);
  EXPECT_EQ(a.index, b.index);
  EXPECT_EQ(a.cost, b.cost);
}

TEST(RandomShooting, NearQuadraticOptimum) {
  PlanConfig cfg;
  const QuadraticReport r = CheckSyntheticQuadratic(cfg, 7);
  EXPECT_LE(r.gap, 0.02);
  EXPECT_GE(r.gap, 0.0);
}

TEST(RandomShooting, NearGridSearchOptimum) {
  const DynamicsModel model = RandomDynamics(2, 8);
  const OracleReport r = CheckShootingOracle(model, UnitBox(), PlanConfig{}, 5, 8);
  EXPECT_LE(r.max_gap, 0.02);
}

TEST(RandomShooting, RejectsMismatchedSpace) {
  const DynamicsModel model = RandomDynamics(3, 1);
  EXPECT_THROW(RandomShooting(model, ComState{},
                              [](const ComState&, int) { return 0.0; },
                              UnitBox(), PlanConfig{}),
               DimensionMismatch);
}

TEST(PlanConfig, RejectsNonPositiveSamples) {
  PlanConfig cfg;
  cfg.samples = 0;
  EXPECT_THROW(cfg.Validate(), InvalidConfig);
}

TEST(MpcRollout, GoalAlreadySatisfiedTakesNoSteps) {
  const RobotModel model = DeskHexapod();
  Planner planner;
  planner.dynamics = CommandDynamics(2);
  planner.controller = std::make_shared<const CommandController>(
      model, ExpertConfig{}, CommandBounds{});
  planner.space = ActionSpace::Commands(CommandBounds{});
  SimState state = InitialState(model, ComState{}, 0);
  const EpisodeLog log = MpcRollout(state, model, SimConfig{}, planner,
                                    TaskSpec::Goal(0.0, 0.0, 0.0), PlanConfig{},
                                    60);
  EXPECT_TRUE(log.reached);
  EXPECT_EQ(log.steps_to_goal, 0);
  EXPECT_TRUE(log.steps.empty());
}

TEST(MpcRollout, VelocityEpisodeRunsAllSteps) {
  const RobotModel model = DeskHexapod();
  Planner planner;
  planner.dynamics = CommandDynamics(2);
  planner.controller = std::make_shared<const CommandController>(
      model, ExpertConfig{}, CommandBounds{});
  planner.space = ActionSpace::Commands(CommandBounds{});
  SimState state = InitialState(model, ComState{}, 0);
  PlanConfig cfg;
  cfg.samples = 100;
  const EpisodeLog log = MpcRollout(state, model, SimConfig{}, planner,
                                    TaskSpec::Velocity(0.1, 0.0), cfg, 3);
  EXPECT_EQ(log.steps.size(), 3u);
  EXPECT_EQ(log.ticks.size(), 300u);
  EXPECT_NEAR(log.mean_step_cost(), log.total_cost / 3.0, 1e-12);
}

TEST(DeriveSeed, StreamsDiffer) {
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  EXPECT_EQ(DeriveSeed(5, 3), DeriveSeed(5, 3));
}

}  // namespace
}  // namespace latgait
