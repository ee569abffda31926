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
#include <vector>

#include <gtest/gtest.h>

#include "latgait/checks.h"
#include "latgait/config.h"
#include "latgait/expert.h"
#include "latgait/harness.h"
#include "latgait/robot.h"
#include "latgait/sim.h"

namespace latgait {
namespace {

std::vector<StepRecord> ExpertTicks(const RobotModel& model, int cycles) {
  const Eigen::MatrixXd table =
      ExpertJointTable(model, {0.08, 0.0, 0.0}, ExpertConfig{});
  SimState state = InitialState(model, ComState{}, 0);
  std::vector<StepRecord> ticks;
  for (int c = 0; c < cycles; ++c) {
    const CycleResult r = RolloutCycle(state, table, SimConfig{}, model, true);
    ticks.insert(ticks.end(), r.log.begin(), r.log.end());
  }
  return ticks;
}

TEST(ExtractGaitPattern, TripodExpertAlternatesComplementaryTripods) {
  const RobotModel model = DeskHexapod();
  const GaitPattern g = ExtractGaitPattern(ExpertTicks(model, 3), 6, 100);
  ASSERT_EQ(g.duty.size(), 3u);
  for (const auto& cycle : g.dominant) {
    EXPECT_EQ(cycle, (std::vector<std::uint32_t>{0b010101u, 0b101010u}));
  }
  for (double d : g.duty[1]) {
    EXPECT_GT(d, 0.4);
    EXPECT_LT(d, 0.7);
  }
  EXPECT_FALSE(g.any_gait_change());
}

TEST(ExtractGaitPattern, AllFeetDownGivesFullDuty) {
  const RobotModel model = DeskHexapod();
  std::vector<StepRecord> ticks(200);
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    ticks[i].step = static_cast<std::int64_t>(i + 1);
    ticks[i].stance_mask = 0b111111u;
  }
  const GaitPattern g = ExtractGaitPattern(ticks, 6, 100);
  for (const auto& leg : g.stance) {
    for (bool s : leg) EXPECT_TRUE(s);
  }
  for (const auto& cycle : g.duty) {
    for (double d : cycle) EXPECT_EQ(d, 1.0);
  }
  EXPECT_EQ(g.dominant[0], std::vector<std::uint32_t>{0b111111u});
}

TEST(ExtractGaitPattern, FlagsChangeOfDominantMasks) {
  std::vector<StepRecord> ticks(200);
  for (std::size_t i = 0; i < ticks.size(); ++i) {
    ticks[i].stance_mask = i < 100 ? 0b111111u : 0b110011u;
  }
  const GaitPattern g = ExtractGaitPattern(ticks, 6, 100);
  ASSERT_EQ(g.gait_change.size(), 1u);
  EXPECT_TRUE(g.gait_change[0]);
}

// Command-space planner over a fixed random dynamics model: cheap enough to
// exercise the suite plumbing.
Method CheapMethod(const ConfigFile& cfg, const std::string& name,
                   std::uint64_t seed) {
  Planner p;
  DynamicsModel model = RandomDynamics(3, seed);
  model.action_kind = ActionKind::kCommand;
  p.dynamics = std::make_shared<const DynamicsModel>(std::move(model));
  p.controller = std::make_shared<const CommandController>(
      cfg.Robot(), cfg.expert.gait, cfg.expert.bounds);
  p.space = ActionSpace::Commands(cfg.expert.bounds);
  return {name, p};
}

ConfigFile CheapConfig() {
  ConfigFile cfg;
  cfg.planner.plan.samples = 64;
  cfg.planner.plan.threads = 1;
  cfg.harness.velocity_steps = 2;
  cfg.harness.goal_max_steps = 2;
  cfg.harness.trajectory_steps = 2;
  return cfg;
}

TEST(RunSuite, NoTasksGivesEmptyResult) {
  const ConfigFile cfg = CheapConfig();
  const SuiteResult r = RunSuite({CheapMethod(cfg, "a", 1)}, {}, 2, 3,
                                 cfg.Robot(), cfg);
  EXPECT_TRUE(r.records.empty());
  EXPECT_TRUE(r.summaries.empty());
}

TEST(RunSuite, SameSeedSameResult) {
  const ConfigFile cfg = CheapConfig();
  const std::vector<Method> methods = {CheapMethod(cfg, "a", 1),
                                       CheapMethod(cfg, "b", 2)};
  std::vector<TaskCase> tasks = VelocityCases(cfg);
  tasks.resize(2);
  const SuiteResult x = RunSuite(methods, tasks, 2, 5, cfg.Robot(), cfg);
  const SuiteResult y = RunSuite(methods, tasks, 2, 5, cfg.Robot(), cfg);
  EXPECT_EQ(SuiteToJson(x), SuiteToJson(y));
  EXPECT_EQ(x.records.size(), 8u);
  EXPECT_EQ(x.trial_seeds, y.trial_seeds);
  EXPECT_NO_THROW(x.MeanCost("a", "velocity"));
  EXPECT_THROW(x.MeanCost("c", "velocity"), IndexOutOfRange);
}

TEST(RunSuite, KindSummaryAveragesTasksPerTrial) {
  const ConfigFile cfg = CheapConfig();
  std::vector<TaskCase> tasks = VelocityCases(cfg);
  tasks.resize(2);
  const SuiteResult r =
      RunSuite({CheapMethod(cfg, "a", 1)}, tasks, 3, 5, cfg.Robot(), cfg);
  double total = 0.0;
  for (const auto& rec : r.records) total += rec.cost;
  EXPECT_NEAR(r.MeanCost("a", "velocity"), total / 6.0, 1e-12);
}

TEST(TaskCases, DeskDefaults) {
  const ConfigFile cfg;
  const auto velocity = VelocityCases(cfg);
  ASSERT_EQ(velocity.size(), 4u);
  EXPECT_NEAR(velocity[1].task.target_velocity.x(), 0.1, 1e-12);
  const auto goals = GoalCases(cfg);
  ASSERT_EQ(goals.size(), 8u);
  for (const auto& g : goals) {
    EXPECT_NEAR(g.task.goal.norm(), 1.0, 1e-12);
    EXPECT_EQ(g.max_steps, 60);
  }
  EXPECT_EQ(TrajectoryCases(cfg).size(), 1u);
  EXPECT_EQ(AllCases(cfg).size(), 13u);
}

TEST(AblationConfig, StandardValueSets) {
  AblationConfig a;
  a.sweep = AblationSweep::kLatentDim;
  EXPECT_EQ(a.Values(), (std::vector<int>{2, 3, 4}));
  a.sweep = AblationSweep::kExpertCount;
  EXPECT_EQ(a.Values(), (std::vector<int>{10, 30, 50}));
  a.sweep = AblationSweep::kDynSamples;
  EXPECT_EQ(a.Values(), (std::vector<int>{1000, 2000, 5000}));
  a.values = {7};
  EXPECT_THROW(a.Validate(), InvalidConfig);
  EXPECT_EQ(ParseAblationSweep("expert_count"), AblationSweep::kExpertCount);
}

TEST(AdverseRobot, DefaultsToHindLegs) {
  const ConfigFile cfg;
  const RobotModel adverse = cfg.AdverseRobot();
  EXPECT_EQ(adverse.disabled_legs, HindLegs(cfg.Robot()));
  EXPECT_EQ(adverse.disabled_legs.size(), 2u);
}

}  // namespace
}  // namespace latgait
