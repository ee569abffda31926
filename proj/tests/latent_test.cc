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
#include <vector>

#include <gtest/gtest.h>

#include "latgait/expert.h"
#include "latgait/latent.h"
#include "latgait/robot.h"
#include "latgait/sim.h"

namespace latgait {
namespace {

TrainingConfig SmallConfig(int epochs) {
  TrainingConfig cfg;
  cfg.latent_dim = 2;
  cfg.hidden = {32, 32};
  cfg.epochs = epochs;
  cfg.seed = 3;
  return cfg;
}

class SingleExpertTest : public ::testing::Test {
 protected:
  void SetUp() override {
    library = {GenerateExpert(model, {0.1, 0.0, 0.0}, ExpertConfig{},
                              SimConfig{})};
  }

  RobotModel model = DeskHexapod();
  std::vector<ExpertTrajectory> library;
};

TEST_F(SingleExpertTest, ZeroEpochsKeepsInitialCodes) {
  const TrainingResult a = TrainJoint(library, model, SmallConfig(0));
  ASSERT_EQ(a.loss_history.size(), 1u);
  const TrainingResult b = TrainJoint(library, model, SmallConfig(1));
  // The first update moves the code away from its initialization.
  EXPECT_NE(a.bundle.codes, b.bundle.codes);
  EXPECT_EQ(b.loss_history.front(), a.loss_history.front());
}

TEST_F(SingleExpertTest, MemorizesSingleExpert) {
  const TrainingResult r = TrainJoint(library, model, SmallConfig(3000));
  EXPECT_LT(r.loss_history.back(), 1e-3);
  EXPECT_LT(ReconstructionError(r.bundle, 0, library), std::sqrt(1e-3));
}

TEST_F(SingleExpertTest, UntrainedBundleReconstructsPoorly) {
  const TrainingResult r = TrainJoint(library, model, SmallConfig(0));
  EXPECT_GT(ReconstructionError(r.bundle, 0, library), 0.1);
}

TEST_F(SingleExpertTest, QueriesAreDeterministicAndWithinLimits) {
  const TrainingResult r = TrainJoint(library, model, SmallConfig(50));
  const LatentCode z = r.bundle.code(0);
  for (double t : {0.01, 0.5, 1.0}) {
    const Eigen::VectorXd q = r.bundle.Query(t, z);
    EXPECT_EQ(q, r.bundle.Query(t, z));
    EXPECT_TRUE((q.array() >= r.bundle.joint_lo.array()).all());
    EXPECT_TRUE((q.array() <= r.bundle.joint_hi.array()).all());
  }
  EXPECT_THROW(r.bundle.Query(0.5, Eigen::VectorXd::Zero(3)),
               DimensionMismatch);
}

TEST_F(SingleExpertTest, RepeatedCycleCommandsArePeriodic) {
  const TrainingResult r = TrainJoint(library, model, SmallConfig(50));
  const LatentCode z = r.bundle.code(0);
  SimState state = InitialState(model, ComState{}, 1);
  std::vector<CycleResult> cycles;
  for (int c = 0; c < 5; ++c) {
    cycles.push_back(
        RolloutPolicyCycle(state, r.bundle, z, SimConfig{}, model, true));
  }
  const Eigen::MatrixXd table = r.bundle.CycleTable(z);
  EXPECT_EQ(table.rows(), r.bundle.cycle_length);
  EXPECT_EQ(table, r.bundle.CycleTable(z));
  EXPECT_EQ(cycles.back().log.size(), 100u);
}

TEST(TrainJoint, ConstantStanceExpertIsTriviallyLearnable) {
  const RobotModel model = DeskHexapod();
  ExpertTrajectory stand;
  stand.angles = model.nominal_stance_angles.transpose().replicate(100, 1);
  const std::vector<ExpertTrajectory> library = {stand};
  const TrainingResult r = TrainJoint(library, model, SmallConfig(2000));
  EXPECT_LT(ReconstructionError(r.bundle, 0, library), 1e-3);
}

TEST(TrainJoint, RejectsEmptyLibrary) {
  EXPECT_THROW(TrainJoint({}, DeskHexapod(), SmallConfig(1)), EmptyLibrary);
}

TEST(TrainJoint, CodeBoxContainsEveryCode) {
  const RobotModel model = DeskHexapod();
  const auto library = SampleExpertLibrary(model, 4, CommandBounds{}, 5,
                                           ExpertConfig{}, SimConfig{});
  const TrainingResult r = TrainJoint(library, model, SmallConfig(20));
  for (int g = 0; g < r.bundle.expert_count(); ++g) {
    EXPECT_TRUE((r.bundle.code(g).array() > r.bundle.code_lo.array()).all());
    EXPECT_TRUE((r.bundle.code(g).array() < r.bundle.code_hi.array()).all());
  }
}

TEST(LatticeCodes, CoversTheBoxCorners) {
  PolicyBundle bundle;
  bundle.codes = Eigen::MatrixXd::Zero(2, 1);
  bundle.code_lo = Eigen::Vector2d(-1.0, -2.0);
  bundle.code_hi = Eigen::Vector2d(1.0, 2.0);
  const auto codes = LatticeCodes(bundle, 21);
  ASSERT_EQ(codes.size(), 441u);
  EXPECT_EQ(codes.front(), bundle.code_lo);
  EXPECT_EQ(codes.back(), bundle.code_hi);
}

TEST(NeighborContinuity, UniformShiftHasEqualDifferences) {
  std::vector<SweepTrace> traces;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      SweepTrace t;
      t.cycle_ends = {ComState{0.1 * i, 0.1 * j, 0.0, 0.0, 0.0}};
      traces.push_back(t);
    }
  }
  const ContinuityStats stats = NeighborContinuity(traces, 3);
  EXPECT_NEAR(stats.max_difference, 0.1, 1e-12);
  EXPECT_NEAR(stats.median_difference, 0.1, 1e-12);
}

}  // namespace
}  // namespace latgait
