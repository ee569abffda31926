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

// Coarse one-cycle CoM dynamics learned in the departure body frame:
//   (dx, dy, dyaw, vx', vy') = f(vx, vy, action).

#ifndef LATGAIT_DYNAMICS_H_
#define LATGAIT_DYNAMICS_H_

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "latgait/action.h"
#include "latgait/nn.h"
#include "latgait/sim.h"
#include "latgait/types.h"

namespace latgait {

struct LocalDelta {
  double dx = 0.0;    // m, departure body frame
  double dy = 0.0;    // m, departure body frame
  double dyaw = 0.0;  // rad, wrapped
  double vx_next = 0.0;
  double vy_next = 0.0;
};

LocalDelta ToLocalDelta(const ComState& curr, const ComState& next);
ComState FromLocalDelta(const ComState& curr, const LocalDelta& delta);

struct TransitionSample {
  double vx = 0.0;
  double vy = 0.0;
  Eigen::VectorXd action;
  LocalDelta delta;
};

// Draws uniform actions, runs one cycle each and records the transition.
// The robot returns to nominal stance at the origin every `reset_interval`
// cycles.
std::vector<TransitionSample> CollectTransitions(
    const RobotModel& model, const SimConfig& sim_cfg,
    const LowLevelController& controller, const ActionSpace& space,
    int samples, std::uint64_t seed, int reset_interval = 25);

// Per-component affine standardization; stds are floored at 1e-6.
struct Standardizer {
  Eigen::VectorXd mean;
  Eigen::VectorXd std;

  static Standardizer Fit(const Eigen::MatrixXd& columns);
  Eigen::MatrixXd Apply(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd Invert(const Eigen::MatrixXd& y) const;
};

struct DynamicsModel {
  Network net;  // input 2 + action_dim, output 5
  Standardizer input;
  Standardizer output;
  ActionKind action_kind = ActionKind::kLatent;

  // Provenance.
  std::string policy_hash;  // empty for command-space models
  std::string robot_hash;
  std::string dataset_hash;
  std::string config_hash;
  std::set<int> disabled_legs;  // of the robot the data came from
  std::uint64_t seed = 0;

  int action_dim() const { return net.input_size() - 2; }

  LocalDelta PredictDelta(double vx, double vy,
                          const Eigen::VectorXd& action) const;
  // Rows of `inputs` are (vx, vy, action...); returns 5 x B raw deltas.
  Eigen::MatrixXd PredictDeltaBatch(const Eigen::MatrixXd& inputs) const;

  void Validate() const;
};

// Next state predicted from the body-frame velocity and the action.
ComState Predict(const DynamicsModel& model, const ComState& state,
                 const Eigen::VectorXd& action);

// Predict for column b of `actions` from states[b]; `out` is resized.
void PredictBatch(const DynamicsModel& model, std::span<const ComState> states,
                  const Eigen::MatrixXd& actions, std::vector<ComState>& out);

struct DynamicsTrainingConfig {
  std::vector<int> hidden = {64, 64};
  int epochs = 800;
  int batch = 512;
  double lr = 1e-3;
  std::uint64_t seed = 1;
  double holdout_fraction = 0.1;
};

struct DynamicsReport {
  double train_mse = 0.0;    // standardized units
  double heldout_mse = 0.0;  // standardized units
  double heldout_displacement_rmse = 0.0;  // m
  double mean_displacement = 0.0;          // m, held-out set
  int train_count = 0;
  int heldout_count = 0;
};

struct DynamicsTrainingResult {
  DynamicsModel model;
  DynamicsReport report;
  std::vector<double> loss_history;  // standardized train MSE per epoch
};

inline constexpr int kMinDynamicsSamples = 100;

// Standardizes by dataset statistics, holds out a seeded split and fits
// with Adam. Throws InsufficientData below kMinDynamicsSamples.
DynamicsTrainingResult TrainDynamics(
    const std::vector<TransitionSample>& data, ActionKind kind,
    const DynamicsTrainingConfig& cfg);

}  // namespace latgait

#endif  // LATGAIT_DYNAMICS_H_
