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

#ifndef LATGAIT_SIM_H_
#define LATGAIT_SIM_H_

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "latgait/robot.h"
#include "latgait/types.h"

namespace latgait {

// Kinematic 2.5D simulator settings. Body height, roll and pitch are fixed;
// only the planar pose evolves.
struct SimConfig {
  double dt = 0.01;                   // s (100 Hz low level)
  double servo_rate_limit = 3.0;      // rad/s
  double contact_epsilon = 0.005;     // m
  double slip_threshold = 0.01;       // m
  double slip_gain = 0.5;             // fraction of residual an anchor moves
  double registration_noise_std = 0;  // m and rad, per step
  double ground_height = 0.0;         // m
  double velocity_smoothing = 0.1;    // exponential smoothing factor

  void Validate() const;
};

struct SimState {
  ComState com;
  Eigen::VectorXd joint_angles;
  // World xy where each stance foot was anchored; empty for swing feet.
  std::vector<std::optional<Eigen::Vector2d>> foot_anchors;
  std::vector<bool> stance;
  std::int64_t step_index = 0;
  std::mt19937_64 rng;
  // Steps in which fewer than two feet were in contact.
  int instability_events = 0;

  std::uint32_t stance_mask() const;
  bool operator==(const SimState&) const = default;
};

// Robot standing in nominal stance at `com` with all feet anchored.
SimState InitialState(const RobotModel& model, const ComState& com,
                      std::uint64_t seed);

// Advances one low-level tick towards `q_des` in place.
void StepInPlace(SimState& state, const Eigen::VectorXd& q_des,
                 const SimConfig& cfg, const RobotModel& model);

// Pure form of StepInPlace.
SimState Step(const SimState& state, const Eigen::VectorXd& q_des,
              const SimConfig& cfg, const RobotModel& model);

struct StepRecord {
  std::int64_t step = 0;
  ComState com;
  std::uint32_t stance_mask = 0;
  Eigen::VectorXd joint_angles;
};

struct CycleResult {
  std::vector<StepRecord> log;  // empty unless recording was requested
  ComState end;
};

// Executes one gait cycle: row n-1 of `commands` is the joint target at
// phase n/N, n = 1..N.
CycleResult RolloutCycle(SimState& state, const Eigen::MatrixXd& commands,
                         const SimConfig& cfg, const RobotModel& model,
                         bool record = false);

// Owns a robot, its configuration and a mutable state.
class Simulator {
 public:
  Simulator(RobotModel model, SimConfig cfg, std::uint64_t seed = 0);

  // Returns to nominal stance at `com` with a reseeded generator.
  void Reset(const ComState& com = {});
  void Reset(const ComState& com, std::uint64_t seed);

  void Step(const Eigen::VectorXd& q_des) {
    StepInPlace(state_, q_des, cfg_, model_);
  }
  CycleResult RunCycle(const Eigen::MatrixXd& commands, bool record = false) {
    return RolloutCycle(state_, commands, cfg_, model_, record);
  }

  const RobotModel& model() const { return model_; }
  const SimConfig& config() const { return cfg_; }
  const SimState& state() const { return state_; }
  SimState& mutable_state() { return state_; }

 private:
  RobotModel model_;
  SimConfig cfg_;
  std::uint64_t seed_;
  SimState state_;
};

}  // namespace latgait

#endif  // LATGAIT_SIM_H_
