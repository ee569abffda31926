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

// Task costs, random-shooting MPC and the command-space planner.

#ifndef LATGAIT_PLANNER_H_
#define LATGAIT_PLANNER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "latgait/action.h"
#include "latgait/dynamics.h"
#include "latgait/expert.h"
#include "latgait/robot.h"
#include "latgait/sim.h"
#include "latgait/types.h"

namespace latgait {

enum class TaskKind { kVelocity, kGoal, kTrajectory };

std::string_view TaskKindName(TaskKind kind);
TaskKind ParseTaskKind(std::string_view name);

struct TaskSpec {
  TaskKind kind = TaskKind::kVelocity;
  Eigen::Vector2d target_velocity = Eigen::Vector2d::Zero();  // m/s, world
  Eigen::Vector2d goal = Eigen::Vector2d::Zero();             // m
  double target_yaw = 0.0;
  std::vector<Pose2> waypoints;  // one per robot step, index 0 at start
  double position_weight = 2.0;
  double yaw_weight = 1.0;
  double goal_tolerance = 0.1;      // m
  double goal_yaw_tolerance = 0.2;  // rad

  static TaskSpec Velocity(double vx, double vy, double yaw = 0.0);
  static TaskSpec Goal(double x, double y, double yaw);
  static TaskSpec Trajectory(std::vector<Pose2> waypoints);

  void Validate() const;
};

// p_k = (0.1 k, 0.5 sin(0.1 k pi)), k = 0..40, heading along the tangent.
std::vector<Pose2> DefaultSCurve();

// w1 |v_target - v| + w2 |wrap(yaw_target - yaw)|, with the body velocity
// rotated into the world frame.
double CostVelocity(const ComState& s, const TaskSpec& task);
// w1 |p_goal - p| + w2 |wrap(yaw_goal - yaw)|.
double CostGoal(const ComState& s, const TaskSpec& task);
// Goal cost against waypoint min(step, last).
double CostTrajectory(const ComState& s, const TaskSpec& task, int step);
// Dispatches on the task kind; `step` indexes the trajectory schedule.
double TaskCost(const ComState& s, const TaskSpec& task, int step);
bool GoalReached(const ComState& s, const TaskSpec& task);

struct PlanConfig {
  int samples = 8000;  // K
  int horizon = 1;     // H
  std::uint64_t seed = 0;
  int threads = 1;

  void Validate() const;
};

// Cost of the state reached after h + 1 predicted cycles.
using StepCostFn = std::function<double(const ComState& state, int h)>;

struct ShootingResult {
  Eigen::MatrixXd actions;  // action_dim x H
  double cost = 0.0;        // summed predicted cost
  int index = 0;            // winning sample
};

// Draws K sequences of H actions, sample-major, from one generator seeded
// by cfg.seed, so a run with fewer samples sees a prefix of the same
// candidates. Ties go to the lowest index.
ShootingResult RandomShooting(const DynamicsModel& dynamics,
                              const ComState& start, const StepCostFn& cost,
                              const ActionSpace& space, const PlanConfig& cfg);

// A dynamics model paired with the space it plans in and the controller that
// executes the chosen action.
struct Planner {
  std::shared_ptr<const DynamicsModel> dynamics;
  std::shared_ptr<const LowLevelController> controller;
  ActionSpace space;

  void Validate() const;
};

struct EpisodeStep {
  int step = 0;
  ComState state;
  Eigen::VectorXd action;
  ComState predicted;
  ComState realized;
  double cost = 0.0;  // task cost of the realized state
};

struct EpisodeLog {
  std::vector<EpisodeStep> steps;
  std::vector<StepRecord> ticks;  // every low-level tick, in order
  double total_cost = 0.0;
  int instability_events = 0;
  bool reached = false;   // goal tasks only
  int steps_to_goal = -1;

  double mean_step_cost() const;
};

// Receding-horizon loop: plan from the measured state, run the first action
// for one cycle, repeat. Goal tasks stop once within tolerance.
EpisodeLog MpcRollout(SimState& state, const RobotModel& model,
                      const SimConfig& sim_cfg, const Planner& planner,
                      const TaskSpec& task, const PlanConfig& cfg,
                      int max_steps);

// Collects command-space transitions through the IK expert and fits a
// dynamics model over (vx, vy, dx, dy, dyaw).
Planner MakeIkOracle(const RobotModel& sim_model,
                     const RobotModel& expert_model, const SimConfig& sim_cfg,
                     const ExpertConfig& expert_cfg,
                     const CommandBounds& bounds, int samples,
                     std::uint64_t seed,
                     const DynamicsTrainingConfig& train_cfg);

// Mixes a master seed with a stream index.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream);

}  // namespace latgait

#endif  // LATGAIT_PLANNER_H_
