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

#include "latgait/planner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <thread>

#include "latgait/io.h"

namespace latgait {

std::string_view TaskKindName(TaskKind kind) {
  switch (kind) {
    case TaskKind::kVelocity:
      return "velocity";
    case TaskKind::kGoal:
      return "goal";
    case TaskKind::kTrajectory:
      return "traj";
  }
  return "velocity";
}

TaskKind ParseTaskKind(std::string_view name) {
  if (name == "velocity") return TaskKind::kVelocity;
  if (name == "goal") return TaskKind::kGoal;
  if (name == "traj" || name == "trajectory") return TaskKind::kTrajectory;
  throw InvalidConfig("unknown task kind '" + std::string(name) + "'");
}

TaskSpec TaskSpec::Velocity(double vx, double vy, double yaw) {
  TaskSpec task;
  task.kind = TaskKind::kVelocity;
  task.target_velocity = {vx, vy};
  task.target_yaw = yaw;
  return task;
}

TaskSpec TaskSpec::Goal(double x, double y, double yaw) {
  TaskSpec task;
  task.kind = TaskKind::kGoal;
  task.goal = {x, y};
  task.target_yaw = yaw;
  return task;
}

TaskSpec TaskSpec::Trajectory(std::vector<Pose2> waypoints) {
  TaskSpec task;
  task.kind = TaskKind::kTrajectory;
  task.waypoints = std::move(waypoints);
  return task;
}

void TaskSpec::Validate() const {
  if (!(position_weight > 0.0) || !(yaw_weight > 0.0)) {
    throw InvalidConfig("task weights must be positive");
  }
  if (!(goal_tolerance > 0.0) || !(goal_yaw_tolerance > 0.0)) {
    throw InvalidConfig("goal tolerances must be positive");
  }
  if (kind == TaskKind::kTrajectory && waypoints.empty()) {
    throw InvalidConfig("trajectory task needs at least one waypoint");
  }
}

std::vector<Pose2> DefaultSCurve() {
  constexpr int kCount = 41;
  std::vector<Pose2> path(kCount);
  for (int k = 0; k < kCount; ++k) {
    const double x = 0.1 * k;
    // Tangent of (x, 0.5 sin(pi x)).
    const double slope = 0.5 * kPi * std::cos(kPi * x);
    path[k] = {x, 0.5 * std::sin(0.1 * k * kPi), std::atan2(slope, 1.0)};
  }
  return path;
}

namespace {

void RequireKind(const TaskSpec& task, TaskKind kind) {
  if (task.kind != kind) {
    throw WrongTaskKind("cost for '" + std::string(TaskKindName(kind)) +
                        "' called on a '" +
                        std::string(TaskKindName(task.kind)) + "' task");
  }
}

double PoseCost(const ComState& s, const Eigen::Vector2d& p, double yaw,
                const TaskSpec& task) {
  const double position = std::hypot(p.x() - s.x, p.y() - s.y);
  return task.position_weight * position +
         task.yaw_weight * std::abs(WrapAngle(yaw - s.yaw));
}

}  // namespace

double CostVelocity(const ComState& s, const TaskSpec& task) {
  RequireKind(task, TaskKind::kVelocity);
  const Eigen::Vector2d v = Rotate(s.yaw, {s.vx, s.vy});
  return task.position_weight * (task.target_velocity - v).norm() +
         task.yaw_weight * std::abs(WrapAngle(task.target_yaw - s.yaw));
}

double CostGoal(const ComState& s, const TaskSpec& task) {
  RequireKind(task, TaskKind::kGoal);
  return PoseCost(s, task.goal, task.target_yaw, task);
}

double CostTrajectory(const ComState& s, const TaskSpec& task, int step) {
  RequireKind(task, TaskKind::kTrajectory);
  if (task.waypoints.empty()) throw InvalidConfig("trajectory has no waypoints");
  const int last = static_cast<int>(task.waypoints.size()) - 1;
  const Pose2& w = task.waypoints[std::clamp(step, 0, last)];
  return PoseCost(s, {w.x, w.y}, w.yaw, task);
}

double TaskCost(const ComState& s, const TaskSpec& task, int step) {
  switch (task.kind) {
    case TaskKind::kVelocity:
      return CostVelocity(s, task);
    case TaskKind::kGoal:
      return CostGoal(s, task);
    case TaskKind::kTrajectory:
      return CostTrajectory(s, task, step);
  }
  return 0.0;
}

bool GoalReached(const ComState& s, const TaskSpec& task) {
  if (task.kind != TaskKind::kGoal) return false;
  return std::hypot(task.goal.x() - s.x, task.goal.y() - s.y) <
             task.goal_tolerance &&
         std::abs(WrapAngle(task.target_yaw - s.yaw)) < task.goal_yaw_tolerance;
}

void PlanConfig::Validate() const {
  if (samples < 1) throw InvalidConfig("shooting samples must be >= 1");
  if (horizon < 1) throw InvalidConfig("horizon must be >= 1");
  if (threads < 1) throw InvalidConfig("threads must be >= 1");
}

namespace {

// Chunk size is fixed so the result does not depend on the thread count.
constexpr int kChunk = 512;

struct ChunkBest {
  double cost = std::numeric_limits<double>::infinity();
  int index = -1;
};

ChunkBest EvaluateChunk(const DynamicsModel& dynamics, const ComState& start,
                        const StepCostFn& cost, const Eigen::MatrixXd& actions,
                        int horizon, int begin, int end) {
  const int count = end - begin;
  const int dim = static_cast<int>(actions.rows());
  std::vector<ComState> states(count, start);
  std::vector<ComState> next;
  std::vector<double> totals(count, 0.0);
  Eigen::MatrixXd batch(dim, count);
  for (int h = 0; h < horizon; ++h) {
    for (int i = 0; i < count; ++i) {
      batch.col(i) = actions.col(static_cast<Eigen::Index>(begin + i) * horizon + h);
    }
    PredictBatch(dynamics, states, batch, next);
    for (int i = 0; i < count; ++i) totals[i] += cost(next[i], h);
    states.swap(next);
  }
  ChunkBest best;
  for (int i = 0; i < count; ++i) {
    if (totals[i] < best.cost || best.index < 0) {
      best.cost = totals[i];
      best.index = begin + i;
    }
  }
  return best;
}

}  // namespace

ShootingResult RandomShooting(const DynamicsModel& dynamics,
                              const ComState& start, const StepCostFn& cost,
                              const ActionSpace& space, const PlanConfig& cfg) {
  cfg.Validate();
  const int dim = space.dim();
  if (dim != dynamics.action_dim()) {
    throw DimensionMismatch("action space has dimension " +
                            std::to_string(dim) + ", dynamics expects " +
                            std::to_string(dynamics.action_dim()));
  }
  const int k = cfg.samples;
  const int horizon = cfg.horizon;

  std::mt19937_64 rng(cfg.seed);
  Eigen::MatrixXd actions(dim, static_cast<Eigen::Index>(k) * horizon);
  for (Eigen::Index c = 0; c < actions.cols(); ++c) {
    actions.col(c) = space.Sample(rng);
  }

  const int chunks = (k + kChunk - 1) / kChunk;
  std::vector<ChunkBest> results(chunks);
  auto run = [&](int first, int stride) {
    for (int c = first; c < chunks; c += stride) {
      results[c] = EvaluateChunk(dynamics, start, cost, actions, horizon,
                                 c * kChunk, std::min(k, (c + 1) * kChunk));
    }
  };
  const int workers = std::min(cfg.threads, chunks);
  if (workers <= 1) {
    run(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(run, w, workers);
    run(0, workers);
    for (auto& t : pool) t.join();
  }

  ChunkBest best = results.front();
  for (int c = 1; c < chunks; ++c) {
    if (results[c].cost < best.cost) best = results[c];
  }
  ShootingResult out;
  out.index = best.index;
  out.cost = best.cost;
  out.actions = actions.middleCols(
      static_cast<Eigen::Index>(best.index) * horizon, horizon);
  return out;
}

void Planner::Validate() const {
  if (!dynamics || !controller) throw MissingModel("planner is incomplete");
  dynamics->Validate();
  if (space.dim() != dynamics->action_dim() ||
      space.dim() != controller->action_dim()) {
    throw DimensionMismatch(
        "planner action space, dynamics and controller disagree");
  }
  if (space.kind != dynamics->action_kind) {
    throw DimensionMismatch("dynamics was trained over '" +
                            std::string(ActionKindName(dynamics->action_kind)) +
                            "' actions, planner uses '" +
                            std::string(ActionKindName(space.kind)) + "'");
  }
}

double EpisodeLog::mean_step_cost() const {
  return steps.empty() ? 0.0 : total_cost / static_cast<double>(steps.size());
}

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

EpisodeLog MpcRollout(SimState& state, const RobotModel& model,
                      const SimConfig& sim_cfg, const Planner& planner,
                      const TaskSpec& task, const PlanConfig& cfg,
                      int max_steps) {
  planner.Validate();
  task.Validate();
  cfg.Validate();
  EpisodeLog log;
  const int events_before = state.instability_events;
  if (GoalReached(state.com, task)) {
    log.reached = true;
    log.steps_to_goal = 0;
    return log;
  }
  for (int t = 0; t < max_steps; ++t) {
    const ComState measured = state.com;
    const StepCostFn cost = [&task, t](const ComState& s, int h) {
      return TaskCost(s, task, t + h + 1);
    };
    PlanConfig step_cfg = cfg;
    step_cfg.seed = DeriveSeed(cfg.seed, static_cast<std::uint64_t>(t));
    const ShootingResult plan = RandomShooting(*planner.dynamics, measured,
                                               cost, planner.space, step_cfg);
    const Eigen::VectorXd action = plan.actions.col(0);

    EpisodeStep entry;
    entry.step = t;
    entry.state = measured;
    entry.action = action;
    entry.predicted = Predict(*planner.dynamics, measured, action);
    CycleResult cycle = RolloutCycle(
        state, planner.controller->CycleCommands(action), sim_cfg, model, true);
    entry.realized = state.com;
    entry.cost = TaskCost(state.com, task, t + 1);
    log.total_cost += entry.cost;
    log.steps.push_back(std::move(entry));
    log.ticks.insert(log.ticks.end(),
                     std::make_move_iterator(cycle.log.begin()),
                     std::make_move_iterator(cycle.log.end()));
    if (GoalReached(state.com, task)) {
      log.reached = true;
      log.steps_to_goal = t + 1;
      break;
    }
  }
  log.instability_events = state.instability_events - events_before;
  return log;
}

Planner MakeIkOracle(const RobotModel& sim_model,
                     const RobotModel& expert_model, const SimConfig& sim_cfg,
                     const ExpertConfig& expert_cfg,
                     const CommandBounds& bounds, int samples,
                     std::uint64_t seed,
                     const DynamicsTrainingConfig& train_cfg) {
  auto controller =
      std::make_shared<const CommandController>(expert_model, expert_cfg, bounds);
  const ActionSpace space = ActionSpace::Commands(bounds);
  const auto data =
      CollectTransitions(sim_model, sim_cfg, *controller, space, samples, seed);
  DynamicsTrainingConfig cfg = train_cfg;
  auto trained = TrainDynamics(data, ActionKind::kCommand, cfg);
  trained.model.robot_hash = RobotHash(sim_model);
  trained.model.disabled_legs = sim_model.disabled_legs;
  Planner planner;
  planner.dynamics =
      std::make_shared<const DynamicsModel>(std::move(trained.model));
  planner.controller = controller;
  planner.space = space;
  return planner;
}

}  // namespace latgait
