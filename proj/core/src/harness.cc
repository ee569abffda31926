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


#include "latgait/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"
#include "latgait/hash.h"

namespace latgait {

Planner Pipeline::LatentPlanner() const {
  if (!bundle || !latent_dynamics) throw MissingModel("pipeline is not built");
  Planner p;
  p.dynamics = latent_dynamics;
  p.controller = controller;
  p.space = ActionSpace::Latent(*bundle);
  return p;
}

ExpertLibrary GenerateLibrary(const ConfigFile& cfg, const RobotModel& robot) {
  ExpertLibrary lib;
  lib.experts = SampleExpertLibrary(robot, cfg.expert.count, cfg.expert.bounds,
                                    cfg.expert.seed, cfg.expert.gait, cfg.sim);
  lib.bounds = cfg.expert.bounds;
  lib.seed = cfg.expert.seed;
  lib.robot_hash = RobotHash(robot);
  lib.config_hash = ConfigHash(cfg);
  return lib;
}

PolicyBundle TrainPolicy(const ConfigFile& cfg, const RobotModel& robot,
                         const ExpertLibrary& library,
                         std::vector<double>* loss_history) {
  TrainingResult result = TrainJoint(library.experts, robot, cfg.training);
  result.bundle.library_hash = ArtifactHash(library);
  result.bundle.robot_hash = RobotHash(robot);
  result.bundle.config_hash = ConfigHash(cfg);
  if (loss_history != nullptr) *loss_history = std::move(result.loss_history);
  return std::move(result.bundle);
}

DynamicsTrainingResult TrainPolicyDynamics(
    const ConfigFile& cfg, const RobotModel& sim_robot,
    std::shared_ptr<const PolicyBundle> bundle, ActionKind kind, int samples,
    std::uint64_t seed) {
  if (!bundle) throw MissingModel("no policy bundle");
  if (kind == ActionKind::kCommand) {
    throw InvalidConfig("policy dynamics are over latent or library actions");
  }
  const PolicyController controller(bundle);
  const ActionSpace space = kind == ActionKind::kLatent
                                ? ActionSpace::Latent(*bundle)
                                : ActionSpace::Library(*bundle);
  const auto data = CollectTransitions(sim_robot, cfg.sim, controller, space,
                                       samples, seed,
                                       cfg.dynamics.reset_interval);
  DynamicsTrainingConfig train = cfg.dynamics.training;
  train.seed = seed;
  DynamicsTrainingResult result = TrainDynamics(data, kind, train);
  result.model.policy_hash = ArtifactHash(*bundle);
  result.model.robot_hash = RobotHash(sim_robot);
  result.model.dataset_hash = HashHex(DatasetToCsv(data));
  result.model.config_hash = ConfigHash(cfg);
  result.model.disabled_legs = sim_robot.disabled_legs;
  return result;
}

Pipeline BuildPipeline(const ConfigFile& cfg) {
  cfg.Validate();
  Pipeline p;
  p.config = cfg;
  p.robot = cfg.Robot();
  p.library = GenerateLibrary(cfg, p.robot);
  p.bundle = std::make_shared<const PolicyBundle>(
      TrainPolicy(cfg, p.robot, p.library, &p.imitation_loss));
  p.controller = std::make_shared<const PolicyController>(p.bundle);
  DynamicsTrainingResult dyn =
      TrainPolicyDynamics(cfg, p.robot, p.bundle, ActionKind::kLatent,
                          cfg.dynamics.samples, cfg.dynamics.training.seed);
  p.dynamics_report = dyn.report;
  p.latent_dynamics = std::make_shared<const DynamicsModel>(std::move(dyn.model));
  return p;
}

Planner LibraryPlanner(const Pipeline& pipeline, const RobotModel& sim_robot,
                       std::uint64_t seed) {
  DynamicsTrainingResult dyn =
      TrainPolicyDynamics(pipeline.config, sim_robot, pipeline.bundle,
                          ActionKind::kLibrary,
                          pipeline.config.dynamics.samples, seed);
  Planner p;
  p.dynamics = std::make_shared<const DynamicsModel>(std::move(dyn.model));
  p.controller = pipeline.controller;
  p.space = ActionSpace::Library(*pipeline.bundle);
  return p;
}

Planner IkPlanner(const ConfigFile& cfg, const RobotModel& sim_robot,
                  std::uint64_t seed) {
  DynamicsTrainingConfig train = cfg.dynamics.training;
  train.seed = seed;
  Planner p = MakeIkOracle(sim_robot, cfg.Robot(), cfg.sim, cfg.expert.gait,
                           cfg.expert.bounds, cfg.dynamics.samples, seed,
                           train);
  auto model = std::make_shared<DynamicsModel>(*p.dynamics);
  model->config_hash = ConfigHash(cfg);
  p.dynamics = model;
  return p;
}

std::vector<TaskCase> VelocityCases(const ConfigFile& cfg) {
  const double v = cfg.harness.velocity_target * cfg.harness.velocity_scale;
  const int steps = cfg.harness.velocity_steps;
  return {
      {"vel_py", cfg.Configure(TaskSpec::Velocity(0.0, v)), steps},
      {"vel_px", cfg.Configure(TaskSpec::Velocity(v, 0.0)), steps},
      {"vel_ny", cfg.Configure(TaskSpec::Velocity(0.0, -v)), steps},
      {"vel_nx", cfg.Configure(TaskSpec::Velocity(-v, 0.0)), steps},
  };
}

std::vector<TaskCase> GoalCases(const ConfigFile& cfg) {
  std::vector<TaskCase> cases;
  const int n = cfg.harness.goal_count;
  for (int k = 0; k < n; ++k) {
    const double angle = 2.0 * kPi * k / n;
    cases.push_back(
        {"goal_" + std::to_string(k),
         cfg.Configure(TaskSpec::Goal(cfg.harness.goal_radius * std::cos(angle),
                                      cfg.harness.goal_radius * std::sin(angle),
                                      cfg.harness.goal_heading)),
         cfg.harness.goal_max_steps});
  }
  return cases;
}

std::vector<TaskCase> TrajectoryCases(const ConfigFile& cfg) {
  return {{"traj_s", cfg.Configure(TaskSpec::Trajectory(DefaultSCurve())),
           cfg.harness.trajectory_steps}};
}

std::vector<TaskCase> AllCases(const ConfigFile& cfg) {
  std::vector<TaskCase> all = VelocityCases(cfg);
  for (auto& c : GoalCases(cfg)) all.push_back(std::move(c));
  for (auto& c : TrajectoryCases(cfg)) all.push_back(std::move(c));
  return all;
}

const CostSummary* SuiteResult::Find(const std::string& method,
                                     const std::string& group) const {
  for (const auto& s : summaries) {
    if (s.method == method && s.group == group) return &s;
  }
  return nullptr;
}

double SuiteResult::MeanCost(const std::string& method,
                             const std::string& group) const {
  const CostSummary* s = Find(method, group);
  if (s == nullptr) {
    throw IndexOutOfRange("no result for method '" + method + "' on '" +
                          group + "'");
  }
  return s->mean;
}

namespace {

CostSummary Summarize(const std::string& method, const std::string& group,
                      const std::vector<double>& values) {
  CostSummary s;
  s.method = method;
  s.group = group;
  s.trials = static_cast<int>(values.size());
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / values.size();
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(sq / values.size());
  return s;
}

}  // namespace

SuiteResult RunSuite(const std::vector<Method>& methods,
                     const std::vector<TaskCase>& tasks, int trials,
                     std::uint64_t seed, const RobotModel& sim_robot,
                     const ConfigFile& cfg) {
  if (trials < 1) throw InvalidConfig("suite needs at least one trial");
  for (const auto& m : methods) {
    if (!m.planner.dynamics || !m.planner.controller) {
      throw MissingModel("method '" + m.name + "' has no trained models");
    }
  }
  SuiteResult result;
  result.config_hash = ConfigHash(cfg);
  result.seed = seed;
  result.trials = trials;
  const PlanConfig base_plan = cfg.Plan();
  for (int t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = DeriveSeed(seed, t);
    result.trial_seeds.push_back(trial_seed);
    for (const auto& m : methods) {
      for (std::size_t i = 0; i < tasks.size(); ++i) {
        const TaskCase& tc = tasks[i];
        SimState state =
            InitialState(sim_robot, ComState{}, DeriveSeed(trial_seed, i));
        PlanConfig plan = base_plan;
        plan.seed = DeriveSeed(trial_seed, 1000 + i);
        const EpisodeLog log = MpcRollout(state, sim_robot, cfg.sim, m.planner,
                                          tc.task, plan, tc.max_steps);
        TrialRecord r;
        r.method = m.name;
        r.task = tc.name;
        r.kind = tc.task.kind;
        r.trial = t;
        r.seed = trial_seed;
        r.cost = log.mean_step_cost();
        r.steps = static_cast<int>(log.steps.size());
        r.steps_to_goal = log.steps_to_goal;
        r.reached = log.reached;
        if (tc.task.kind == TaskKind::kGoal) {
          r.final_position_error = std::hypot(tc.task.goal.x() - state.com.x,
                                              tc.task.goal.y() - state.com.y);
        }
        r.instability_events = log.instability_events;
        result.records.push_back(std::move(r));
      }
    }
  }

  for (const auto& m : methods) {
    for (const auto& tc : tasks) {
      std::vector<double> values;
      for (const auto& r : result.records) {
        if (r.method == m.name && r.task == tc.name) values.push_back(r.cost);
      }
      result.summaries.push_back(Summarize(m.name, tc.name, values));
    }
    for (TaskKind kind :
         {TaskKind::kVelocity, TaskKind::kGoal, TaskKind::kTrajectory}) {
      std::vector<double> per_trial;
      for (int t = 0; t < trials; ++t) {
        double sum = 0.0;
        int count = 0;
        for (const auto& r : result.records) {
          if (r.method == m.name && r.kind == kind && r.trial == t) {
            sum += r.cost;
            ++count;
          }
        }
        if (count > 0) per_trial.push_back(sum / count);
      }
      if (!per_trial.empty()) {
        result.summaries.push_back(
            Summarize(m.name, std::string(TaskKindName(kind)), per_trial));
      }
    }
  }
  return result;
}

std::string SuiteToJson(const SuiteResult& result) {
  using nlohmann::json;
  json records = json::array();
  for (const auto& r : result.records) {
    records.push_back({{"method", r.method},
                       {"task", r.task},
                       {"kind", std::string(TaskKindName(r.kind))},
                       {"trial", r.trial},
                       {"seed", r.seed},
                       {"cost", r.cost},
                       {"steps", r.steps},
                       {"steps_to_goal", r.steps_to_goal},
                       {"reached", r.reached},
                       {"final_position_error", r.final_position_error},
                       {"instability_events", r.instability_events}});
  }
  json summaries = json::array();
  for (const auto& s : result.summaries) {
    summaries.push_back({{"method", s.method},
                         {"group", s.group},
                         {"mean", s.mean},
                         {"stddev", s.stddev},
                         {"trials", s.trials}});
  }
  const json j = {{"config_hash", result.config_hash},
                  {"seed", result.seed},
                  {"trials", result.trials},
                  {"trial_seeds", result.trial_seeds},
                  {"summaries", summaries},
                  {"records", records}};
  return j.dump(1) + "\n";
}

std::string SuiteToCsv(const SuiteResult& result) {
  std::string out = "method,task,trial,cost,steps\n";
  for (const auto& r : result.records) {
    out += r.method + "," + r.task + "," + std::to_string(r.trial) + "," +
           FormatDouble(r.cost) + "," + std::to_string(r.steps) + "\n";
  }
  return out;
}

bool GaitPattern::any_gait_change() const {
  return std::find(gait_change.begin(), gait_change.end(), true) !=
         gait_change.end();
}

GaitPattern ExtractGaitPattern(const std::vector<StepRecord>& ticks,
                               int leg_count, int cycle_length) {
  if (leg_count < 1 || cycle_length < 1) {
    throw InvalidConfig("gait pattern needs legs and a cycle length");
  }
  GaitPattern g;
  g.stance.assign(leg_count, std::vector<bool>(ticks.size(), false));
  for (std::size_t t = 0; t < ticks.size(); ++t) {
    for (int leg = 0; leg < leg_count; ++leg) {
      g.stance[leg][t] = (ticks[t].stance_mask >> leg) & 1u;
    }
  }
  for (std::size_t begin = 0; begin < ticks.size(); begin += cycle_length) {
    const std::size_t end = std::min(ticks.size(), begin + cycle_length);
    const double n = static_cast<double>(end - begin);
    std::vector<double> duty(leg_count, 0.0);
    std::map<std::uint32_t, int> counts;
    for (std::size_t t = begin; t < end; ++t) {
      for (int leg = 0; leg < leg_count; ++leg) {
        if (g.stance[leg][t]) duty[leg] += 1.0;
      }
      ++counts[ticks[t].stance_mask];
    }
    for (double& d : duty) d /= n;
    g.duty.push_back(std::move(duty));
    std::vector<std::uint32_t> dominant;
    for (const auto& [mask, count] : counts) {
      if (5 * static_cast<std::size_t>(count) >= end - begin) {
        dominant.push_back(mask);
      }
    }
    g.dominant.push_back(std::move(dominant));
  }
  for (std::size_t c = 1; c < g.dominant.size(); ++c) {
    g.gait_change.push_back(g.dominant[c] != g.dominant[c - 1]);
  }
  return g;
}

AdverseResult RunAdverse(const Pipeline& pipeline,
                         const RobotModel& adverse_robot, int trials,
                         std::uint64_t seed) {
  const ConfigFile& cfg = pipeline.config;
  const std::uint64_t dyn_seed = DeriveSeed(seed, 77);
  DynamicsTrainingResult relearned =
      TrainPolicyDynamics(cfg, adverse_robot, pipeline.bundle,
                          ActionKind::kLatent, cfg.dynamics.samples, dyn_seed);
  Planner fresh;
  fresh.dynamics =
      std::make_shared<const DynamicsModel>(std::move(relearned.model));
  fresh.controller = pipeline.controller;
  fresh.space = ActionSpace::Latent(*pipeline.bundle);

  const std::vector<Method> methods = {
      {"lat", fresh},
      {"lat-stale", pipeline.LatentPlanner()},
      {"ik", IkPlanner(cfg, adverse_robot, dyn_seed)},
  };
  AdverseResult out;
  out.suite = RunSuite(methods, VelocityCases(cfg), trials, seed,
                       adverse_robot, cfg);
  out.latent = out.suite.MeanCost("lat", "velocity");
  out.stale = out.suite.MeanCost("lat-stale", "velocity");
  out.ik = out.suite.MeanCost("ik", "velocity");
  return out;
}

std::string AblationSweepName(AblationSweep sweep) {
  switch (sweep) {
    case AblationSweep::kLatentDim:
      return "latent_dim";
    case AblationSweep::kExpertCount:
      return "expert_count";
    case AblationSweep::kDynSamples:
      return "dyn_samples";
  }
  return "dyn_samples";
}

AblationSweep ParseAblationSweep(const std::string& name) {
  if (name == "latent_dim") return AblationSweep::kLatentDim;
  if (name == "expert_count") return AblationSweep::kExpertCount;
  if (name == "dyn_samples") return AblationSweep::kDynSamples;
  throw InvalidConfig("unknown ablation sweep '" + name + "'");
}

namespace {

std::vector<int> StandardValues(AblationSweep sweep) {
  switch (sweep) {
    case AblationSweep::kLatentDim:
      return {2, 3, 4};
    case AblationSweep::kExpertCount:
      return {10, 30, 50};
    case AblationSweep::kDynSamples:
      return {1000, 2000, 5000};
  }
  return {};
}

}  // namespace

std::vector<int> AblationConfig::Values() const {
  return values.empty() ? StandardValues(sweep) : values;
}

void AblationConfig::Validate() const {
  if (trials < 1) throw InvalidConfig("ablation needs at least one trial");
  const std::vector<int> allowed = StandardValues(sweep);
  for (int v : Values()) {
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      throw InvalidConfig("value " + std::to_string(v) +
                          " is not part of the " + AblationSweepName(sweep) +
                          " sweep");
    }
  }
}

const AblationPoint& AblationResult::At(int value) const {
  for (const auto& p : points) {
    if (p.value == value) return p;
  }
  throw IndexOutOfRange("no ablation point for value " +
                        std::to_string(value));
}

AblationResult RunAblation(const AblationConfig& ablation,
                           const ConfigFile& base, std::uint64_t seed) {
  ablation.Validate();
  base.Validate();
  AblationResult result;
  result.config = ablation;
  const RobotModel robot = base.Robot();

  // Stages upstream of the swept one are shared by every value.
  std::optional<ExpertLibrary> shared_library;
  std::shared_ptr<const PolicyBundle> shared_bundle;
  if (ablation.sweep != AblationSweep::kExpertCount) {
    shared_library = GenerateLibrary(base, robot);
  }
  if (ablation.sweep == AblationSweep::kDynSamples) {
    shared_bundle = std::make_shared<const PolicyBundle>(
        TrainPolicy(base, robot, *shared_library));
  }

  for (int value : ablation.Values()) {
    const auto start = std::chrono::steady_clock::now();
    ConfigFile cfg = base;
    switch (ablation.sweep) {
      case AblationSweep::kLatentDim:
        cfg.training.latent_dim = value;
        break;
      case AblationSweep::kExpertCount:
        cfg.expert.count = value;
        break;
      case AblationSweep::kDynSamples:
        cfg.dynamics.samples = value;
        break;
    }
    const ExpertLibrary library =
        shared_library ? *shared_library : GenerateLibrary(cfg, robot);
    std::shared_ptr<const PolicyBundle> bundle =
        shared_bundle ? shared_bundle
                      : std::make_shared<const PolicyBundle>(
                            TrainPolicy(cfg, robot, library));
    DynamicsTrainingResult dyn =
        TrainPolicyDynamics(cfg, robot, bundle, ActionKind::kLatent,
                            cfg.dynamics.samples, cfg.dynamics.training.seed);
    Planner planner;
    planner.dynamics =
        std::make_shared<const DynamicsModel>(std::move(dyn.model));
    planner.controller = std::make_shared<const PolicyController>(bundle);
    planner.space = ActionSpace::Latent(*bundle);

    AblationPoint point;
    point.value = value;
    point.suite = RunSuite({{"lat", planner}}, AllCases(cfg), ablation.trials,
                           seed, robot, cfg);
    point.mean_cost = (point.suite.MeanCost("lat", "velocity") +
                       point.suite.MeanCost("lat", "goal") +
                       point.suite.MeanCost("lat", "traj")) /
                      3.0;
    point.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    result.points.push_back(std::move(point));
  }
  return result;
}

std::string AblationToCsv(const AblationResult& result) {
  std::string out = "sweep,value,velocity,goal,traj,mean,seconds\n";
  for (const auto& p : result.points) {
    out += AblationSweepName(result.config.sweep) + "," +
           std::to_string(p.value) + "," +
           FormatDouble(p.suite.MeanCost("lat", "velocity")) + "," +
           FormatDouble(p.suite.MeanCost("lat", "goal")) + "," +
           FormatDouble(p.suite.MeanCost("lat", "traj")) + "," +
           FormatDouble(p.mean_cost) + "," + FormatDouble(p.seconds) + "\n";
  }
  return out;
}

}  // namespace latgait
