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


// Evaluation protocol: pipeline construction, task suites, baselines, the
// adverse setting, ablations and gait-pattern extraction.

#ifndef LATGAIT_HARNESS_H_
#define LATGAIT_HARNESS_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "latgait/config.h"
#include "latgait/dynamics.h"
#include "latgait/io.h"
#include "latgait/latent.h"
#include "latgait/planner.h"

namespace latgait {

// Every trained artifact of the normal-setting pipeline.
struct Pipeline {
  ConfigFile config;
  RobotModel robot;
  ExpertLibrary library;
  std::shared_ptr<const PolicyBundle> bundle;
  std::shared_ptr<const PolicyController> controller;
  std::shared_ptr<const DynamicsModel> latent_dynamics;
  std::vector<double> imitation_loss;
  DynamicsReport dynamics_report;

  Planner LatentPlanner() const;
};

// Experts, joint policy training, latent dynamics collection and fitting.
Pipeline BuildPipeline(const ConfigFile& cfg);

ExpertLibrary GenerateLibrary(const ConfigFile& cfg, const RobotModel& robot);
PolicyBundle TrainPolicy(const ConfigFile& cfg, const RobotModel& robot,
                         const ExpertLibrary& library,
                         std::vector<double>* loss_history = nullptr);
// Collects on `sim_robot` through the bundle's policy and fits a model over
// `kind` (kLatent or kLibrary).
DynamicsTrainingResult TrainPolicyDynamics(
    const ConfigFile& cfg, const RobotModel& sim_robot,
    std::shared_ptr<const PolicyBundle> bundle, ActionKind kind,
    int samples, std::uint64_t seed);
// Planner over the expert codes, with dynamics re-fit on code actions.
Planner LibraryPlanner(const Pipeline& pipeline, const RobotModel& sim_robot,
                       std::uint64_t seed);
Planner IkPlanner(const ConfigFile& cfg, const RobotModel& sim_robot,
                  std::uint64_t seed);

struct TaskCase {
  std::string name;
  TaskSpec task;
  int max_steps = 0;
};

// Velocity targets (0, v), (v, 0), (0, -v), (-v, 0) with v the scaled
// target speed.
std::vector<TaskCase> VelocityCases(const ConfigFile& cfg);
// Goals evenly spaced on the goal circle with the configured heading.
std::vector<TaskCase> GoalCases(const ConfigFile& cfg);
std::vector<TaskCase> TrajectoryCases(const ConfigFile& cfg);
std::vector<TaskCase> AllCases(const ConfigFile& cfg);

struct Method {
  std::string name;
  Planner planner;
};

struct TrialRecord {
  std::string method;
  std::string task;
  TaskKind kind = TaskKind::kVelocity;
  int trial = 0;
  std::uint64_t seed = 0;
  double cost = 0.0;  // mean step cost
  int steps = 0;
  int steps_to_goal = -1;
  bool reached = false;
  double final_position_error = 0.0;  // goal tasks
  int instability_events = 0;
};

struct CostSummary {
  std::string method;
  std::string group;  // a task name or a task kind
  double mean = 0.0;
  double stddev = 0.0;  // population, over trials
  int trials = 0;
};

struct SuiteResult {
  std::string config_hash;
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<TrialRecord> records;
  // Per (method, task) and per (method, task kind). For a kind, each
  // trial's value is the mean over the kind's tasks.
  std::vector<CostSummary> summaries;

  const CostSummary* Find(const std::string& method,
                          const std::string& group) const;
  // Mean over trials of the per-trial cost averaged over the group; throws
  // IndexOutOfRange when missing.
  double MeanCost(const std::string& method, const std::string& group) const;
};

// Runs every method on every task for `trials` trials. Trial t uses
// DeriveSeed(seed, t) for the simulator and planner of every method, so
// methods are paired.
SuiteResult RunSuite(const std::vector<Method>& methods,
                     const std::vector<TaskCase>& tasks, int trials,
                     std::uint64_t seed, const RobotModel& sim_robot,
                     const ConfigFile& cfg);

std::string SuiteToJson(const SuiteResult& result);
// method,task,trial,cost,steps
std::string SuiteToCsv(const SuiteResult& result);

struct GaitPattern {
  // stance[leg][tick]
  std::vector<std::vector<bool>> stance;
  // duty[cycle][leg], fraction of the cycle's ticks in stance.
  std::vector<std::vector<double>> duty;
  // Per cycle, the stance masks (bit i = leg i) each held for at least a
  // fifth of the cycle, ascending.
  std::vector<std::vector<std::uint32_t>> dominant;
  // gait_change[c] compares the dominant masks of cycles c and c + 1.
  std::vector<bool> gait_change;

  bool any_gait_change() const;
};

GaitPattern ExtractGaitPattern(const std::vector<StepRecord>& ticks,
                               int leg_count, int cycle_length);

struct AdverseResult {
  SuiteResult suite;  // methods "lat", "lat-stale", "ik"
  double latent = 0.0;
  double stale = 0.0;
  double ik = 0.0;
};

// Freezes the adverse legs, re-learns latent and command dynamics with the
// same budget and evaluates velocity tracking, together with the latent
// planner keeping its normal-setting dynamics.
AdverseResult RunAdverse(const Pipeline& pipeline,
                         const RobotModel& adverse_robot, int trials,
                         std::uint64_t seed);

enum class AblationSweep { kLatentDim, kExpertCount, kDynSamples };

std::string AblationSweepName(AblationSweep sweep);
AblationSweep ParseAblationSweep(const std::string& name);

struct AblationConfig {
  AblationSweep sweep = AblationSweep::kDynSamples;
  std::vector<int> values;  // empty selects the standard set
  int trials = 10;

  std::vector<int> Values() const;
  // Throws InvalidConfig for values outside the standard set.
  void Validate() const;
};

struct AblationPoint {
  int value = 0;
  SuiteResult suite;
  double mean_cost = 0.0;  // over all three task kinds
  double seconds = 0.0;
};

struct AblationResult {
  AblationConfig config;
  std::vector<AblationPoint> points;

  const AblationPoint& At(int value) const;
};

// Retrains the swept stage and everything downstream of it per value and
// evaluates the latent planner on all three task kinds.
AblationResult RunAblation(const AblationConfig& ablation,
                           const ConfigFile& base, std::uint64_t seed);

std::string AblationToCsv(const AblationResult& result);

}  // namespace latgait

#endif  // LATGAIT_HARNESS_H_
