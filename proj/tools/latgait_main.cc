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

// latgait: file-based pipeline driver. Every stage reads its inputs from
// disk, writes one artifact and exits 0 only on full success.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "latgait/action.h"
#include "latgait/checks.h"
#include "latgait/config.h"
#include "latgait/dynamics.h"
#include "latgait/harness.h"
#include "latgait/hash.h"
#include "latgait/io.h"
#include "latgait/latent.h"
#include "latgait/planner.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace latgait;

struct GlobalOptions {
  std::string config_path;
  int threads = 0;  // 0 = every available processor
};

ConfigFile LoadEffectiveConfig(const GlobalOptions& opts) {
  ConfigFile cfg = opts.config_path.empty() ? ConfigFile{}
                                            : LoadConfig(opts.config_path);
  cfg.planner.plan.threads = opts.threads;
  cfg.Validate();
  return cfg;
}

// "a/b.json" -> "a/b.<suffix>"
std::string SiblingPath(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  p.replace_extension(suffix);
  return p.string();
}

std::string MetaPath(const std::string& csv_path) {
  return csv_path + ".meta.json";
}

void Require(bool ok, const std::string& message) {
  if (!ok) throw IoError(message);
}

// ---------------------------------------------------------------- gen-experts

struct GenExpertsOptions {
  std::optional<int> count;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int RunGenExperts(const GlobalOptions& g, const GenExpertsOptions& o) {
  ConfigFile cfg = LoadEffectiveConfig(g);
  if (o.count) cfg.expert.count = *o.count;
  if (o.seed) cfg.expert.seed = *o.seed;
  cfg.Validate();
  const RobotModel robot = cfg.Robot();
  const ExpertLibrary lib = GenerateLibrary(cfg, robot);
  SaveExperts(lib, o.out);
  std::cout << "experts: " << lib.experts.size()
            << "\ncycle_length: " << cfg.expert.gait.cycle_length
            << "\nmax_step: " << FormatDouble(lib.bounds.max_step)
            << "\nmax_yaw: " << FormatDouble(lib.bounds.max_yaw)
            << "\nhash: " << ArtifactHash(lib) << "\nwrote " << o.out << "\n";
  return 0;
}

// --------------------------------------------------------------- train-latent

struct TrainLatentOptions {
  std::string experts;
  std::optional<int> latent_dim;
  std::optional<int> epochs;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string loss_csv;
};

int RunTrainLatent(const GlobalOptions& g, const TrainLatentOptions& o) {
  ConfigFile cfg = LoadEffectiveConfig(g);
  if (o.latent_dim) cfg.training.latent_dim = *o.latent_dim;
  if (o.epochs) cfg.training.epochs = *o.epochs;
  if (o.seed) cfg.training.seed = *o.seed;
  cfg.Validate();
  const ExpertLibrary lib = LoadExperts(o.experts);
  const RobotModel robot = cfg.Robot();
  Require(lib.robot_hash == RobotHash(robot),
          "expert library was generated for a different robot");
  std::vector<double> loss;
  const PolicyBundle bundle = TrainPolicy(cfg, robot, lib, &loss);
  SaveBundle(bundle, o.out);

  std::string csv = "epoch,loss\n";
  for (std::size_t i = 0; i < loss.size(); ++i) {
    csv += std::to_string(i) + "," + FormatDouble(loss[i]) + "\n";
  }
  const std::string loss_path =
      o.loss_csv.empty() ? SiblingPath(o.out, ".loss.csv") : o.loss_csv;
  WriteFile(loss_path, csv);

  const double ratio = loss.front() > 0.0 ? loss.back() / loss.front() : 0.0;
  std::cout << "latent_dim: " << bundle.latent_dim()
            << "\nexperts: " << bundle.expert_count()
            << "\ninitial_loss: " << FormatDouble(loss.front())
            << "\nfinal_loss: " << FormatDouble(loss.back())
            << "\nloss_ratio: " << FormatDouble(ratio)
            << "\nhash: " << ArtifactHash(bundle) << "\nwrote " << o.out
            << " and " << loss_path << "\n";
  return 0;
}

// ---------------------------------------------------------------- collect-dyn

struct CollectOptions {
  std::string policy;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string action = "latent";
  bool adverse = false;
};

int RunCollectDyn(const GlobalOptions& g, const CollectOptions& o) {
  const ConfigFile cfg = LoadEffectiveConfig(g);
  const ActionKind kind = ParseActionKind(o.action);
  const int samples = o.samples.value_or(cfg.dynamics.samples);
  const std::uint64_t seed = o.seed.value_or(cfg.dynamics.training.seed);
  const RobotModel sim_robot = o.adverse ? cfg.AdverseRobot() : cfg.Robot();

  DatasetMeta meta;
  meta.action_kind = kind;
  meta.robot_hash = RobotHash(sim_robot);
  meta.config_hash = ConfigHash(cfg);
  meta.disabled_legs = sim_robot.disabled_legs;
  meta.seed = seed;

  std::vector<TransitionSample> data;
  if (kind == ActionKind::kCommand) {
    const CommandController controller(cfg.Robot(), cfg.expert.gait,
                                       cfg.expert.bounds);
    data = CollectTransitions(sim_robot, cfg.sim, controller,
                              ActionSpace::Commands(cfg.expert.bounds),
                              samples, seed, cfg.dynamics.reset_interval);
  } else {
    if (o.policy.empty()) throw MissingModel("--policy is required");
    auto bundle = std::make_shared<const PolicyBundle>(LoadBundle(o.policy));
    Require(bundle->robot_hash == meta.robot_hash,
            "policy was trained for a different robot");
    const PolicyController controller(bundle);
    const ActionSpace space = kind == ActionKind::kLatent
                                  ? ActionSpace::Latent(*bundle)
                                  : ActionSpace::Library(*bundle);
    data = CollectTransitions(sim_robot, cfg.sim, controller, space, samples,
                              seed, cfg.dynamics.reset_interval);
    meta.policy_hash = ArtifactHash(*bundle);
  }
  const std::string csv = DatasetToCsv(data);
  meta.dataset_hash = HashHex(csv);
  meta.samples = static_cast<int>(data.size());
  WriteFile(o.out, csv);
  WriteFile(MetaPath(o.out), DatasetMetaToJson(meta));
  std::cout << "samples: " << data.size() << "\naction: " << o.action
            << "\ndataset_hash: " << meta.dataset_hash << "\nwrote " << o.out
            << " and " << MetaPath(o.out) << "\n";
  return 0;
}

// ------------------------------------------------------------------ train-dyn

struct TrainDynOptions {
  std::string data;
  std::string policy;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string loss_csv;
};

int RunTrainDyn(const GlobalOptions& g, const TrainDynOptions& o) {
  const ConfigFile cfg = LoadEffectiveConfig(g);
  const std::string csv = ReadFile(o.data);
  const DatasetMeta meta = DatasetMetaFromJson(ReadFile(MetaPath(o.data)));
  Require(HashHex(csv) == meta.dataset_hash,
          "dataset bytes do not match " + MetaPath(o.data));
  if (!o.policy.empty()) {
    Require(ArtifactHash(LoadBundle(o.policy)) == meta.policy_hash,
            "dataset was collected with a different policy");
  }
  const auto data = DatasetFromCsv(csv);
  DynamicsTrainingConfig train = cfg.dynamics.training;
  train.seed = o.seed.value_or(meta.seed);
  DynamicsTrainingResult result = TrainDynamics(data, meta.action_kind, train);
  DynamicsModel& model = result.model;
  model.policy_hash = meta.policy_hash;
  model.robot_hash = meta.robot_hash;
  model.dataset_hash = meta.dataset_hash;
  model.config_hash = ConfigHash(cfg);
  model.disabled_legs = meta.disabled_legs;
  SaveDynamics(model, o.out);

  std::string loss = "epoch,loss\n";
  for (std::size_t i = 0; i < result.loss_history.size(); ++i) {
    loss += std::to_string(i + 1) + "," +
            FormatDouble(result.loss_history[i]) + "\n";
  }
  const std::string loss_path =
      o.loss_csv.empty() ? SiblingPath(o.out, ".loss.csv") : o.loss_csv;
  WriteFile(loss_path, loss);

  const DynamicsReport& r = result.report;
  std::cout << "train_mse: " << FormatDouble(r.train_mse)
            << "\nheldout_mse: " << FormatDouble(r.heldout_mse)
            << "\nheldout_displacement_rmse: "
            << FormatDouble(r.heldout_displacement_rmse)
            << "\nmean_displacement: " << FormatDouble(r.mean_displacement)
            << "\nhash: " << ArtifactHash(model) << "\nwrote " << o.out
            << " and " << loss_path << "\n";
  return 0;
}

// ------------------------------------------------------------------------ run

struct RunOptions {
  std::string task = "goal";
  std::string policy;
  std::string dyn;
  std::string baseline = "none";
  bool adverse = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int RunRun(const GlobalOptions& g, const RunOptions& o) {
  const ConfigFile cfg = LoadEffectiveConfig(g);
  const TaskKind task_kind = ParseTaskKind(o.task);
  const RobotModel sim_robot = o.adverse ? cfg.AdverseRobot() : cfg.Robot();
  const std::string robot_hash = RobotHash(sim_robot);
  const std::uint64_t seed = o.seed.value_or(cfg.harness.seed);

  // Every consistency check happens before the first rollout.
  auto dynamics = std::make_shared<const DynamicsModel>(LoadDynamics(o.dyn));
  Require(dynamics->robot_hash == robot_hash,
          "dynamics were learned on a different robot");
  const ActionKind expected = o.baseline == "ik"    ? ActionKind::kCommand
                              : o.baseline == "lib" ? ActionKind::kLibrary
                                                    : ActionKind::kLatent;
  if (dynamics->action_kind != expected) {
    throw InvalidConfig("--baseline " + o.baseline + " needs " +
                        std::string(ActionKindName(expected)) +
                        " dynamics, file holds " +
                        std::string(ActionKindName(dynamics->action_kind)));
  }
  Planner planner;
  planner.dynamics = dynamics;
  if (expected == ActionKind::kCommand) {
    planner.controller = std::make_shared<const CommandController>(
        cfg.Robot(), cfg.expert.gait, cfg.expert.bounds);
    planner.space = ActionSpace::Commands(cfg.expert.bounds);
  } else {
    if (o.policy.empty()) throw MissingModel("--policy is required");
    auto bundle = std::make_shared<const PolicyBundle>(LoadBundle(o.policy));
    Require(bundle->robot_hash == robot_hash,
            "policy was trained for a different robot");
    if (bundle->latent_dim() != dynamics->action_dim()) {
      throw DimensionMismatch(
          "policy latent dimension " + std::to_string(bundle->latent_dim()) +
          " does not match dynamics action dimension " +
          std::to_string(dynamics->action_dim()));
    }
    Require(dynamics->policy_hash == ArtifactHash(*bundle),
            "dynamics were learned with a different policy");
    if (bundle->cycle_length != cfg.expert.gait.cycle_length) {
      throw InvalidConfig("policy cycle length does not match config");
    }
    planner.controller = std::make_shared<const PolicyController>(bundle);
    planner.space = expected == ActionKind::kLatent
                        ? ActionSpace::Latent(*bundle)
                        : ActionSpace::Library(*bundle);
  }
  planner.Validate();
  if (dynamics->disabled_legs != sim_robot.disabled_legs) {
    std::cerr << "note: dynamics were learned with a different set of frozen "
                 "legs\n";
  }

  std::vector<TaskCase> cases;
  switch (task_kind) {
    case TaskKind::kVelocity: cases = VelocityCases(cfg); break;
    case TaskKind::kGoal: cases = GoalCases(cfg); break;
    case TaskKind::kTrajectory: cases = TrajectoryCases(cfg); break;
  }

  fs::create_directories(o.out);
  const PlanConfig base_plan = cfg.Plan();
  json episodes = json::array();
  double cost_sum = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const TaskCase& tc = cases[i];
    SimState state = InitialState(sim_robot, ComState{}, DeriveSeed(seed, i));
    PlanConfig plan = base_plan;
    plan.seed = DeriveSeed(seed, 1000 + i);
    const EpisodeLog log = MpcRollout(state, sim_robot, cfg.sim, planner,
                                      tc.task, plan, tc.max_steps);
    const std::string stem = (fs::path(o.out) / tc.name).string();
    WriteFile(stem + ".csv", TicksToCsv(log.ticks, sim_robot.joint_count()));
    WriteFile(stem + ".steps.csv", EpisodeStepsToCsv(log));
    json summary = json::parse(EpisodeSummaryToJson(log));
    summary["task"] = tc.name;
    summary["final_position_error"] =
        std::hypot(tc.task.goal.x() - state.com.x, tc.task.goal.y() - state.com.y);
    episodes.push_back(summary);
    cost_sum += log.mean_step_cost();
    std::cout << tc.name << ": mean_step_cost "
              << FormatDouble(log.mean_step_cost()) << ", steps "
              << log.steps.size();
    if (task_kind == TaskKind::kGoal) {
      std::cout << ", reached " << (log.reached ? "yes" : "no");
    }
    std::cout << "\n";
  }
  const double mean_cost = cost_sum / static_cast<double>(cases.size());
  const json metrics = {{"task", o.task},
                        {"baseline", o.baseline},
                        {"adverse", o.adverse},
                        {"seed", seed},
                        {"config_hash", ConfigHash(cfg)},
                        {"dynamics_hash", ArtifactHash(*dynamics)},
                        {"mean_cost", mean_cost},
                        {"episodes", episodes}};
  const std::string metrics_path = (fs::path(o.out) / "metrics.json").string();
  WriteFile(metrics_path, metrics.dump(1) + "\n");
  std::cout << "mean_cost: " << FormatDouble(mean_cost) << "\nwrote "
            << metrics_path << "\n";
  return 0;
}

// ---------------------------------------------------------------------- check

struct CheckOptions {
  bool gradients = false;
  bool registration = false;
  bool roundtrip = false;
  bool oracle = false;
  std::string policy;
  std::string dyn;
  std::uint64_t seed = 1;
};

int RunCheck(const GlobalOptions& g, CheckOptions o) {
  const ConfigFile cfg = LoadEffectiveConfig(g);
  if (!o.gradients && !o.registration && !o.roundtrip && !o.oracle) {
    o.gradients = o.registration = o.roundtrip = o.oracle = true;
  }
  std::shared_ptr<const DynamicsModel> dyn;
  if (!o.dyn.empty()) {
    dyn = std::make_shared<const DynamicsModel>(LoadDynamics(o.dyn));
  }

  json report = json::object();
  bool all_pass = true;
  auto record = [&](const std::string& name, bool pass, json details) {
    details["pass"] = pass;
    report[name] = std::move(details);
    all_pass = all_pass && pass;
  };

  if (o.gradients) {
    const GradientCheckReport r = CheckGradients(100, o.seed);
    record("gradients",
           r.max_param_error < 1e-4 && r.max_input_error < 1e-4,
           {{"networks", r.networks},
            {"max_param_error", r.max_param_error},
            {"max_input_error", r.max_input_error},
            {"seconds", r.seconds}});
  }
  if (o.registration) {
    const RegistrationCheckReport r = CheckRegistration(1000, o.seed);
    record("registration",
           r.max_translation_error < 1e-9 && r.max_yaw_error < 1e-9,
           {{"cases", r.cases},
            {"max_translation_error", r.max_translation_error},
            {"max_yaw_error", r.max_yaw_error},
            {"seconds", r.seconds}});
  }
  if (o.roundtrip) {
    const DynamicsModel model = dyn ? *dyn : RandomDynamics(2, o.seed);
    const RoundTripReport r = CheckRoundTrip(model, 10000, o.seed);
    record("roundtrip",
           r.max_roundtrip_error < 1e-12 && r.max_equivariance_error < 1e-9,
           {{"states", r.states},
            {"max_roundtrip_error", r.max_roundtrip_error},
            {"max_equivariance_error", r.max_equivariance_error}});
  }
  if (o.oracle) {
    ActionSpace space;
    DynamicsModel model;
    if (dyn) {
      if (o.policy.empty()) throw MissingModel("--oracle with --dyn needs --policy");
      const PolicyBundle bundle = LoadBundle(o.policy);
      Require(dyn->policy_hash == ArtifactHash(bundle),
              "dynamics were learned with a different policy");
      space = ActionSpace::Latent(bundle);
      model = *dyn;
    } else {
      model = RandomDynamics(2, o.seed);
      space.kind = ActionKind::kLatent;
      space.lo = -Eigen::VectorXd::Ones(2);
      space.hi = Eigen::VectorXd::Ones(2);
    }
    PlanConfig plan = cfg.Plan();
    const OracleReport r = CheckShootingOracle(model, space, plan, 20, o.seed);
    const QuadraticReport q = CheckSyntheticQuadratic(plan, o.seed);
    record("oracle", r.max_gap <= 0.02 && q.gap <= 0.02,
           {{"states", r.cases.size()},
            {"max_grid_gap", r.max_gap},
            {"quadratic_gap", q.gap},
            {"samples", plan.samples}});
  }
  report["pass"] = all_pass;
  std::cout << report.dump(2) << "\n";
  return all_pass ? 0 : 1;
}

// -------------------------------------------------------------------- harness

struct HarnessOptions {
  std::string experiment = "suite";
  std::string sweep = "dyn_samples";
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int RunHarness(const GlobalOptions& g, const HarnessOptions& o) {
  const ConfigFile cfg = LoadEffectiveConfig(g);
  const int trials = o.trials.value_or(cfg.harness.trials);
  const std::uint64_t seed = o.seed.value_or(cfg.harness.seed);
  fs::create_directories(o.out);
  const fs::path out(o.out);

  if (o.experiment == "ablation") {
    AblationConfig ab;
    ab.sweep = ParseAblationSweep(o.sweep);
    ab.trials = trials;
    const AblationResult r = RunAblation(ab, cfg, seed);
    const std::string csv = AblationToCsv(r);
    WriteFile((out / "ablation.csv").string(), csv);
    std::cout << csv;
    return 0;
  }

  const Pipeline pipeline = BuildPipeline(cfg);
  SuiteResult suite;
  if (o.experiment == "adverse") {
    const AdverseResult r =
        RunAdverse(pipeline, cfg.AdverseRobot(), trials, seed);
    suite = r.suite;
    std::cout << "lat: " << FormatDouble(r.latent)
              << "\nlat-stale: " << FormatDouble(r.stale)
              << "\nik: " << FormatDouble(r.ik) << "\n";
  } else if (o.experiment == "suite") {
    const RobotModel& robot = pipeline.robot;
    const std::vector<Method> methods = {
        {"lat", pipeline.LatentPlanner()},
        {"lib", LibraryPlanner(pipeline, robot, DeriveSeed(seed, 11))},
        {"ik", IkPlanner(cfg, robot, DeriveSeed(seed, 12))}};
    suite = RunSuite(methods, AllCases(cfg), trials, seed, robot, cfg);
    for (const auto& s : suite.summaries) {
      if (s.group == "velocity" || s.group == "goal" || s.group == "traj") {
        std::cout << s.method << " " << s.group << ": "
                  << FormatDouble(s.mean) << " +- " << FormatDouble(s.stddev)
                  << "\n";
      }
    }
  } else {
    throw InvalidConfig("unknown experiment '" + o.experiment + "'");
  }
  WriteFile((out / (o.experiment + ".json")).string(), SuiteToJson(suite));
  WriteFile((out / (o.experiment + ".csv")).string(), SuiteToCsv(suite));
  std::cout << "wrote " << (out / (o.experiment + ".json")).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"latgait: latent gait learning and model-predictive planning"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  if (const char* env = std::getenv("LATGAIT_CONFIG")) global.config_path = env;
  app.add_option("--config", global.config_path,
                 "Config JSON (default: $LATGAIT_CONFIG, else built-in)")
      ->check(CLI::ExistingFile);
  app.add_option("--threads", global.threads,
                 "Worker threads for shooting (0 = all processors)")
      ->check(CLI::NonNegativeNumber);

  GenExpertsOptions gen;
  auto* gen_cmd = app.add_subcommand("gen-experts", "Generate an expert library");
  gen_cmd->add_option("--count", gen.count, "Number of experts")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Command sampling seed");
  gen_cmd->add_option("--out", gen.out, "Output JSON")->required();

  TrainLatentOptions tl;
  auto* tl_cmd = app.add_subcommand("train-latent",
                                    "Train the latent policy and codes");
  tl_cmd->add_option("--experts", tl.experts, "Expert library JSON")
      ->required()
      ->check(CLI::ExistingFile);
  tl_cmd->add_option("--latent-dim", tl.latent_dim, "Latent dimension")
      ->check(CLI::PositiveNumber);
  tl_cmd->add_option("--epochs", tl.epochs, "Training epochs")
      ->check(CLI::NonNegativeNumber);
  tl_cmd->add_option("--seed", tl.seed, "Training seed");
  tl_cmd->add_option("--out", tl.out, "Output bundle JSON")->required();
  tl_cmd->add_option("--loss-csv", tl.loss_csv,
                     "Loss history CSV (default: <out>.loss.csv)");

  CollectOptions col;
  auto* col_cmd = app.add_subcommand("collect-dyn",
                                     "Collect one-cycle transitions");
  col_cmd->add_option("--policy", col.policy, "Policy bundle JSON");
  col_cmd->add_option("--samples", col.samples, "Transitions to record")
      ->check(CLI::PositiveNumber);
  col_cmd->add_option("--seed", col.seed, "Collection seed");
  col_cmd->add_option("--out", col.out, "Output dataset CSV")->required();
  col_cmd->add_option("--action", col.action, "Action space")
      ->check(CLI::IsMember({"latent", "library", "command"}));
  col_cmd->add_flag("--adverse", col.adverse, "Freeze the adverse legs");

  TrainDynOptions td;
  auto* td_cmd = app.add_subcommand("train-dyn", "Fit a dynamics model");
  td_cmd->add_option("--data", td.data, "Dataset CSV from collect-dyn")
      ->required()
      ->check(CLI::ExistingFile);
  td_cmd->add_option("--policy", td.policy,
                     "Policy bundle JSON to verify against the dataset");
  td_cmd->add_option("--seed", td.seed, "Training seed");
  td_cmd->add_option("--out", td.out, "Output dynamics JSON")->required();
  td_cmd->add_option("--loss-csv", td.loss_csv,
                     "Loss history CSV (default: <out>.loss.csv)");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run MPC episodes for one task");
  run_cmd->add_option("--task", run.task, "Task family")
      ->check(CLI::IsMember({"velocity", "goal", "traj"}));
  run_cmd->add_option("--policy", run.policy, "Policy bundle JSON");
  run_cmd->add_option("--dyn", run.dyn, "Dynamics JSON")
      ->required()
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--baseline", run.baseline, "Action space to plan in")
      ->check(CLI::IsMember({"none", "lib", "ik"}));
  run_cmd->add_flag("--adverse", run.adverse, "Freeze the adverse legs");
  run_cmd->add_option("--seed", run.seed, "Episode seed");
  run_cmd->add_option("--out", run.out, "Output directory")->required();

  CheckOptions chk;
  auto* chk_cmd = app.add_subcommand("check", "Run self-check suites");
  chk_cmd->add_flag("--gradients", chk.gradients, "Finite-difference check");
  chk_cmd->add_flag("--registration", chk.registration,
                    "Registration recovery check");
  chk_cmd->add_flag("--roundtrip", chk.roundtrip,
                    "Frame round trip and equivariance check");
  chk_cmd->add_flag("--oracle", chk.oracle, "Shooting vs grid search check");
  chk_cmd->add_option("--policy", chk.policy, "Policy bundle for --oracle");
  chk_cmd->add_option("--dyn", chk.dyn, "Dynamics for --roundtrip/--oracle");
  chk_cmd->add_option("--seed", chk.seed, "Check seed");

  HarnessOptions hs;
  auto* hs_cmd = app.add_subcommand(
      "harness", "Build the pipeline in memory and run an experiment");
  hs_cmd->add_option("--experiment", hs.experiment, "Experiment")
      ->check(CLI::IsMember({"suite", "adverse", "ablation"}));
  hs_cmd->add_option("--sweep", hs.sweep, "Ablation sweep")
      ->check(CLI::IsMember({"latent_dim", "expert_count", "dyn_samples"}));
  hs_cmd->add_option("--trials", hs.trials, "Trials per task")
      ->check(CLI::PositiveNumber);
  hs_cmd->add_option("--seed", hs.seed, "Master seed");
  hs_cmd->add_option("--out", hs.out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cmd->parsed()) return RunGenExperts(global, gen);
    if (tl_cmd->parsed()) return RunTrainLatent(global, tl);
    if (col_cmd->parsed()) return RunCollectDyn(global, col);
    if (td_cmd->parsed()) return RunTrainDyn(global, td);
    if (run_cmd->parsed()) return RunRun(global, run);
    if (chk_cmd->parsed()) return RunCheck(global, chk);
    if (hs_cmd->parsed()) return RunHarness(global, hs);
  } catch (const latgait::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
