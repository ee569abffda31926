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


#include "latgait/config.h"

#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "latgait/hash.h"

namespace latgait {
namespace {

using nlohmann::json;

// Reads the fields of one JSON object and rejects keys nobody asked for.
class Section {
 public:
  Section(const json& parent, const std::string& name) : name_(name) {
    if (!parent.contains(name)) return;
    node_ = &parent.at(name);
    if (!node_->is_object()) {
      throw InvalidConfig("section '" + name + "' must be an object");
    }
  }
  ~Section() noexcept(false) {
    if (node_ == nullptr || std::uncaught_exceptions() > 0) return;
    for (const auto& item : node_->items()) {
      if (!seen_.contains(item.key())) {
        throw InvalidConfig("unknown key '" + name_ + "." + item.key() + "'");
      }
    }
  }

  template <typename T>
  void Read(const std::string& key, T& value) {
    seen_.insert(key);
    if (node_ == nullptr || !node_->contains(key)) return;
    const json& v = node_->at(key);
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw InvalidConfig("");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw InvalidConfig("");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) throw InvalidConfig("");
      }
      value = v.get<T>();
    } catch (const std::exception&) {
      throw InvalidConfig("key '" + name_ + "." + key + "' has the wrong type");
    }
  }

 private:
  std::string name_;
  const json* node_ = nullptr;
  std::set<std::string> seen_;
};

std::string MorphologyName(RobotGeometry::Morphology m) {
  return m == RobotGeometry::Morphology::kQuadruped ? "quadruped" : "hexapod";
}

RobotGeometry::Morphology ParseMorphology(const std::string& name) {
  if (name == "hexapod") return RobotGeometry::Morphology::kHexapod;
  if (name == "quadruped") return RobotGeometry::Morphology::kQuadruped;
  throw InvalidConfig("unknown morphology '" + name + "'");
}

json ToJson(const ConfigFile& c) {
  json j;
  j["profile"] = c.profile;
  j["robot"] = {
      {"morphology", MorphologyName(c.robot.morphology)},
      {"hip_radius", c.robot.hip_radius},
      {"body_length", c.robot.body_length},
      {"body_width", c.robot.body_width},
      {"link_lengths", c.robot.link_lengths},
      {"nominal_height", c.robot.nominal_height},
      {"nominal_reach", c.robot.nominal_reach},
      {"joint_limit", c.robot.joint_limit},
      {"disabled_legs", c.robot.disabled_legs},
  };
  j["sim"] = {
      {"dt", c.sim.dt},
      {"servo_rate_limit", c.sim.servo_rate_limit},
      {"contact_epsilon", c.sim.contact_epsilon},
      {"slip_threshold", c.sim.slip_threshold},
      {"slip_gain", c.sim.slip_gain},
      {"registration_noise_std", c.sim.registration_noise_std},
      {"ground_height", c.sim.ground_height},
      {"velocity_smoothing", c.sim.velocity_smoothing},
  };
  j["expert"] = {
      {"cycle_length", c.expert.gait.cycle_length},
      {"clearance", c.expert.gait.clearance},
      {"reach_margin", c.expert.gait.reach_margin},
      {"max_step", c.expert.bounds.max_step},
      {"max_yaw", c.expert.bounds.max_yaw},
      {"count", c.expert.count},
      {"seed", c.expert.seed},
  };
  j["training"] = {
      {"latent_dim", c.training.latent_dim},
      {"hidden", c.training.hidden},
      {"epochs", c.training.epochs},
      {"batch", c.training.batch},
      {"lr", c.training.lr},
      {"seed", c.training.seed},
      {"code_init_std", c.training.code_init_std},
      {"box_margin", c.training.box_margin},
  };
  j["dynamics"] = {
      {"hidden", c.dynamics.training.hidden},
      {"epochs", c.dynamics.training.epochs},
      {"batch", c.dynamics.training.batch},
      {"lr", c.dynamics.training.lr},
      {"seed", c.dynamics.training.seed},
      {"holdout_fraction", c.dynamics.training.holdout_fraction},
      {"samples", c.dynamics.samples},
      {"reset_interval", c.dynamics.reset_interval},
  };
  j["planner"] = {
      {"samples", c.planner.plan.samples},
      {"horizon", c.planner.plan.horizon},
      {"seed", c.planner.plan.seed},
      {"threads", c.planner.plan.threads},
      {"position_weight", c.planner.position_weight},
      {"yaw_weight", c.planner.yaw_weight},
      {"goal_tolerance", c.planner.goal_tolerance},
      {"goal_yaw_tolerance", c.planner.goal_yaw_tolerance},
  };
  j["harness"] = {
      {"trials", c.harness.trials},
      {"seed", c.harness.seed},
      {"velocity_target", c.harness.velocity_target},
      {"velocity_scale", c.harness.velocity_scale},
      {"velocity_steps", c.harness.velocity_steps},
      {"goal_radius", c.harness.goal_radius},
      {"goal_heading", c.harness.goal_heading},
      {"goal_count", c.harness.goal_count},
      {"goal_max_steps", c.harness.goal_max_steps},
      {"trajectory_steps", c.harness.trajectory_steps},
      {"adverse_legs", c.harness.adverse_legs},
  };
  return j;
}

ConfigFile FromJson(const json& j) {
  if (!j.is_object()) throw InvalidConfig("config must be a JSON object");
  const std::set<std::string> sections = {
      "profile", "robot",    "sim",     "expert",
      "training", "dynamics", "planner", "harness"};
  for (const auto& item : j.items()) {
    if (!sections.contains(item.key())) {
      throw InvalidConfig("unknown config section '" + item.key() + "'");
    }
  }
  std::string profile = "desk";
  if (j.contains("profile")) {
    if (!j.at("profile").is_string()) {
      throw InvalidConfig("'profile' must be a string");
    }
    profile = j.at("profile").get<std::string>();
  }
  ConfigFile c = ProfileDefaults(profile);
  {
    Section s(j, "robot");
    std::string morphology = MorphologyName(c.robot.morphology);
    s.Read("morphology", morphology);
    c.robot.morphology = ParseMorphology(morphology);
    s.Read("hip_radius", c.robot.hip_radius);
    s.Read("body_length", c.robot.body_length);
    s.Read("body_width", c.robot.body_width);
    s.Read("link_lengths", c.robot.link_lengths);
    s.Read("nominal_height", c.robot.nominal_height);
    s.Read("nominal_reach", c.robot.nominal_reach);
    s.Read("joint_limit", c.robot.joint_limit);
    s.Read("disabled_legs", c.robot.disabled_legs);
  }
  {
    Section s(j, "sim");
    s.Read("dt", c.sim.dt);
    s.Read("servo_rate_limit", c.sim.servo_rate_limit);
    s.Read("contact_epsilon", c.sim.contact_epsilon);
    s.Read("slip_threshold", c.sim.slip_threshold);
    s.Read("slip_gain", c.sim.slip_gain);
    s.Read("registration_noise_std", c.sim.registration_noise_std);
    s.Read("ground_height", c.sim.ground_height);
    s.Read("velocity_smoothing", c.sim.velocity_smoothing);
  }
  {
    Section s(j, "expert");
    s.Read("cycle_length", c.expert.gait.cycle_length);
    s.Read("clearance", c.expert.gait.clearance);
    s.Read("reach_margin", c.expert.gait.reach_margin);
    s.Read("max_step", c.expert.bounds.max_step);
    s.Read("max_yaw", c.expert.bounds.max_yaw);
    s.Read("count", c.expert.count);
    s.Read("seed", c.expert.seed);
  }
  {
    Section s(j, "training");
    s.Read("latent_dim", c.training.latent_dim);
    s.Read("hidden", c.training.hidden);
    s.Read("epochs", c.training.epochs);
    s.Read("batch", c.training.batch);
    s.Read("lr", c.training.lr);
    s.Read("seed", c.training.seed);
    s.Read("code_init_std", c.training.code_init_std);
    s.Read("box_margin", c.training.box_margin);
  }
  {
    Section s(j, "dynamics");
    s.Read("hidden", c.dynamics.training.hidden);
    s.Read("epochs", c.dynamics.training.epochs);
    s.Read("batch", c.dynamics.training.batch);
    s.Read("lr", c.dynamics.training.lr);
    s.Read("seed", c.dynamics.training.seed);
    s.Read("holdout_fraction", c.dynamics.training.holdout_fraction);
    s.Read("samples", c.dynamics.samples);
    s.Read("reset_interval", c.dynamics.reset_interval);
  }
  {
    Section s(j, "planner");
    s.Read("samples", c.planner.plan.samples);
    s.Read("horizon", c.planner.plan.horizon);
    s.Read("seed", c.planner.plan.seed);
    s.Read("threads", c.planner.plan.threads);
    s.Read("position_weight", c.planner.position_weight);
    s.Read("yaw_weight", c.planner.yaw_weight);
    s.Read("goal_tolerance", c.planner.goal_tolerance);
    s.Read("goal_yaw_tolerance", c.planner.goal_yaw_tolerance);
  }
  {
    Section s(j, "harness");
    s.Read("trials", c.harness.trials);
    s.Read("seed", c.harness.seed);
    s.Read("velocity_target", c.harness.velocity_target);
    s.Read("velocity_scale", c.harness.velocity_scale);
    s.Read("velocity_steps", c.harness.velocity_steps);
    s.Read("goal_radius", c.harness.goal_radius);
    s.Read("goal_heading", c.harness.goal_heading);
    s.Read("goal_count", c.harness.goal_count);
    s.Read("goal_max_steps", c.harness.goal_max_steps);
    s.Read("trajectory_steps", c.harness.trajectory_steps);
    s.Read("adverse_legs", c.harness.adverse_legs);
  }
  c.Validate();
  return c;
}

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw InvalidConfig(std::string(name) + " must be positive");
  }
}

void RequireHidden(const std::vector<int>& hidden, const char* name) {
  for (int h : hidden) {
    if (h < 1) throw InvalidConfig(std::string(name) + " widths must be >= 1");
  }
}

}  // namespace

ConfigFile ProfileDefaults(const std::string& profile) {
  ConfigFile c;
  if (profile == "desk") return c;
  if (profile != "paper") {
    throw InvalidConfig("unknown profile '" + profile + "'");
  }
  c.profile = "paper";
  c.expert.count = 50;
  c.training.hidden = {512, 512};
  c.dynamics.training.hidden = {512, 512};
  c.dynamics.samples = 10000;
  c.harness.trials = 10;
  c.harness.velocity_scale = 1.0;
  c.harness.goal_radius = 2.0;
  return c;
}

void ConfigFile::Validate() const {
  Robot().Validate();
  sim.Validate();
  if (expert.gait.cycle_length < 2) {
    throw InvalidConfig("expert.cycle_length must be >= 2");
  }
  RequirePositive(expert.gait.clearance, "expert.clearance");
  if (expert.gait.reach_margin < 0.0) {
    throw InvalidConfig("expert.reach_margin must be >= 0");
  }
  RequirePositive(expert.bounds.max_step, "expert.max_step");
  if (expert.bounds.max_yaw < 0.0) {
    throw InvalidConfig("expert.max_yaw must be >= 0");
  }
  if (expert.count < 1) throw InvalidConfig("expert.count must be >= 1");
  if (training.latent_dim < 1) {
    throw InvalidConfig("training.latent_dim must be >= 1");
  }
  RequireHidden(training.hidden, "training.hidden");
  if (training.epochs < 0 || training.batch < 1) {
    throw InvalidConfig("training.epochs must be >= 0 and batch >= 1");
  }
  RequirePositive(training.lr, "training.lr");
  RequirePositive(training.code_init_std, "training.code_init_std");
  if (training.box_margin < 0.0) {
    throw InvalidConfig("training.box_margin must be >= 0");
  }
  RequireHidden(dynamics.training.hidden, "dynamics.hidden");
  if (dynamics.training.epochs < 0 || dynamics.training.batch < 1) {
    throw InvalidConfig("dynamics.epochs must be >= 0 and batch >= 1");
  }
  RequirePositive(dynamics.training.lr, "dynamics.lr");
  if (!(dynamics.training.holdout_fraction > 0.0 &&
        dynamics.training.holdout_fraction < 1.0)) {
    throw InvalidConfig("dynamics.holdout_fraction must be in (0, 1)");
  }
  if (dynamics.samples < 1 || dynamics.reset_interval < 1) {
    throw InvalidConfig("dynamics.samples and reset_interval must be >= 1");
  }
  if (planner.plan.samples < 1 || planner.plan.horizon < 1 ||
      planner.plan.threads < 0) {
    throw InvalidConfig(
        "planner.samples and horizon must be >= 1, threads >= 0");
  }
  RequirePositive(planner.position_weight, "planner.position_weight");
  RequirePositive(planner.yaw_weight, "planner.yaw_weight");
  RequirePositive(planner.goal_tolerance, "planner.goal_tolerance");
  RequirePositive(planner.goal_yaw_tolerance, "planner.goal_yaw_tolerance");
  if (harness.trials < 1) throw InvalidConfig("harness.trials must be >= 1");
  if (harness.velocity_target < 0.0) {
    throw InvalidConfig("harness.velocity_target must be >= 0");
  }
  RequirePositive(harness.velocity_scale, "harness.velocity_scale");
  RequirePositive(harness.goal_radius, "harness.goal_radius");
  if (harness.velocity_steps < 1 || harness.goal_max_steps < 1 ||
      harness.trajectory_steps < 1 || harness.goal_count < 0) {
    throw InvalidConfig("harness step budgets must be >= 1");
  }
  AdverseRobot().Validate();
}

RobotModel ConfigFile::Robot() const { return MakeRobot(robot); }

RobotModel ConfigFile::AdverseRobot() const {
  RobotModel model = Robot();
  if (harness.adverse_legs.empty()) {
    const std::set<int> hind = HindLegs(model);
    model.disabled_legs.insert(hind.begin(), hind.end());
  } else {
    model.disabled_legs.insert(harness.adverse_legs.begin(),
                               harness.adverse_legs.end());
  }
  return model;
}

TaskSpec ConfigFile::Configure(TaskSpec task) const {
  task.position_weight = planner.position_weight;
  task.yaw_weight = planner.yaw_weight;
  task.goal_tolerance = planner.goal_tolerance;
  task.goal_yaw_tolerance = planner.goal_yaw_tolerance;
  return task;
}

PlanConfig ConfigFile::Plan() const {
  PlanConfig plan = planner.plan;
  if (plan.threads == 0) {
    plan.threads = std::max(1u, std::thread::hardware_concurrency());
  }
  return plan;
}

std::string ConfigToJson(const ConfigFile& cfg) {
  return ToJson(cfg).dump(2) + "\n";
}

ConfigFile ConfigFromJson(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("config is not valid JSON: ") + e.what());
  }
  return FromJson(j);
}

ConfigFile LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return ConfigFromJson(text.str());
}

void SaveConfig(const ConfigFile& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config '" + path + "'");
  out << ConfigToJson(cfg);
  if (!out) throw IoError("failed writing config '" + path + "'");
}

std::string ConfigHash(const ConfigFile& cfg) {
  // Thread count does not change results.
  json j = ToJson(cfg);
  j["planner"].erase("threads");
  return HashHex(j.dump());
}

}  // namespace latgait
