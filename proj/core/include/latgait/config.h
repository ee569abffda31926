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


// The JSON configuration file. Every field has a default; unknown keys are
// rejected.

#ifndef LATGAIT_CONFIG_H_
#define LATGAIT_CONFIG_H_

#include <cstdint>
#include <string>
#include <vector>

#include "latgait/dynamics.h"
#include "latgait/expert.h"
#include "latgait/latent.h"
#include "latgait/planner.h"
#include "latgait/robot.h"
#include "latgait/sim.h"

namespace latgait {

struct ExpertSection {
  ExpertConfig gait;
  CommandBounds bounds;
  int count = 8;
  std::uint64_t seed = 7;
};

struct DynamicsSection {
  DynamicsTrainingConfig training;
  int samples = 2000;
  int reset_interval = 25;
};

struct PlannerSection {
  // threads = 0 uses every available processor.
  PlanConfig plan{.samples = 8000, .horizon = 1, .seed = 0, .threads = 0};
  double position_weight = 2.0;
  double yaw_weight = 1.0;
  double goal_tolerance = 0.1;
  double goal_yaw_tolerance = 0.2;
};

struct HarnessConfig {
  int trials = 5;
  std::uint64_t seed = 1;
  double velocity_target = 0.2;  // m/s before desk scaling
  double velocity_scale = 0.5;
  int velocity_steps = 20;
  double goal_radius = 1.0;  // m
  double goal_heading = kPi / 2;
  int goal_count = 8;
  int goal_max_steps = 60;
  int trajectory_steps = 40;
  // Legs frozen in the adverse setting; empty selects the two hind legs.
  std::vector<int> adverse_legs;
};

struct ConfigFile {
  std::string profile = "desk";  // "desk" or "paper"
  RobotGeometry robot;
  SimConfig sim;
  ExpertSection expert;
  TrainingConfig training;
  DynamicsSection dynamics;
  PlannerSection planner;
  HarnessConfig harness;

  // Throws InvalidConfig on the first violated invariant.
  void Validate() const;

  // The robot described by the `robot` section.
  RobotModel Robot() const;
  // The same robot with the adverse legs frozen.
  RobotModel AdverseRobot() const;
  // Task weights and tolerances applied to `task`.
  TaskSpec Configure(TaskSpec task) const;
  // Planner settings with threads = 0 resolved to the processor count.
  PlanConfig Plan() const;
};

// Defaults of a named profile: "desk", or "paper" with 512x2 networks,
// 50 experts and 10000 dynamics samples. Throws InvalidConfig otherwise.
ConfigFile ProfileDefaults(const std::string& profile);

std::string ConfigToJson(const ConfigFile& cfg);
// Missing fields keep the defaults of the file's profile. Throws InvalidConfig on unknown keys
// or wrong types.
ConfigFile ConfigFromJson(const std::string& text);
ConfigFile LoadConfig(const std::string& path);
void SaveConfig(const ConfigFile& cfg, const std::string& path);
std::string ConfigHash(const ConfigFile& cfg);

}  // namespace latgait

#endif  // LATGAIT_CONFIG_H_
