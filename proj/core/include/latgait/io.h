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


// Artifact files. Models and libraries are JSON documents carrying a
// "hash" over their own content plus the hashes of what they were built
// from; bulk numeric data is CSV.

#ifndef LATGAIT_IO_H_
#define LATGAIT_IO_H_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "latgait/dynamics.h"
#include "latgait/expert.h"
#include "latgait/latent.h"
#include "latgait/nn.h"
#include "latgait/planner.h"
#include "latgait/robot.h"

namespace latgait {

// Hash of the robot geometry, ignoring which legs are disabled.
std::string RobotHash(const RobotModel& model);

struct ExpertLibrary {
  std::vector<ExpertTrajectory> experts;
  CommandBounds bounds;
  std::uint64_t seed = 0;
  std::string robot_hash;
  std::string config_hash;
};

// Content hash of each artifact, as embedded in its file.
std::string ArtifactHash(const ExpertLibrary& library);
std::string ArtifactHash(const PolicyBundle& bundle);
std::string ArtifactHash(const DynamicsModel& model);

std::string NetworkToJson(const Network& net);
Network NetworkFromJson(const std::string& text);

// Parsers verify the embedded hash and throw IoError on a mismatch or a
// malformed document.
std::string ExpertsToJson(const ExpertLibrary& library);
ExpertLibrary ExpertsFromJson(const std::string& text);
std::string BundleToJson(const PolicyBundle& bundle);
PolicyBundle BundleFromJson(const std::string& text);
std::string DynamicsToJson(const DynamicsModel& model);
DynamicsModel DynamicsFromJson(const std::string& text);

std::string ReadFile(const std::string& path);
// Writes through a temporary file and renames it into place.
void WriteFile(const std::string& path, const std::string& contents);

void SaveExperts(const ExpertLibrary& library, const std::string& path);
ExpertLibrary LoadExperts(const std::string& path);
void SaveBundle(const PolicyBundle& bundle, const std::string& path);
PolicyBundle LoadBundle(const std::string& path);
void SaveDynamics(const DynamicsModel& model, const std::string& path);
DynamicsModel LoadDynamics(const std::string& path);

// Header vx,vy,a0..a{D-1},dx,dy,dyaw,vx_next,vy_next.
std::string DatasetToCsv(const std::vector<TransitionSample>& data);
std::vector<TransitionSample> DatasetFromCsv(const std::string& text);

// Provenance of a dataset, stored next to it as <csv>.meta.json.
struct DatasetMeta {
  ActionKind action_kind = ActionKind::kLatent;
  std::string policy_hash;
  std::string robot_hash;
  std::string config_hash;
  std::string dataset_hash;  // hash of the CSV bytes
  std::set<int> disabled_legs;
  std::uint64_t seed = 0;
  int samples = 0;
};
std::string DatasetMetaToJson(const DatasetMeta& meta);
DatasetMeta DatasetMetaFromJson(const std::string& text);

// One row per low-level tick: step,x,y,yaw,vx,vy,stance,q0..q{J-1}.
std::string TicksToCsv(const std::vector<StepRecord>& ticks, int joint_count);
// One row per planning step with the chosen action, predicted and realized
// next state and the step cost.
std::string EpisodeStepsToCsv(const EpisodeLog& log);
// {mean_step_cost, steps_to_goal, instability_events, ...}
std::string EpisodeSummaryToJson(const EpisodeLog& log,
                                 const std::string& extra_json = "{}");

// Shortest text that parses back to the same double.
std::string FormatDouble(double value);

}  // namespace latgait

#endif  // LATGAIT_IO_H_
