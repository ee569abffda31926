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

// High-level action spaces and the low-level controllers that execute them.

#ifndef LATGAIT_ACTION_H_
#define LATGAIT_ACTION_H_

#include <memory>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "latgait/expert.h"
#include "latgait/latent.h"
#include "latgait/robot.h"

namespace latgait {

enum class ActionKind {
  kLatent,   // continuous box over learned codes (LAT)
  kLibrary,  // the discrete set of trained expert codes (LIB)
  kCommand,  // CoM displacement commands executed by the IK expert (IK)
};

std::string_view ActionKindName(ActionKind kind);
ActionKind ParseActionKind(std::string_view name);

struct ActionSpace {
  ActionKind kind = ActionKind::kLatent;
  Eigen::VectorXd lo;     // kLatent
  Eigen::VectorXd hi;     // kLatent
  Eigen::MatrixXd codes;  // kLibrary, one code per column
  CommandBounds bounds;   // kCommand

  static ActionSpace Latent(const PolicyBundle& bundle);
  static ActionSpace Library(const PolicyBundle& bundle);
  static ActionSpace Commands(const CommandBounds& bounds);

  int dim() const;
  // Uniform draw: over the box, the code set, or the command disk x yaw
  // interval.
  Eigen::VectorXd Sample(std::mt19937_64& rng) const;
};

// Maps a high-level action to one cycle of joint targets (N x joints).
class LowLevelController {
 public:
  virtual ~LowLevelController() = default;
  virtual int action_dim() const = 0;
  virtual int cycle_length() const = 0;
  virtual Eigen::MatrixXd CycleCommands(const Eigen::VectorXd& action) const = 0;
};

// The learned policy evaluated at a latent code.
class PolicyController : public LowLevelController {
 public:
  explicit PolicyController(std::shared_ptr<const PolicyBundle> bundle)
      : bundle_(std::move(bundle)) {}
  int action_dim() const override { return bundle_->latent_dim(); }
  int cycle_length() const override { return bundle_->cycle_length; }
  Eigen::MatrixXd CycleCommands(const Eigen::VectorXd& action) const override {
    return bundle_->CycleTable(action);
  }
  const PolicyBundle& bundle() const { return *bundle_; }

 private:
  std::shared_ptr<const PolicyBundle> bundle_;
};

// The footstep/IK expert driven directly by (dx, dy, dyaw) commands.
class CommandController : public LowLevelController {
 public:
  CommandController(RobotModel model, ExpertConfig cfg, CommandBounds bounds)
      : model_(std::move(model)), cfg_(cfg), bounds_(bounds) {}
  int action_dim() const override { return 3; }
  int cycle_length() const override { return cfg_.cycle_length; }
  Eigen::MatrixXd CycleCommands(const Eigen::VectorXd& action) const override;

 private:
  RobotModel model_;
  ExpertConfig cfg_;
  CommandBounds bounds_;
};

}  // namespace latgait

#endif  // LATGAIT_ACTION_H_
