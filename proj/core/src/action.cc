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

#include "latgait/action.h"

#include <string>

namespace latgait {

std::string_view ActionKindName(ActionKind kind) {
  switch (kind) {
    case ActionKind::kLatent:
      return "latent";
    case ActionKind::kLibrary:
      return "library";
    case ActionKind::kCommand:
      return "command";
  }
  return "latent";
}

ActionKind ParseActionKind(std::string_view name) {
  if (name == "latent") return ActionKind::kLatent;
  if (name == "library") return ActionKind::kLibrary;
  if (name == "command") return ActionKind::kCommand;
  throw InvalidConfig("unknown action kind '" + std::string(name) + "'");
}

ActionSpace ActionSpace::Latent(const PolicyBundle& bundle) {
  ActionSpace space;
  space.kind = ActionKind::kLatent;
  space.lo = bundle.code_lo;
  space.hi = bundle.code_hi;
  return space;
}

ActionSpace ActionSpace::Library(const PolicyBundle& bundle) {
  ActionSpace space;
  space.kind = ActionKind::kLibrary;
  space.codes = bundle.codes;
  return space;
}

ActionSpace ActionSpace::Commands(const CommandBounds& bounds) {
  ActionSpace space;
  space.kind = ActionKind::kCommand;
  space.bounds = bounds;
  return space;
}

int ActionSpace::dim() const {
  switch (kind) {
    case ActionKind::kLatent:
      return static_cast<int>(lo.size());
    case ActionKind::kLibrary:
      return static_cast<int>(codes.rows());
    case ActionKind::kCommand:
      return 3;
  }
  return 0;
}

Eigen::VectorXd ActionSpace::Sample(std::mt19937_64& rng) const {
  switch (kind) {
    case ActionKind::kLatent: {
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      Eigen::VectorXd a(lo.size());
      for (Eigen::Index i = 0; i < a.size(); ++i) {
        a[i] = lo[i] + (hi[i] - lo[i]) * unit(rng);
      }
      return a;
    }
    case ActionKind::kLibrary: {
      if (codes.cols() == 0) throw EmptyLibrary("library action space is empty");
      std::uniform_int_distribution<Eigen::Index> pick(0, codes.cols() - 1);
      return codes.col(pick(rng));
    }
    case ActionKind::kCommand: {
      const ComCommand cmd = SampleCommand(bounds, rng);
      return Eigen::Vector3d(cmd.dx, cmd.dy, cmd.dyaw);
    }
  }
  return {};
}

Eigen::MatrixXd CommandController::CycleCommands(
    const Eigen::VectorXd& action) const {
  if (action.size() != 3) {
    throw DimensionMismatch("command action must have 3 entries");
  }
  const ComCommand cmd = bounds_.Clamp({action[0], action[1], action[2]});
  return ExpertJointTable(model_, cmd, cfg_);
}

}  // namespace latgait
