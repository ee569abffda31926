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

#include "latgait/expert.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace latgait {

bool CommandBounds::Contains(const ComCommand& cmd) const {
  return std::hypot(cmd.dx, cmd.dy) <= max_step + 1e-12 &&
         std::abs(cmd.dyaw) <= max_yaw + 1e-12;
}

ComCommand CommandBounds::Clamp(const ComCommand& cmd) const {
  ComCommand out = cmd;
  const double step = std::hypot(cmd.dx, cmd.dy);
  if (step > max_step) {
    out.dx *= max_step / step;
    out.dy *= max_step / step;
  }
  out.dyaw = std::clamp(cmd.dyaw, -max_yaw, max_yaw);
  return out;
}

Eigen::Vector2d FootstepTarget(const ComCommand& cmd,
                               const Eigen::Vector2d& foot) {
  const double r = foot.norm();
  const double gamma = std::atan2(foot.y(), foot.x());
  const double dxf =
      cmd.dx + r * (std::cos(gamma + cmd.dyaw) - std::cos(gamma));
  const double dyf =
      cmd.dy + r * (std::sin(gamma + cmd.dyaw) - std::sin(gamma));
  return foot + Eigen::Vector2d(dxf, dyf);
}

FootholdPlan FootstepTargets(const RobotModel& model, const ComCommand& cmd,
                             std::span<const Eigen::Vector2d> feet,
                             double margin) {
  if (static_cast<int>(feet.size()) != model.leg_count) {
    throw DimensionMismatch("expected one foot per leg");
  }
  FootholdPlan plan;
  plan.footholds.reserve(feet.size());
  for (int leg = 0; leg < model.leg_count; ++leg) {
    Eigen::Vector2d target = FootstepTarget(cmd, feet[leg]);
    const ReachAnnulus reach =
        HorizontalReach(model, leg, model.nominal_height, margin);
    const Eigen::Vector2d hip = model.hips[leg].position;
    const Eigen::Vector2d offset = target - hip;
    const double dist = offset.norm();
    if (dist > reach.max || dist < reach.min) {
      const double clamped = std::clamp(dist, reach.min, reach.max);
      const Eigen::Vector2d dir =
          dist > 0.0 ? Eigen::Vector2d(offset / dist)
                     : Rotate(model.hips[leg].yaw, {1.0, 0.0});
      target = hip + clamped * dir;
      ++plan.clamped;
    }
    plan.footholds.push_back(target);
  }
  return plan;
}

GaitPhase TripodPhase(int leg, double t, const RobotModel& model) {
  if (leg < 0 || leg >= model.leg_count) {
    throw IndexOutOfRange("leg " + std::to_string(leg));
  }
  const bool first_half = t <= 0.5;
  const bool swings_first = leg % 2 == 0;
  const double local = first_half ? t / 0.5 : (t - 0.5) / 0.5;
  return {swings_first == first_half, local};
}

Eigen::Vector3d SwingTrajectory(const Eigen::Vector2d& from,
                                const Eigen::Vector2d& to, double clearance,
                                double nominal_height, double local_phase) {
  const Eigen::Vector2d xy = from + local_phase * (to - from);
  const double z = -nominal_height + clearance * std::sin(kPi * local_phase);
  return {xy.x(), xy.y(), z};
}

namespace {

// Body-frame position of a world-fixed foot after the body has advanced by
// the fraction `s` of a half-cycle motion.
Eigen::Vector2d StanceFoot(const Eigen::Vector2d& start,
                           const ComCommand& half, double s) {
  return Rotate(-s * half.dyaw,
                start - s * Eigen::Vector2d(half.dx, half.dy));
}

}  // namespace

Eigen::MatrixXd ExpertJointTable(const RobotModel& model,
                                 const ComCommand& cmd,
                                 const ExpertConfig& cfg, int* clamp_count) {
  const int n_steps = cfg.cycle_length;
  if (n_steps < 2) throw InvalidConfig("cycle_length must be at least 2");

  // Each leg swings once and stands once per cycle; the body covers half of
  // the command during each half cycle.
  const ComCommand half{0.5 * cmd.dx, 0.5 * cmd.dy, 0.5 * cmd.dyaw};
  const auto nominal = ForwardKinematics(model, model.nominal_stance_angles);

  std::vector<Eigen::Vector2d> nominal_xy(model.leg_count);
  for (int leg = 0; leg < model.leg_count; ++leg) {
    nominal_xy[leg] = nominal[leg].head<2>();
  }
  // Swing-first legs lift off at nominal; stance-first legs lift off where
  // the first stance half leaves them.
  std::vector<Eigen::Vector2d> liftoff(model.leg_count);
  for (int leg = 0; leg < model.leg_count; ++leg) {
    liftoff[leg] = leg % 2 == 0 ? nominal_xy[leg]
                                : StanceFoot(nominal_xy[leg], half, 1.0);
  }
  const FootholdPlan plan =
      FootstepTargets(model, half, liftoff, cfg.reach_margin);
  int clamps = plan.clamped;

  Eigen::MatrixXd table(n_steps, model.joint_count());
  for (int n = 1; n <= n_steps; ++n) {
    const double t = static_cast<double>(n) / n_steps;
    for (int leg = 0; leg < model.leg_count; ++leg) {
      const GaitPhase phase = TripodPhase(leg, t, model);
      Eigen::Vector3d foot;
      if (phase.is_swing) {
        foot = SwingTrajectory(liftoff[leg], plan.footholds[leg],
                               cfg.clearance, model.nominal_height,
                               phase.local_phase);
      } else {
        const Eigen::Vector2d start =
            leg % 2 == 0 ? plan.footholds[leg] : nominal_xy[leg];
        const Eigen::Vector2d xy = StanceFoot(start, half, phase.local_phase);
        foot = {xy.x(), xy.y(), -model.nominal_height};
      }
      Eigen::Vector3d q = LegInverseKinematics(model, leg, foot);
      for (int j = 0; j < kJointsPerLeg; ++j) {
        const JointRange& range = model.joint_limits[leg][j];
        if (q[j] < range.min || q[j] > range.max) {
          q[j] = std::clamp(q[j], range.min, range.max);
          ++clamps;
        }
      }
      table.block<1, 3>(n - 1, leg * kJointsPerLeg) = q.transpose();
    }
  }
  if (clamp_count != nullptr) *clamp_count = clamps;
  return table;
}

ExpertTrajectory GenerateExpert(const RobotModel& model, const ComCommand& cmd,
                                const ExpertConfig& cfg,
                                const SimConfig& sim_cfg, int gait_id) {
  ExpertTrajectory expert;
  expert.gait_id = gait_id;
  expert.command = cmd;
  expert.angles = ExpertJointTable(model, cmd, cfg);

  SimState state = InitialState(model, ComState{}, 0);
  const CycleResult cycle =
      RolloutCycle(state, expert.angles, sim_cfg, model);
  expert.measured_com_delta = {cycle.end.x, cycle.end.y, cycle.end.yaw};
  return expert;
}

ComCommand SampleCommand(const CommandBounds& bounds, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double u = 0.0;
  double v = 0.0;
  do {
    u = unit(rng);
    v = unit(rng);
  } while (u * u + v * v > 1.0);
  return {bounds.max_step * u, bounds.max_step * v,
          bounds.max_yaw * unit(rng)};
}

std::vector<ExpertTrajectory> SampleExpertLibrary(
    const RobotModel& model, int count, const CommandBounds& bounds,
    std::uint64_t seed, const ExpertConfig& cfg, const SimConfig& sim_cfg) {
  if (count < 1) throw InvalidConfig("expert count must be at least 1");
  std::mt19937_64 rng(seed);
  std::vector<ExpertTrajectory> library;
  library.reserve(count);
  for (int g = 0; g < count; ++g) {
    const ComCommand cmd = SampleCommand(bounds, rng);
    library.push_back(GenerateExpert(model, cmd, cfg, sim_cfg, g));
  }
  return library;
}

}  // namespace latgait
