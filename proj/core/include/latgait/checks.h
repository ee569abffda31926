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


// Self-checks against independent oracles: finite differences, exact
// rigid motions, frame round trips and grid search.

#ifndef LATGAIT_CHECKS_H_
#define LATGAIT_CHECKS_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "latgait/dynamics.h"
#include "latgait/planner.h"
#include "latgait/types.h"

namespace latgait {

// |a - b| / max(|a|, |b|, 1e-6)
double RelativeError(double a, double b);

struct GradientCheckReport {
  int networks = 0;
  double max_param_error = 0.0;  // relative
  double max_input_error = 0.0;  // relative
  double seconds = 0.0;
};

// Random small networks, inputs and upstream vectors; analytic gradients of
// <upstream, f(x)> against central differences.
GradientCheckReport CheckGradients(int networks, std::uint64_t seed);

struct RegistrationCheckReport {
  int cases = 0;
  double max_translation_error = 0.0;
  double max_yaw_error = 0.0;
  double seconds = 0.0;
};

// Random point sets under random rigid motions with |dyaw| < pi/2.
RegistrationCheckReport CheckRegistration(int cases, std::uint64_t seed);

// Yaw minimizing the registration residual by dense search over
// [center - half_width, center + half_width] with the optimal translation
// for each candidate; returns the world pose.
Pose2 RegistrationGridOracle(const std::vector<Eigen::Vector2d>& anchors,
                             const std::vector<Eigen::Vector2d>& body_feet,
                             double center, double half_width, int samples);

struct RoundTripReport {
  int states = 0;
  double max_roundtrip_error = 0.0;
  double max_equivariance_error = 0.0;
};

// to_local/from_local round trips and SE(2) equivariance of Predict under
// random world transforms.
RoundTripReport CheckRoundTrip(const DynamicsModel& model, int states,
                               std::uint64_t seed);

// A randomly initialized dynamics model over `action_dim` actions.
DynamicsModel RandomDynamics(int action_dim, std::uint64_t seed);

struct GridResult {
  Eigen::VectorXd action;
  double cost = 0.0;
};

// Exhaustive n x n search over a 2D action box for a one-step plan.
GridResult GridSearch(const DynamicsModel& dynamics, const ComState& start,
                      const StepCostFn& cost, const Eigen::Vector2d& lo,
                      const Eigen::Vector2d& hi, int n = 101);

struct OracleCase {
  ComState state;
  TaskSpec task;
  double shooting_cost = 0.0;
  double grid_cost = 0.0;
  double gap = 0.0;  // (shooting - grid) / grid
};

struct OracleReport {
  std::vector<OracleCase> cases;
  double max_gap = 0.0;
};

// Random planning states with a goal 1 to 2 m away, shooting with `plan`
// over the latent box of `space` against a 101 x 101 grid.
OracleReport CheckShootingOracle(const DynamicsModel& dynamics,
                                 const ActionSpace& space,
                                 const PlanConfig& plan, int states,
                                 std::uint64_t seed);

struct QuadraticReport {
  Eigen::VectorXd analytic_action;
  double analytic_cost = 0.0;
  double shooting_cost = 0.0;
  double gap = 0.0;  // (shooting - analytic) / analytic
};

// Linear one-step dynamics with a strictly convex quadratic cost with a
// positive minimum inside a 2D box.
QuadraticReport CheckSyntheticQuadratic(const PlanConfig& plan,
                                        std::uint64_t seed);

}  // namespace latgait

#endif  // LATGAIT_CHECKS_H_
