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


#include "latgait/checks.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/LU>

#include "latgait/nn.h"
#include "latgait/registration.h"

namespace latgait {
namespace {

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

Eigen::VectorXd Gaussian(Eigen::Index n, std::mt19937_64& rng,
                         double std = 1.0) {
  std::normal_distribution<double> g(0.0, std);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

ComState Transform(const ComState& s, double angle,
                   const Eigen::Vector2d& shift) {
  const Eigen::Vector2d p = Rotate(angle, {s.x, s.y}) + shift;
  return {p.x(), p.y(), WrapAngle(s.yaw + angle), s.vx, s.vy};
}

double StateDistance(const ComState& a, const ComState& b) {
  return std::max({std::abs(a.x - b.x), std::abs(a.y - b.y),
                   std::abs(WrapAngle(a.yaw - b.yaw)), std::abs(a.vx - b.vx),
                   std::abs(a.vy - b.vy)});
}

}  // namespace

double RelativeError(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

GradientCheckReport CheckGradients(int networks, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> depth(1, 3);
  std::uniform_int_distribution<int> width(1, 8);
  constexpr double kStep = 1e-5;
  GradientCheckReport report;
  report.networks = networks;
  for (int n = 0; n < networks; ++n) {
    std::vector<int> sizes = {width(rng)};
    const int hidden = depth(rng);
    for (int l = 0; l < hidden; ++l) sizes.push_back(width(rng));
    sizes.push_back(std::min(4, width(rng)));
    Network net = Network::Init(sizes, rng());
    // Nonzero biases so every unit is exercised on both sides of the kink.
    net.params() += Gaussian(net.params().size(), rng, 0.1);
    const Eigen::VectorXd x = Gaussian(net.input_size(), rng);
    const Eigen::VectorXd up = Gaussian(net.output_size(), rng);
    const Gradients g = Backward(net, x, up);

    auto loss = [&](const Network& m, const Eigen::VectorXd& in) {
      return up.dot(m.Forward(in));
    };
    Network probe = net;
    for (Eigen::Index i = 0; i < net.params().size(); ++i) {
      const double saved = probe.params()[i];
      probe.params()[i] = saved + kStep;
      const double plus = loss(probe, x);
      probe.params()[i] = saved - kStep;
      const double minus = loss(probe, x);
      probe.params()[i] = saved;
      report.max_param_error =
          std::max(report.max_param_error,
                   RelativeError(g.params[i], (plus - minus) / (2 * kStep)));
    }
    Eigen::VectorXd xp = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      xp[i] = x[i] + kStep;
      const double plus = loss(net, xp);
      xp[i] = x[i] - kStep;
      const double minus = loss(net, xp);
      xp[i] = x[i];
      report.max_input_error =
          std::max(report.max_input_error,
                   RelativeError(g.input[i], (plus - minus) / (2 * kStep)));
    }
  }
  report.seconds = Seconds(start);
  return report;
}

RegistrationCheckReport CheckRegistration(int cases, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> yaw(-kPi, kPi);
  std::uniform_real_distribution<double> turn(-0.49 * kPi, 0.49 * kPi);
  std::uniform_real_distribution<double> shift(-0.2, 0.2);
  std::uniform_int_distribution<int> count(2, 6);
  RegistrationCheckReport report;
  report.cases = cases;
  for (int c = 0; c < cases; ++c) {
    const Pose2 prior{coord(rng), coord(rng), yaw(rng)};
    const Pose2 truth{prior.x + shift(rng), prior.y + shift(rng),
                      WrapAngle(prior.yaw + turn(rng))};
    const int k = count(rng);
    std::vector<Eigen::Vector2d> anchors;
    std::vector<Eigen::Vector2d> body;
    while (static_cast<int>(anchors.size()) < k) {
      const Eigen::Vector2d a(coord(rng), coord(rng));
      // Keep the set non-degenerate.
      bool distinct = true;
      for (const auto& other : anchors) distinct &= (a - other).norm() > 0.05;
      if (!distinct) continue;
      anchors.push_back(a);
      body.push_back(Rotate(-truth.yaw, a - Eigen::Vector2d(truth.x, truth.y)));
    }
    const Pose2 update = RegisterStanceMotion(anchors, body, prior);
    report.max_translation_error = std::max(
        report.max_translation_error,
        std::hypot(prior.x + update.x - truth.x, prior.y + update.y - truth.y));
    report.max_yaw_error =
        std::max(report.max_yaw_error,
                 std::abs(WrapAngle(prior.yaw + update.yaw - truth.yaw)));
  }
  report.seconds = Seconds(start);
  return report;
}

Pose2 RegistrationGridOracle(const std::vector<Eigen::Vector2d>& anchors,
                             const std::vector<Eigen::Vector2d>& body_feet,
                             double center, double half_width, int samples) {
  Eigen::Vector2d a_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d b_mean = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    a_mean += anchors[i];
    b_mean += body_feet[i];
  }
  a_mean /= static_cast<double>(anchors.size());
  b_mean /= static_cast<double>(anchors.size());
  Pose2 best;
  double best_residual = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const double yaw =
        center - half_width + 2.0 * half_width * s / (samples - 1);
    // For a fixed rotation the optimal translation aligns the centroids.
    const Eigen::Vector2d t = a_mean - Rotate(yaw, b_mean);
    double residual = 0.0;
    for (std::size_t i = 0; i < anchors.size(); ++i) {
      residual += (t + Rotate(yaw, body_feet[i]) - anchors[i]).squaredNorm();
    }
    if (residual < best_residual) {
      best_residual = residual;
      best = {t.x(), t.y(), WrapAngle(yaw)};
    }
  }
  return best;
}

DynamicsModel RandomDynamics(int action_dim, std::uint64_t seed) {
  DynamicsModel model;
  model.net = Network::Init({2 + action_dim, 16, 16, 5}, seed);
  std::mt19937_64 rng(seed + 1);
  model.net.params() += Gaussian(model.net.params().size(), rng, 0.05);
  model.input.mean = Eigen::VectorXd::Zero(2 + action_dim);
  model.input.std = Eigen::VectorXd::Constant(2 + action_dim, 0.5);
  model.output.mean = Eigen::VectorXd::Zero(5);
  model.output.std = Eigen::VectorXd::Constant(5, 0.1);
  return model;
}

RoundTripReport CheckRoundTrip(const DynamicsModel& model, int states,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> yaw(-kPi, kPi);
  std::uniform_real_distribution<double> vel(-0.3, 0.3);
  std::uniform_real_distribution<double> step(-0.5, 0.5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  RoundTripReport report;
  report.states = states;
  for (int i = 0; i < states; ++i) {
    const ComState s{coord(rng), coord(rng), yaw(rng), vel(rng), vel(rng)};
    const ComState next{s.x + step(rng), s.y + step(rng),
                        WrapAngle(s.yaw + step(rng)), vel(rng), vel(rng)};
    report.max_roundtrip_error =
        std::max(report.max_roundtrip_error,
                 StateDistance(FromLocalDelta(s, ToLocalDelta(s, next)), next));

    Eigen::VectorXd action(model.action_dim());
    for (Eigen::Index k = 0; k < action.size(); ++k) action[k] = unit(rng);
    const double angle = yaw(rng);
    const Eigen::Vector2d shift(coord(rng), coord(rng));
    const ComState moved = Predict(model, Transform(s, angle, shift), action);
    const ComState expected = Transform(Predict(model, s, action), angle, shift);
    report.max_equivariance_error =
        std::max(report.max_equivariance_error, StateDistance(moved, expected));
  }
  return report;
}

GridResult GridSearch(const DynamicsModel& dynamics, const ComState& start,
                      const StepCostFn& cost, const Eigen::Vector2d& lo,
                      const Eigen::Vector2d& hi, int n) {
  if (dynamics.action_dim() != 2) {
    throw DimensionMismatch("grid search needs a 2D action space");
  }
  if (n < 2) throw InvalidConfig("grid needs at least 2 points per axis");
  Eigen::MatrixXd actions(2, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      actions(0, i * n + j) = lo.x() + (hi.x() - lo.x()) * i / (n - 1);
      actions(1, i * n + j) = lo.y() + (hi.y() - lo.y()) * j / (n - 1);
    }
  }
  std::vector<ComState> states(n * n, start);
  std::vector<ComState> next;
  PredictBatch(dynamics, states, actions, next);
  GridResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n * n; ++k) {
    const double c = cost(next[k], 0);
    if (c < best.cost) {
      best.cost = c;
      best.action = actions.col(k);
    }
  }
  return best;
}

OracleReport CheckShootingOracle(const DynamicsModel& dynamics,
                                 const ActionSpace& space,
                                 const PlanConfig& plan, int states,
                                 std::uint64_t seed) {
  if (space.kind != ActionKind::kLatent || space.dim() != 2) {
    throw DimensionMismatch("oracle check needs a 2D latent box");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> yaw(-kPi, kPi);
  std::uniform_real_distribution<double> vel(-0.15, 0.15);
  std::uniform_real_distribution<double> distance(1.0, 2.0);
  OracleReport report;
  for (int i = 0; i < states; ++i) {
    OracleCase c;
    c.state = {coord(rng), coord(rng), yaw(rng), vel(rng), vel(rng)};
    const double bearing = yaw(rng);
    const double d = distance(rng);
    c.task = TaskSpec::Goal(c.state.x + d * std::cos(bearing),
                            c.state.y + d * std::sin(bearing), yaw(rng));
    const StepCostFn cost = [&c](const ComState& s, int) {
      return CostGoal(s, c.task);
    };
    PlanConfig cfg = plan;
    cfg.horizon = 1;
    cfg.seed = DeriveSeed(seed, i);
    c.shooting_cost = RandomShooting(dynamics, c.state, cost, space, cfg).cost;
    c.grid_cost =
        GridSearch(dynamics, c.state, cost, space.lo, space.hi, 101).cost;
    c.gap = (c.shooting_cost - c.grid_cost) / c.grid_cost;
    report.max_gap = std::max(report.max_gap, c.gap);
    report.cases.push_back(std::move(c));
  }
  return report;
}

QuadraticReport CheckSyntheticQuadratic(const PlanConfig& plan,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  // One linear layer: (dx, dy) = B a, everything else zero.
  DynamicsModel model;
  model.net = Network({4, 5});
  Eigen::Matrix2d b;
  do {
    b << unit(rng), unit(rng), unit(rng), unit(rng);
  } while (std::abs(b.determinant()) < 0.3);
  model.net.weight(0).block(0, 2, 2, 2) = b;
  model.input.mean = Eigen::VectorXd::Zero(4);
  model.input.std = Eigen::VectorXd::Ones(4);
  model.output.mean = Eigen::VectorXd::Zero(5);
  model.output.std = Eigen::VectorXd::Ones(5);

  const Eigen::Vector2d a_star(0.5 * unit(rng), 0.5 * unit(rng));
  const Eigen::Vector2d target = b * a_star;
  Eigen::Matrix2d q;
  q << 2.0, 0.3, 0.3, 1.0;
  constexpr double kFloor = 0.5;
  const StepCostFn cost = [&](const ComState& s, int) {
    const Eigen::Vector2d e = Eigen::Vector2d(s.x, s.y) - target;
    return e.dot(q * e) + kFloor;
  };

  ActionSpace space;
  space.kind = ActionKind::kLatent;
  space.lo = Eigen::Vector2d(-1.0, -1.0);
  space.hi = Eigen::Vector2d(1.0, 1.0);
  PlanConfig cfg = plan;
  cfg.horizon = 1;

  QuadraticReport report;
  report.analytic_action = a_star;
  report.analytic_cost = kFloor;
  report.shooting_cost =
      RandomShooting(model, ComState{}, cost, space, cfg).cost;
  report.gap = (report.shooting_cost - report.analytic_cost) /
               report.analytic_cost;
  return report;
}

}  // namespace latgait
