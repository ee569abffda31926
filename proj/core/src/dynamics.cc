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

#include "latgait/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace latgait {

LocalDelta ToLocalDelta(const ComState& curr, const ComState& next) {
  const Eigen::Vector2d local =
      Rotate(-curr.yaw, {next.x - curr.x, next.y - curr.y});
  return {local.x(), local.y(), WrapAngle(next.yaw - curr.yaw), next.vx,
          next.vy};
}

ComState FromLocalDelta(const ComState& curr, const LocalDelta& delta) {
  const Eigen::Vector2d world = Rotate(curr.yaw, {delta.dx, delta.dy});
  return {curr.x + world.x(), curr.y + world.y(),
          WrapAngle(curr.yaw + delta.dyaw), delta.vx_next, delta.vy_next};
}

std::vector<TransitionSample> CollectTransitions(
    const RobotModel& model, const SimConfig& sim_cfg,
    const LowLevelController& controller, const ActionSpace& space,
    int samples, std::uint64_t seed, int reset_interval) {
  if (samples < 1) throw InvalidConfig("sample count must be positive");
  if (reset_interval < 1) throw InvalidConfig("reset interval must be positive");
  if (space.dim() != controller.action_dim()) {
    throw DimensionMismatch("action space does not match controller");
  }
  std::mt19937_64 rng(seed);
  const std::uint64_t sim_seed = rng();
  SimState state;
  std::vector<TransitionSample> data;
  data.reserve(samples);
  for (int i = 0; i < samples; ++i) {
    if (i % reset_interval == 0) {
      state = InitialState(model, ComState{}, sim_seed + i);
    }
    const ComState before = state.com;
    const Eigen::VectorXd action = space.Sample(rng);
    RolloutCycle(state, controller.CycleCommands(action), sim_cfg, model);
    data.push_back({before.vx, before.vy, action,
                    ToLocalDelta(before, state.com)});
  }
  return data;
}

Standardizer Standardizer::Fit(const Eigen::MatrixXd& columns) {
  Standardizer s;
  const double n = static_cast<double>(columns.cols());
  s.mean = columns.rowwise().mean();
  const Eigen::MatrixXd centered = columns.colwise() - s.mean;
  s.std = (centered.rowwise().squaredNorm() / n).cwiseSqrt().cwiseMax(1e-6);
  return s;
}

Eigen::MatrixXd Standardizer::Apply(const Eigen::MatrixXd& x) const {
  return (x.colwise() - mean).array().colwise() / std.array();
}

Eigen::MatrixXd Standardizer::Invert(const Eigen::MatrixXd& y) const {
  return (y.array().colwise() * std.array()).matrix().colwise() + mean;
}

Eigen::MatrixXd DynamicsModel::PredictDeltaBatch(
    const Eigen::MatrixXd& inputs) const {
  return output.Invert(net.ForwardBatch(input.Apply(inputs)));
}

LocalDelta DynamicsModel::PredictDelta(double vx, double vy,
                                       const Eigen::VectorXd& action) const {
  if (action.size() != action_dim()) {
    throw DimensionMismatch("action has " + std::to_string(action.size()) +
                            " entries, dynamics expects " +
                            std::to_string(action_dim()));
  }
  Eigen::VectorXd x(2 + action.size());
  x << vx, vy, action;
  const Eigen::VectorXd y = PredictDeltaBatch(x);
  return {y[0], y[1], WrapAngle(y[2]), y[3], y[4]};
}

void DynamicsModel::Validate() const {
  if (net.layer_sizes().empty() || net.output_size() != 5 ||
      net.input_size() < 3) {
    throw InvalidShape("dynamics network must map 2 + D inputs to 5 outputs");
  }
  if (input.mean.size() != net.input_size() ||
      input.std.size() != net.input_size() || output.mean.size() != 5 ||
      output.std.size() != 5) {
    throw InvalidShape("normalization constants do not match network");
  }
  if ((input.std.array() <= 0.0).any() || (output.std.array() <= 0.0).any()) {
    throw InvalidShape("normalization stds must be positive");
  }
}

ComState Predict(const DynamicsModel& model, const ComState& state,
                 const Eigen::VectorXd& action) {
  return FromLocalDelta(state, model.PredictDelta(state.vx, state.vy, action));
}

void PredictBatch(const DynamicsModel& model, std::span<const ComState> states,
                  const Eigen::MatrixXd& actions, std::vector<ComState>& out) {
  if (actions.rows() != model.action_dim() ||
      static_cast<std::size_t>(actions.cols()) != states.size()) {
    throw DimensionMismatch("batch actions do not match dynamics or states");
  }
  Eigen::MatrixXd x(2 + actions.rows(), actions.cols());
  for (Eigen::Index b = 0; b < actions.cols(); ++b) {
    x(0, b) = states[b].vx;
    x(1, b) = states[b].vy;
  }
  x.bottomRows(actions.rows()) = actions;
  const Eigen::MatrixXd y = model.PredictDeltaBatch(x);
  out.resize(states.size());
  for (Eigen::Index b = 0; b < actions.cols(); ++b) {
    out[b] = FromLocalDelta(
        states[b], {y(0, b), y(1, b), WrapAngle(y(2, b)), y(3, b), y(4, b)});
  }
}

namespace {

Eigen::MatrixXd InputColumns(const std::vector<TransitionSample>& data,
                             const std::vector<int>& rows, int action_dim) {
  Eigen::MatrixXd x(2 + action_dim, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TransitionSample& s = data[rows[i]];
    x(0, i) = s.vx;
    x(1, i) = s.vy;
    x.col(i).tail(action_dim) = s.action;
  }
  return x;
}

Eigen::MatrixXd OutputColumns(const std::vector<TransitionSample>& data,
                              const std::vector<int>& rows) {
  Eigen::MatrixXd y(5, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const LocalDelta& d = data[rows[i]].delta;
    y.col(i) << d.dx, d.dy, d.dyaw, d.vx_next, d.vy_next;
  }
  return y;
}

}  // namespace

DynamicsTrainingResult TrainDynamics(
    const std::vector<TransitionSample>& data, ActionKind kind,
    const DynamicsTrainingConfig& cfg) {
  if (static_cast<int>(data.size()) < kMinDynamicsSamples) {
    throw InsufficientData("dynamics training needs at least " +
                           std::to_string(kMinDynamicsSamples) +
                           " samples, got " + std::to_string(data.size()));
  }
  const int action_dim = static_cast<int>(data.front().action.size());
  for (const auto& s : data) {
    if (s.action.size() != action_dim) {
      throw DimensionMismatch("transition actions differ in dimension");
    }
  }
  if (cfg.batch < 1 || cfg.epochs < 0) {
    throw InvalidConfig("dynamics batch must be positive, epochs >= 0");
  }

  std::mt19937_64 rng(cfg.seed);
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  const int heldout = std::max(
      1, static_cast<int>(std::lround(cfg.holdout_fraction * data.size())));
  const std::vector<int> test_rows(order.begin(), order.begin() + heldout);
  std::vector<int> train_rows(order.begin() + heldout, order.end());

  const Eigen::MatrixXd train_x = InputColumns(data, train_rows, action_dim);
  const Eigen::MatrixXd train_y = OutputColumns(data, train_rows);

  DynamicsTrainingResult result;
  DynamicsModel& model = result.model;
  model.action_kind = kind;
  model.seed = cfg.seed;
  model.input = Standardizer::Fit(train_x);
  model.output = Standardizer::Fit(train_y);

  std::vector<int> sizes = {2 + action_dim};
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(5);
  model.net = Network::Init(sizes, rng());

  const Eigen::MatrixXd xs = model.input.Apply(train_x);
  const Eigen::MatrixXd ys = model.output.Apply(train_y);
  const Eigen::Index n = xs.cols();

  AdamState adam(model.net.params().size());
  Eigen::VectorXd grad(model.net.params().size());
  std::vector<Eigen::Index> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Network::Tape tape;
  Eigen::MatrixXd bx;
  Eigen::MatrixXd by;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(perm.begin(), perm.end(), rng);
    for (Eigen::Index start = 0; start < n; start += cfg.batch) {
      const Eigen::Index count = std::min<Eigen::Index>(cfg.batch, n - start);
      bx.resize(xs.rows(), count);
      by.resize(ys.rows(), count);
      for (Eigen::Index i = 0; i < count; ++i) {
        bx.col(i) = xs.col(perm[start + i]);
        by.col(i) = ys.col(perm[start + i]);
      }
      const Eigen::MatrixXd error = model.net.ForwardBatch(bx, tape) - by;
      grad.setZero();
      model.net.BackwardBatch(tape, (2.0 / count) * error, grad);
      AdamStep(model.net.params(), grad, adam, cfg.lr);
    }
    if (!model.net.params().allFinite()) {
      throw Error("dynamics training diverged at epoch " +
                  std::to_string(epoch));
    }
    result.loss_history.push_back(
        (model.net.ForwardBatch(xs) - ys).squaredNorm() / ys.size());
  }

  DynamicsReport& report = result.report;
  report.train_count = static_cast<int>(train_rows.size());
  report.heldout_count = heldout;
  report.train_mse = (model.net.ForwardBatch(xs) - ys).squaredNorm() / ys.size();

  const Eigen::MatrixXd test_x = InputColumns(data, test_rows, action_dim);
  const Eigen::MatrixXd test_y = OutputColumns(data, test_rows);
  const Eigen::MatrixXd test_pred = model.PredictDeltaBatch(test_x);
  report.heldout_mse =
      (model.output.Apply(test_pred) - model.output.Apply(test_y))
          .squaredNorm() /
      test_y.size();
  const Eigen::MatrixXd disp_err = test_pred.topRows(2) - test_y.topRows(2);
  report.heldout_displacement_rmse =
      std::sqrt(disp_err.colwise().squaredNorm().mean());
  report.mean_displacement = test_y.topRows(2).colwise().norm().mean();
  return result;
}

}  // namespace latgait
