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

#include "latgait/nn.h"

#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace latgait {

Network::Network(std::vector<int> layer_sizes) : sizes_(std::move(layer_sizes)) {
  if (sizes_.size() < 2) throw InvalidShape("network needs at least 2 layers");
  Eigen::Index total = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] < 1 || sizes_[l + 1] < 1) {
      throw InvalidShape("layer sizes must be positive");
    }
    offsets_.push_back(total);
    total += static_cast<Eigen::Index>(sizes_[l + 1]) * (sizes_[l] + 1);
  }
  params_ = Eigen::VectorXd::Zero(total);
}

Network Network::Init(std::vector<int> layer_sizes, std::uint64_t seed) {
  Network net(std::move(layer_sizes));
  std::mt19937_64 rng(seed);
  for (int l = 0; l < net.layer_count(); ++l) {
    const double bound =
        std::sqrt(6.0 / (net.sizes_[l] + net.sizes_[l + 1]));
    std::uniform_real_distribution<double> dist(-bound, bound);
    auto w = net.weight(l);
    for (Eigen::Index j = 0; j < w.cols(); ++j) {
      for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = dist(rng);
    }
  }
  return net;
}

Eigen::Map<Eigen::MatrixXd> Network::weight(int layer) {
  return {params_.data() + offsets_[layer], sizes_[layer + 1], sizes_[layer]};
}

Eigen::Map<const Eigen::MatrixXd> Network::weight(int layer) const {
  return {params_.data() + offsets_[layer], sizes_[layer + 1], sizes_[layer]};
}

Eigen::Map<Eigen::VectorXd> Network::bias(int layer) {
  const Eigen::Index n = sizes_[layer + 1];
  return {params_.data() + offsets_[layer] + n * sizes_[layer], n};
}

Eigen::Map<const Eigen::VectorXd> Network::bias(int layer) const {
  const Eigen::Index n = sizes_[layer + 1];
  return {params_.data() + offsets_[layer] + n * sizes_[layer], n};
}

void Network::CheckInput(Eigen::Index rows) const {
  if (sizes_.empty()) throw InvalidShape("network is empty");
  if (rows != input_size()) {
    throw DimensionMismatch("network input has " + std::to_string(rows) +
                            " rows, expected " +
                            std::to_string(input_size()));
  }
}

Eigen::VectorXd Network::Forward(const Eigen::VectorXd& x) const {
  return ForwardBatch(x);
}

Eigen::MatrixXd Network::ForwardBatch(const Eigen::MatrixXd& x) const {
  CheckInput(x.rows());
  Eigen::MatrixXd a = x;
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::MatrixXd z = weight(l) * a;
    z.colwise() += bias(l);
    if (l + 1 < layer_count()) z = z.cwiseMax(0.0);
    a = std::move(z);
  }
  return a;
}

Eigen::MatrixXd Network::ForwardBatch(const Eigen::MatrixXd& x,
                                      Tape& tape) const {
  CheckInput(x.rows());
  tape.activations.resize(layer_count() + 1);
  tape.activations[0] = x;
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::MatrixXd& z = tape.activations[l + 1];
    z.noalias() = weight(l) * tape.activations[l];
    z.colwise() += bias(l);
    if (l + 1 < layer_count()) z = z.cwiseMax(0.0);
  }
  return tape.activations.back();
}

Eigen::MatrixXd Network::BackwardBatch(const Tape& tape,
                                       const Eigen::MatrixXd& dy,
                                       Eigen::VectorXd& param_grad) const {
  if (dy.rows() != output_size() ||
      dy.cols() != tape.activations.front().cols()) {
    throw DimensionMismatch("upstream gradient shape mismatch");
  }
  if (param_grad.size() != params_.size()) {
    throw DimensionMismatch("parameter gradient size mismatch");
  }
  Eigen::MatrixXd delta = dy;
  for (int l = layer_count() - 1; l >= 0; --l) {
    const Eigen::MatrixXd& input = tape.activations[l];
    const Eigen::Index out = sizes_[l + 1];
    Eigen::Map<Eigen::MatrixXd> gw(param_grad.data() + offsets_[l], out,
                                   sizes_[l]);
    Eigen::Map<Eigen::VectorXd> gb(
        param_grad.data() + offsets_[l] + out * sizes_[l], out);
    gw.noalias() += delta * input.transpose();
    gb += delta.rowwise().sum();
    Eigen::MatrixXd upstream = weight(l).transpose() * delta;
    if (l > 0) {
      // Hidden activations are rectified: zero output means zero slope.
      upstream = (input.array() > 0.0).select(upstream, 0.0);
    }
    delta = std::move(upstream);
  }
  return delta;
}

Gradients Backward(const Network& net, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& upstream) {
  Network::Tape tape;
  net.ForwardBatch(x, tape);
  Gradients g;
  g.params = Eigen::VectorXd::Zero(net.params().size());
  g.input = net.BackwardBatch(tape, upstream, g.params);
  return g;
}

void AdamStep(Eigen::VectorXd& params, const Eigen::VectorXd& grads,
              AdamState& state, double lr) {
  if (grads.size() != params.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    throw DimensionMismatch("Adam parameter, gradient and moment sizes differ");
  }
  ++state.step;
  state.m = state.beta1 * state.m + (1.0 - state.beta1) * grads;
  state.v = state.beta2 * state.v + (1.0 - state.beta2) * grads.cwiseAbs2();
  const double t = static_cast<double>(state.step);
  const double m_scale = 1.0 / (1.0 - std::pow(state.beta1, t));
  const double v_scale = 1.0 / (1.0 - std::pow(state.beta2, t));
  params.array() -= lr * (state.m.array() * m_scale) /
                    ((state.v.array() * v_scale).sqrt() + state.epsilon);
}

}  // namespace latgait
