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

#ifndef LATGAIT_NN_H_
#define LATGAIT_NN_H_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "latgait/types.h"

namespace latgait {

// Dense feedforward network: rectifier on hidden layers, identity output.
// All parameters live in one flat vector; layer l stores its weight matrix
// (out x in, column-major) followed by its bias.
//
// The rectifier subgradient at exactly zero is taken as zero.
class Network {
 public:
  Network() = default;
  // Zero-initialized network. Throws InvalidShape.
  explicit Network(std::vector<int> layer_sizes);

  // Uniform fan-in/fan-out initialization, bound sqrt(6 / (in + out)),
  // zero biases.
  static Network Init(std::vector<int> layer_sizes, std::uint64_t seed);

  const std::vector<int>& layer_sizes() const { return sizes_; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  int layer_count() const { return static_cast<int>(sizes_.size()) - 1; }

  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

  Eigen::Map<Eigen::MatrixXd> weight(int layer);
  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<Eigen::VectorXd> bias(int layer);
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;

  Eigen::VectorXd Forward(const Eigen::VectorXd& x) const;

  // Columns are samples: (input_size x B) -> (output_size x B).
  Eigen::MatrixXd ForwardBatch(const Eigen::MatrixXd& x) const;

  // Activations retained by a forward pass for the backward pass.
  struct Tape {
    std::vector<Eigen::MatrixXd> activations;  // input, hidden..., output
  };
  Eigen::MatrixXd ForwardBatch(const Eigen::MatrixXd& x, Tape& tape) const;

  // Reverse pass for upstream dL/dY. Adds the parameter gradient (summed
  // over the batch) into `param_grad` and returns dL/dX.
  Eigen::MatrixXd BackwardBatch(const Tape& tape, const Eigen::MatrixXd& dy,
                                Eigen::VectorXd& param_grad) const;

 private:
  void CheckInput(Eigen::Index rows) const;

  std::vector<int> sizes_;
  std::vector<Eigen::Index> offsets_;  // start of each layer in params_
  Eigen::VectorXd params_;
};

struct Gradients {
  Eigen::VectorXd params;
  Eigen::VectorXd input;
};

// Single-sample reverse pass.
Gradients Backward(const Network& net, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& upstream);

struct AdamState {
  AdamState() = default;
  explicit AdamState(Eigen::Index size)
      : m(Eigen::VectorXd::Zero(size)), v(Eigen::VectorXd::Zero(size)) {}

  Eigen::VectorXd m;
  Eigen::VectorXd v;
  std::int64_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Bias-corrected Adam update. Throws DimensionMismatch.
void AdamStep(Eigen::VectorXd& params, const Eigen::VectorXd& grads,
              AdamState& state, double lr);

}  // namespace latgait

#endif  // LATGAIT_NN_H_
