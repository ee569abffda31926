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

#include "latgait/latent.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace latgait {

Eigen::VectorXd PolicyBundle::Query(double t, const LatentCode& z) const {
  if (z.size() != latent_dim()) {
    throw DimensionMismatch("latent code has " + std::to_string(z.size()) +
                            " entries, policy expects " +
                            std::to_string(latent_dim()));
  }
  Eigen::VectorXd x(1 + z.size());
  x[0] = t;
  x.tail(z.size()) = z;
  return net.Forward(x).cwiseMax(joint_lo).cwiseMin(joint_hi);
}

Eigen::MatrixXd PolicyBundle::CycleTable(const LatentCode& z) const {
  if (z.size() != latent_dim()) {
    throw DimensionMismatch("latent code has " + std::to_string(z.size()) +
                            " entries, policy expects " +
                            std::to_string(latent_dim()));
  }
  Eigen::MatrixXd x(1 + z.size(), cycle_length);
  for (int n = 0; n < cycle_length; ++n) {
    x(0, n) = static_cast<double>(n + 1) / cycle_length;
    x.col(n).tail(z.size()) = z;
  }
  Eigen::MatrixXd y = net.ForwardBatch(x);
  y = y.cwiseMax(joint_lo.replicate(1, cycle_length))
          .cwiseMin(joint_hi.replicate(1, cycle_length));
  return y.transpose();
}

void PolicyBundle::Validate() const {
  const int d = latent_dim();
  if (net.layer_sizes().empty() || net.input_size() != 1 + d) {
    throw InvalidShape("policy network input must be 1 + latent_dim");
  }
  if (joint_lo.size() != joint_count() || joint_hi.size() != joint_count()) {
    throw InvalidShape("joint limit vectors must match policy output");
  }
  if (code_lo.size() != d || code_hi.size() != d) {
    throw InvalidShape("code box must match latent_dim");
  }
  if (cycle_length < 1) throw InvalidShape("cycle_length must be positive");
}

namespace {

void CheckLibrary(const std::vector<ExpertTrajectory>& library) {
  if (library.empty()) throw EmptyLibrary("expert library is empty");
  const auto rows = library.front().angles.rows();
  const auto cols = library.front().angles.cols();
  for (const auto& e : library) {
    if (e.angles.rows() != rows || e.angles.cols() != cols) {
      throw DimensionMismatch(
          "experts differ in cycle length or joint count");
    }
  }
}

// Network input for each sample: phase followed by the expert's code.
Eigen::MatrixXd BuildInputs(const Eigen::MatrixXd& codes, int cycle_length,
                            const std::vector<DemoSample>& samples) {
  Eigen::MatrixXd x(1 + codes.rows(), static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    x(0, i) = static_cast<double>(samples[i].step + 1) / cycle_length;
    x.col(i).tail(codes.rows()) = codes.col(samples[i].expert);
  }
  return x;
}

Eigen::MatrixXd BuildTargets(const std::vector<ExpertTrajectory>& library,
                             const std::vector<DemoSample>& samples) {
  const auto joints = library.front().angles.cols();
  Eigen::MatrixXd y(joints, static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    y.col(i) =
        library[samples[i].expert].angles.row(samples[i].step).transpose();
  }
  return y;
}

std::vector<DemoSample> AllSamples(int experts, int cycle_length) {
  std::vector<DemoSample> samples;
  samples.reserve(static_cast<std::size_t>(experts) * cycle_length);
  for (int g = 0; g < experts; ++g) {
    for (int n = 0; n < cycle_length; ++n) samples.push_back({g, n});
  }
  return samples;
}

}  // namespace

JointGradient ImitationGradient(const Network& net,
                                const Eigen::MatrixXd& codes,
                                const std::vector<ExpertTrajectory>& library,
                                const std::vector<DemoSample>& samples) {
  CheckLibrary(library);
  const int cycle_length = static_cast<int>(library.front().angles.rows());
  const Eigen::MatrixXd x = BuildInputs(codes, cycle_length, samples);
  const Eigen::MatrixXd target = BuildTargets(library, samples);

  Network::Tape tape;
  const Eigen::MatrixXd error = net.ForwardBatch(x, tape) - target;
  JointGradient grad;
  grad.loss = error.squaredNorm();
  grad.params = Eigen::VectorXd::Zero(net.params().size());
  const Eigen::MatrixXd dx = net.BackwardBatch(tape, 2.0 * error, grad.params);
  // A code only receives gradient from the samples of its own expert.
  grad.codes = Eigen::MatrixXd::Zero(codes.rows(), codes.cols());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    grad.codes.col(samples[i].expert) += dx.col(i).tail(codes.rows());
  }
  return grad;
}

TrainingResult TrainJoint(const std::vector<ExpertTrajectory>& library,
                          const RobotModel& model, const TrainingConfig& cfg) {
  CheckLibrary(library);
  if (cfg.latent_dim < 1) throw DimensionMismatch("latent_dim must be >= 1");
  if (library.front().angles.cols() != model.joint_count()) {
    throw DimensionMismatch("expert joint count does not match robot");
  }
  if (cfg.batch < 1 || cfg.epochs < 0) {
    throw InvalidConfig("training batch must be positive, epochs >= 0");
  }
  const int experts = static_cast<int>(library.size());
  const int cycle_length = static_cast<int>(library.front().angles.rows());
  const int joints = model.joint_count();

  std::mt19937_64 rng(cfg.seed);
  std::vector<int> sizes = {1 + cfg.latent_dim};
  sizes.insert(sizes.end(), cfg.hidden.begin(), cfg.hidden.end());
  sizes.push_back(joints);
  Network net = Network::Init(sizes, rng());

  Eigen::MatrixXd codes(cfg.latent_dim, experts);
  std::normal_distribution<double> init(0.0, cfg.code_init_std);
  for (Eigen::Index g = 0; g < codes.cols(); ++g) {
    for (Eigen::Index d = 0; d < codes.rows(); ++d) codes(d, g) = init(rng);
  }

  const std::vector<DemoSample> all = AllSamples(experts, cycle_length);
  const Eigen::MatrixXd all_targets = BuildTargets(library, all);
  const double elements = static_cast<double>(all.size()) * joints;
  auto full_loss = [&]() {
    const Eigen::MatrixXd x = BuildInputs(codes, cycle_length, all);
    return (net.ForwardBatch(x) - all_targets).squaredNorm() / elements;
  };

  TrainingResult result;
  result.loss_history.push_back(full_loss());

  AdamState net_adam(net.params().size());
  Eigen::VectorXd flat_codes = codes.reshaped();
  AdamState code_adam(flat_codes.size());
  Eigen::VectorXd param_grad(net.params().size());
  std::vector<int> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<DemoSample> batch;
  Network::Tape tape;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch) {
      const std::size_t end = std::min(order.size(), start + cfg.batch);
      batch.clear();
      for (std::size_t i = start; i < end; ++i) batch.push_back(all[order[i]]);
      const double scale = 2.0 / static_cast<double>(batch.size());

      const Eigen::MatrixXd x = BuildInputs(codes, cycle_length, batch);
      const Eigen::MatrixXd error =
          net.ForwardBatch(x, tape) - BuildTargets(library, batch);
      param_grad.setZero();
      const Eigen::MatrixXd dx =
          net.BackwardBatch(tape, scale * error, param_grad);
      Eigen::MatrixXd code_grad = Eigen::MatrixXd::Zero(codes.rows(), codes.cols());
      for (std::size_t i = 0; i < batch.size(); ++i) {
        code_grad.col(batch[i].expert) += dx.col(i).tail(codes.rows());
      }

      // Simultaneous update of the policy and all codes.
      AdamStep(net.params(), param_grad, net_adam, cfg.lr);
      flat_codes = codes.reshaped();
      AdamStep(flat_codes, code_grad.reshaped(), code_adam, cfg.lr);
      codes = flat_codes.reshaped(codes.rows(), codes.cols());
    }
    if (!net.params().allFinite() || !codes.allFinite()) {
      throw Error("imitation training diverged at epoch " +
                  std::to_string(epoch));
    }
    result.loss_history.push_back(full_loss());
  }

  PolicyBundle& bundle = result.bundle;
  bundle.net = std::move(net);
  bundle.codes = codes;
  bundle.cycle_length = cycle_length;
  bundle.joint_lo = model.lower_limits();
  bundle.joint_hi = model.upper_limits();
  bundle.seed = cfg.seed;
  bundle.epochs = cfg.epochs;

  const Eigen::VectorXd lo = codes.rowwise().minCoeff();
  const Eigen::VectorXd hi = codes.rowwise().maxCoeff();
  // A single code has no extent; give it a box of the init scale.
  const Eigen::VectorXd extent =
      (hi - lo).cwiseMax(2.0 * cfg.code_init_std);
  bundle.code_lo = lo - cfg.box_margin * extent;
  bundle.code_hi = hi + cfg.box_margin * extent;
  return result;
}

double ReconstructionError(const PolicyBundle& bundle, int g,
                           const std::vector<ExpertTrajectory>& library) {
  if (g < 0 || g >= bundle.expert_count() ||
      g >= static_cast<int>(library.size())) {
    throw IndexOutOfRange("expert index " + std::to_string(g));
  }
  const Eigen::MatrixXd table = bundle.CycleTable(bundle.code(g));
  const Eigen::MatrixXd& expert = library[g].angles;
  if (table.rows() != expert.rows() || table.cols() != expert.cols()) {
    throw DimensionMismatch("expert shape does not match policy");
  }
  return std::sqrt((table - expert).squaredNorm() /
                   static_cast<double>(expert.size()));
}

CycleResult RolloutPolicyCycle(SimState& state, const PolicyBundle& bundle,
                               const LatentCode& z, const SimConfig& cfg,
                               const RobotModel& model, bool record) {
  return RolloutCycle(state, bundle.CycleTable(z), cfg, model, record);
}

std::vector<LatentCode> LatticeCodes(const PolicyBundle& bundle, int n) {
  if (n < 1) throw InvalidConfig("lattice size must be positive");
  const int d = bundle.latent_dim();
  const LatentCode center = 0.5 * (bundle.code_lo + bundle.code_hi);
  std::vector<LatentCode> codes;
  codes.reserve(static_cast<std::size_t>(n) * n);
  auto axis = [&](int dim, int i) {
    if (n == 1) return center[dim];
    return bundle.code_lo[dim] +
           (bundle.code_hi[dim] - bundle.code_lo[dim]) * i / (n - 1);
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      LatentCode z = center;
      z[0] = axis(0, i);
      if (d > 1) z[1] = axis(1, j);
      codes.push_back(z);
    }
  }
  return codes;
}

std::vector<SweepTrace> LatentSweep(const PolicyBundle& bundle,
                                    const RobotModel& model,
                                    const SimConfig& cfg,
                                    const std::vector<LatentCode>& codes,
                                    int cycles) {
  std::vector<SweepTrace> traces;
  traces.reserve(codes.size());
  for (const LatentCode& z : codes) {
    SweepTrace trace;
    trace.code = z;
    SimState state = InitialState(model, ComState{}, 0);
    const Eigen::MatrixXd table = bundle.CycleTable(z);
    for (int c = 0; c < cycles; ++c) {
      const CycleResult cycle = RolloutCycle(state, table, cfg, model, true);
      for (const StepRecord& rec : cycle.log) {
        trace.xy.emplace_back(rec.com.x, rec.com.y);
      }
      trace.cycle_ends.push_back(cycle.end);
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

ContinuityStats NeighborContinuity(const std::vector<SweepTrace>& traces,
                                   int n) {
  if (static_cast<int>(traces.size()) != n * n) {
    throw DimensionMismatch("sweep size does not match lattice");
  }
  auto displacement = [&](int i, int j) {
    const ComState& end = traces[i * n + j].cycle_ends.at(0);
    return Eigen::Vector2d(end.x, end.y);
  };
  std::vector<double> diffs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n) {
        diffs.push_back((displacement(i + 1, j) - displacement(i, j)).norm());
      }
      if (j + 1 < n) {
        diffs.push_back((displacement(i, j + 1) - displacement(i, j)).norm());
      }
    }
  }
  ContinuityStats stats;
  if (diffs.empty()) return stats;
  stats.max_difference = *std::max_element(diffs.begin(), diffs.end());
  const auto mid = diffs.begin() + diffs.size() / 2;
  std::nth_element(diffs.begin(), mid, diffs.end());
  stats.median_difference = *mid;
  return stats;
}

}  // namespace latgait
