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

// Latent-conditioned low-level gait policy q = pi(t, z), trained jointly
// with one latent code per expert demonstration.

#ifndef LATGAIT_LATENT_H_
#define LATGAIT_LATENT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "latgait/expert.h"
#include "latgait/nn.h"
#include "latgait/robot.h"
#include "latgait/sim.h"

namespace latgait {

using LatentCode = Eigen::VectorXd;

struct PolicyBundle {
  Network net;            // input (t, z), output joint targets
  Eigen::MatrixXd codes;  // D x G, column g is the code of expert g
  int cycle_length = 100;
  Eigen::VectorXd code_lo;  // sampling box for z
  Eigen::VectorXd code_hi;
  Eigen::VectorXd joint_lo;
  Eigen::VectorXd joint_hi;

  // Provenance.
  std::uint64_t seed = 0;
  int epochs = 0;
  std::string library_hash;
  std::string robot_hash;
  std::string config_hash;

  int latent_dim() const { return static_cast<int>(codes.rows()); }
  int expert_count() const { return static_cast<int>(codes.cols()); }
  int joint_count() const { return net.output_size(); }
  LatentCode code(int g) const { return codes.col(g); }

  // Joint targets at phase t in (0, 1], clamped to the joint limits.
  Eigen::VectorXd Query(double t, const LatentCode& z) const;

  // Targets for phases n/N, n = 1..N, as an N x joint_count table.
  Eigen::MatrixXd CycleTable(const LatentCode& z) const;

  // Throws InvalidShape when sizes are inconsistent.
  void Validate() const;
};

struct TrainingConfig {
  int latent_dim = 2;
  std::vector<int> hidden = {64, 64};
  int epochs = 2000;
  int batch = 64;
  double lr = 1e-3;
  std::uint64_t seed = 1;
  double code_init_std = 0.1;
  double box_margin = 0.25;  // code box growth per side, fraction of extent
};

struct TrainingResult {
  PolicyBundle bundle;
  // Mean squared joint error over every (expert, phase) pair; entry 0 is
  // before the first update, then one entry per epoch.
  std::vector<double> loss_history;
};

// Jointly minimizes sum_g sum_t |pi(t, z_g) - expert_g(t)|^2 over network
// parameters and codes with simultaneous Adam steps.
TrainingResult TrainJoint(const std::vector<ExpertTrajectory>& library,
                          const RobotModel& model, const TrainingConfig& cfg);

// An (expert, phase step) pair; phase is (step + 1) / N.
struct DemoSample {
  int expert = 0;
  int step = 0;
};

struct JointGradient {
  double loss = 0.0;  // sum of squared errors over the samples
  Eigen::VectorXd params;
  Eigen::MatrixXd codes;  // D x G
};

// Gradient of the summed squared imitation error of `samples` with respect
// to the network parameters and every code.
JointGradient ImitationGradient(const Network& net,
                                const Eigen::MatrixXd& codes,
                                const std::vector<ExpertTrajectory>& library,
                                const std::vector<DemoSample>& samples);

// RMSE (rad) between the policy at code g and expert g over all phases and
// joints. Throws IndexOutOfRange.
double ReconstructionError(const PolicyBundle& bundle, int g,
                           const std::vector<ExpertTrajectory>& library);

// One gait cycle of the policy at `z`. Throws DimensionMismatch.
CycleResult RolloutPolicyCycle(SimState& state, const PolicyBundle& bundle,
                               const LatentCode& z, const SimConfig& cfg,
                               const RobotModel& model, bool record = false);

// n x n lattice over the first two code dimensions of the code box; extra
// dimensions sit at the box center. Row-major in (i, j).
std::vector<LatentCode> LatticeCodes(const PolicyBundle& bundle, int n);

struct SweepTrace {
  LatentCode code;
  std::vector<Eigen::Vector2d> xy;  // CoM after every low-level tick
  std::vector<ComState> cycle_ends;
};

// Rolls every code for `cycles` cycles from nominal stance at the origin.
std::vector<SweepTrace> LatentSweep(const PolicyBundle& bundle,
                                    const RobotModel& model,
                                    const SimConfig& cfg,
                                    const std::vector<LatentCode>& codes,
                                    int cycles);

struct ContinuityStats {
  double max_difference = 0.0;
  double median_difference = 0.0;
};

// Differences of first-cycle displacement between lattice neighbours of an
// n x n sweep.
ContinuityStats NeighborContinuity(const std::vector<SweepTrace>& traces,
                                   int n);

}  // namespace latgait

#endif  // LATGAIT_LATENT_H_
