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

// End-to-end acceptance run on the desk profile. Prints one PASS/FAIL line
// per criterion and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "latgait/action.h"
#include "latgait/checks.h"
#include "latgait/config.h"
#include "latgait/dynamics.h"
#include "latgait/harness.h"
#include "latgait/hash.h"
#include "latgait/io.h"
#include "latgait/latent.h"
#include "latgait/planner.h"

namespace latgait {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Report {
 public:
  void Run(int id, const std::string& name,
           const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %-26s %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", id,
                name.c_str(), o.detail.c_str(), Since(start));
    std::fflush(stdout);
    failures_ += o.pass ? 0 : 1;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0,
                double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

// Shared desk pipeline, built once for criteria 3 to 9.
struct Shared {
  ConfigFile cfg;
  Pipeline pipeline;
  double build_seconds = 0.0;
  double imitation_seconds = 0.0;
};

int Main() {
  Report report;
  Shared s;
  s.cfg = ConfigFile{};
  s.cfg.Validate();
  const std::uint64_t seed = s.cfg.harness.seed;

  report.Run(1, "gradient fidelity", [] {
    const GradientCheckReport r = CheckGradients(100, 1);
    return Outcome{r.max_param_error < 1e-4 && r.max_input_error < 1e-4 &&
                       r.seconds < 10.0,
                   Fmt("param %.2e input %.2e over 100 nets in %.3f s",
                       r.max_param_error, r.max_input_error, r.seconds)};
  });

  report.Run(2, "registration exactness", [] {
    const RegistrationCheckReport r = CheckRegistration(1000, 1);
    return Outcome{r.max_translation_error < 1e-9 && r.max_yaw_error < 1e-9 &&
                       r.seconds < 5.0,
                   Fmt("translation %.2e yaw %.2e over 1000 cases in %.3f s",
                       r.max_translation_error, r.max_yaw_error, r.seconds)};
  });

  // Pipeline stages, timed separately for criterion 4.
  {
    const auto start = Clock::now();
    Pipeline& p = s.pipeline;
    p.config = s.cfg;
    p.robot = s.cfg.Robot();
    p.library = GenerateLibrary(s.cfg, p.robot);
    const auto imitation_start = Clock::now();
    p.bundle = std::make_shared<const PolicyBundle>(
        TrainPolicy(s.cfg, p.robot, p.library, &p.imitation_loss));
    s.imitation_seconds = Since(imitation_start);
    p.controller = std::make_shared<const PolicyController>(p.bundle);
    DynamicsTrainingResult dyn = TrainPolicyDynamics(
        s.cfg, p.robot, p.bundle, ActionKind::kLatent, s.cfg.dynamics.samples,
        s.cfg.dynamics.training.seed);
    p.dynamics_report = dyn.report;
    p.latent_dynamics =
        std::make_shared<const DynamicsModel>(std::move(dyn.model));
    s.build_seconds = Since(start);
  }
  const Pipeline& p = s.pipeline;

  report.Run(3, "frame round trip", [&] {
    const RoundTripReport r = CheckRoundTrip(*p.latent_dynamics, 10000, 3);
    return Outcome{
        r.max_roundtrip_error < 1e-12 && r.max_equivariance_error < 1e-9,
        Fmt("round trip %.2e equivariance %.2e over 10000 states",
            r.max_roundtrip_error, r.max_equivariance_error)};
  });

  report.Run(4, "imitation convergence", [&] {
    const double ratio = p.imitation_loss.back() / p.imitation_loss.front();
    double worst_rmse = 0.0;
    for (int g = 0; g < p.bundle->expert_count(); ++g) {
      worst_rmse = std::max(worst_rmse,
                            ReconstructionError(*p.bundle, g, p.library.experts));
    }
    return Outcome{ratio <= 0.01 && worst_rmse < 0.05 &&
                       s.imitation_seconds < 120.0,
                   Fmt("loss ratio %.2e worst RMSE %.4f rad in %.1f s", ratio,
                       worst_rmse, s.imitation_seconds)};
  });

  report.Run(5, "latent continuity", [&] {
    const auto codes = LatticeCodes(*p.bundle, 21);
    const auto traces = LatentSweep(*p.bundle, p.robot, s.cfg.sim, codes, 1);
    const ContinuityStats c = NeighborContinuity(traces, 21);
    const double ratio = c.max_difference / c.median_difference;
    return Outcome{ratio <= 10.0,
                   Fmt("max %.4f m median %.4f m ratio %.2f", c.max_difference,
                       c.median_difference, ratio)};
  });

  report.Run(6, "shooting optimality", [&] {
    PlanConfig plan = s.cfg.Plan();
    plan.samples = 8000;
    plan.horizon = 1;
    const OracleReport grid = CheckShootingOracle(
        *p.latent_dynamics, ActionSpace::Latent(*p.bundle), plan, 20, 6);
    const QuadraticReport quad = CheckSyntheticQuadratic(plan, 6);
    return Outcome{grid.max_gap <= 0.02 && quad.gap <= 0.02,
                   Fmt("grid gap %.2e over 20 states, quadratic gap %.2e",
                       grid.max_gap, quad.gap)};
  });

  report.Run(7, "goal reaching", [&] {
    const auto start = Clock::now();
    const SuiteResult r = RunSuite({{"lat", p.LatentPlanner()}},
                                   GoalCases(s.cfg), 3, seed, p.robot, s.cfg);
    int reached = 0;
    int worst_steps = 0;
    double worst_error = 0.0;
    for (const auto& rec : r.records) {
      const bool ok = rec.reached && rec.steps_to_goal <= 60 &&
                      rec.final_position_error < 0.1;
      reached += ok ? 1 : 0;
      worst_steps = std::max(worst_steps, rec.steps);
      worst_error = std::max(worst_error, rec.final_position_error);
    }
    const double seconds = Since(start) + s.build_seconds;
    const int total = static_cast<int>(r.records.size());
    return Outcome{reached == total && total == 24 && seconds < 300.0,
                   Fmt("%.0f/%.0f reached, max steps %.0f, max error %.3f m",
                       reached, total, worst_steps, worst_error) +
                       Fmt(", %.1f s with pipeline", seconds)};
  });

  report.Run(8, "LAT vs LIB ordering", [&] {
    const int trials = std::max(5, s.cfg.harness.trials);
    const std::vector<Method> methods = {
        {"lat", p.LatentPlanner()},
        {"lib", LibraryPlanner(p, p.robot, DeriveSeed(seed, 11))}};
    const SuiteResult r = RunSuite(methods, VelocityCases(s.cfg), trials, seed,
                                   p.robot, s.cfg);
    const double lat = r.MeanCost("lat", "velocity");
    const double lib = r.MeanCost("lib", "velocity");
    return Outcome{lat <= lib, Fmt("LAT %.4f LIB %.4f over %.0f seeds", lat,
                                   lib, trials)};
  });

  report.Run(9, "adverse ordering", [&] {
    const int trials = std::max(5, s.cfg.harness.trials);
    const AdverseResult r =
        RunAdverse(p, s.cfg.AdverseRobot(), trials, seed);
    return Outcome{r.latent <= r.ik && r.latent <= r.stale,
                   Fmt("LAT %.4f IK %.4f stale %.4f over %.0f seeds", r.latent,
                       r.ik, r.stale, trials)};
  });

  report.Run(10, "ablation trends", [&] {
    const auto start = Clock::now();
    std::ostringstream detail;
    bool pass = true;
    std::vector<AblationResult> results;
    for (AblationSweep sweep :
         {AblationSweep::kDynSamples, AblationSweep::kExpertCount,
          AblationSweep::kLatentDim}) {
      AblationConfig ab;
      ab.sweep = sweep;
      ab.trials = 10;
      results.push_back(RunAblation(ab, s.cfg, seed));
    }
    const AblationResult& dyn = results[0];
    const AblationResult& experts = results[1];
    const AblationResult& dims = results[2];
    pass = pass && dyn.At(2000).mean_cost <= dyn.At(1000).mean_cost;
    pass = pass && experts.At(30).mean_cost <= experts.At(10).mean_cost;
    for (const auto& point : dims.points) {
      pass = pass && std::isfinite(point.mean_cost);
    }
    const double seconds = Since(start);
    pass = pass && seconds < 1800.0;
    detail << Fmt("samples 1000/2000 %.4f/%.4f, ", dyn.At(1000).mean_cost,
                  dyn.At(2000).mean_cost)
           << Fmt("experts 10/30 %.4f/%.4f, ", experts.At(10).mean_cost,
                  experts.At(30).mean_cost)
           << Fmt("dims 2/3/4 %.4f/%.4f/%.4f", dims.At(2).mean_cost,
                  dims.At(3).mean_cost, dims.At(4).mean_cost);
    return Outcome{pass, detail.str()};
  });

  report.Run(11, "determinism", [&] {
    // Rebuild every stage from the same config and compare artifact hashes.
    const Pipeline again = BuildPipeline(s.cfg);
    const bool same_library =
        ArtifactHash(again.library) == ArtifactHash(p.library);
    const bool same_bundle = ArtifactHash(*again.bundle) == ArtifactHash(*p.bundle);
    const bool same_dynamics =
        ArtifactHash(*again.latent_dynamics) == ArtifactHash(*p.latent_dynamics);
    std::vector<TaskCase> tasks = AllCases(s.cfg);
    const auto run = [&](const Pipeline& pl) {
      return HashHex(SuiteToJson(RunSuite({{"lat", pl.LatentPlanner()}}, tasks,
                                          1, seed, pl.robot, s.cfg)));
    };
    const bool same_suite = run(p) == run(again);
    return Outcome{same_library && same_bundle && same_dynamics && same_suite,
                   std::string("library ") + (same_library ? "=" : "!=") +
                       " policy " + (same_bundle ? "=" : "!=") + " dynamics " +
                       (same_dynamics ? "=" : "!=") + " suite " +
                       (same_suite ? "=" : "!=")};
  });

  std::printf("%d of 11 criteria failed\n", report.failures());
  return report.failures() == 0 ? 0 : 1;
}

}  // namespace
}  // namespace latgait

int main() { return latgait::Main(); }
