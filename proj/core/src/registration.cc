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

#include "latgait/registration.h"

#include <cmath>

namespace latgait {

Pose2 RegisterStanceMotion(std::span<const Eigen::Vector2d> anchors,
                           std::span<const Eigen::Vector2d> body_feet,
                           const Pose2& prior) {
  if (anchors.size() != body_feet.size()) {
    throw DimensionMismatch("anchors and body_feet differ in length");
  }
  const int k = static_cast<int>(anchors.size());
  if (k < 2) throw InsufficientStance(k);

  Eigen::Vector2d anchor_mean = Eigen::Vector2d::Zero();
  Eigen::Vector2d body_mean = Eigen::Vector2d::Zero();
  for (int i = 0; i < k; ++i) {
    anchor_mean += anchors[i];
    body_mean += body_feet[i];
  }
  anchor_mean /= k;
  body_mean /= k;

  // Optimal rotation maximizes sum(dot) cos + sum(cross) sin.
  double dot = 0.0;
  double cross = 0.0;
  for (int i = 0; i < k; ++i) {
    const Eigen::Vector2d b = body_feet[i] - body_mean;
    const Eigen::Vector2d a = anchors[i] - anchor_mean;
    dot += b.dot(a);
    cross += b.x() * a.y() - b.y() * a.x();
  }
  // Coincident points leave the rotation unobservable; keep the prior yaw.
  const double yaw =
      (dot == 0.0 && cross == 0.0) ? prior.yaw : std::atan2(cross, dot);
  const Eigen::Vector2d t = anchor_mean - Rotate(yaw, body_mean);
  return {t.x() - prior.x, t.y() - prior.y, WrapAngle(yaw - prior.yaw)};
}

}  // namespace latgait
