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

#ifndef LATGAIT_REGISTRATION_H_
#define LATGAIT_REGISTRATION_H_

#include <span>

#include <Eigen/Core>

#include "latgait/types.h"

namespace latgait {

// World position of a body-frame point under `pose`.
inline Eigen::Vector2d ToWorld(const Pose2& pose, const Eigen::Vector2d& p) {
  return Eigen::Vector2d(pose.x, pose.y) + Rotate(pose.yaw, p);
}

// Finds the world-frame pose update (dx, dy, dyaw) so that the body-frame
// stance points, placed with `prior` + update, best match their world
// anchors in the least-squares sense. Closed-form planar Kabsch; exact when
// a consistent rigid motion exists. Throws InsufficientStance for k < 2.
Pose2 RegisterStanceMotion(std::span<const Eigen::Vector2d> anchors,
                           std::span<const Eigen::Vector2d> body_feet,
                           const Pose2& prior);

}  // namespace latgait

#endif  // LATGAIT_REGISTRATION_H_
