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

#ifndef LATGAIT_TYPES_H_
#define LATGAIT_TYPES_H_

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace latgait {

inline constexpr double kPi = std::numbers::pi;

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidShape : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class EmptyLibrary : public Error {
 public:
  using Error::Error;
};

class WrongTaskKind : public Error {
 public:
  using Error::Error;
};

class MissingModel : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Thrown when fewer than two stance feet are available for registration.
class InsufficientStance : public Error {
 public:
  explicit InsufficientStance(int count)
      : Error("insufficient stance: " + std::to_string(count) + " feet"),
        count_(count) {}
  int count() const { return count_; }

 private:
  int count_;
};

// Thrown by leg inverse kinematics for targets outside the workspace.
class Unreachable : public Error {
 public:
  Unreachable(int leg, double excess)
      : Error("leg " + std::to_string(leg) + " target unreachable by " +
              std::to_string(excess) + " m"),
        leg_(leg),
        excess_(excess) {}
  int leg() const { return leg_; }
  // Distance (meters) by which the target lies outside the reachable annulus.
  double excess() const { return excess_; }

 private:
  int leg_;
  double excess_;
};

// Wraps an angle to (-pi, pi].
double WrapAngle(double angle);

// Planar pose or pose increment in the world frame.
struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  bool operator==(const Pose2&) const = default;
};

// Planar center-of-mass state: world position, yaw, body-frame velocity.
struct ComState {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double vx = 0.0;
  double vy = 0.0;

  Pose2 pose() const { return {x, y, yaw}; }
  bool operator==(const ComState&) const = default;
};

// Rotates a planar vector by `angle`.
inline Eigen::Vector2d Rotate(double angle, const Eigen::Vector2d& v) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x() - s * v.y(), s * v.x() + c * v.y()};
}

}  // namespace latgait

#endif  // LATGAIT_TYPES_H_
