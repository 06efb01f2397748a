// Copyright 2026 The Gridwise Authors
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

#ifndef GRIDWISE_GRIDCORE_POSE2D_H_
#define GRIDWISE_GRIDCORE_POSE2D_H_

#include "Eigen/Core"

namespace gridwise::gridcore {

// Wraps an angle into (-pi, pi].
double normalize_angle(double angle);

// Planar rigid transform from a local (vehicle) frame into the world frame.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // radians, (-pi, pi]

  static Pose2D make(double x, double y, double heading) {
    return Pose2D{x, y, normalize_angle(heading)};
  }

  Eigen::Vector2d translation() const { return {x, y}; }
  Eigen::Vector2d to_world(const Eigen::Vector2d& local) const;
  Eigen::Vector2d to_local(const Eigen::Vector2d& world) const;

  bool operator==(const Pose2D&) const = default;
};

}  // namespace gridwise::gridcore

#endif  // GRIDWISE_GRIDCORE_POSE2D_H_
