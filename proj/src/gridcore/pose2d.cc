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

#include "gridwise/gridcore/pose2d.h"

#include <cmath>
#include <numbers>

namespace gridwise::gridcore {

double normalize_angle(double angle) {
  double a = std::remainder(angle, 2.0 * std::numbers::pi);
  if (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

Eigen::Vector2d Pose2D::to_world(const Eigen::Vector2d& local) const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  return {x + c * local.x() - s * local.y(), y + s * local.x() + c * local.y()};
}

Eigen::Vector2d Pose2D::to_local(const Eigen::Vector2d& world) const {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  const double dx = world.x() - x;
  const double dy = world.y() - y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

}  // namespace gridwise::gridcore
