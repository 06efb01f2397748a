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

#ifndef GRIDWISE_WORLDSIM_RAYCAST_H_
#define GRIDWISE_WORLDSIM_RAYCAST_H_

#include <optional>

#include "Eigen/Core"
#include "gridwise/worldsim/world.h"

namespace gridwise::worldsim {

struct RayHit {
  double range = 0.0;
  double reflectivity = 0.0;
  bool is_mover = false;
  // Projection of the hit object's velocity on the unit ray direction;
  // positive means receding. Exactly 0 for static geometry.
  double radial_velocity = 0.0;
};

// Distance along the ray (origin + t * dir) to the segment [a, b], if the ray
// hits it with t in [0, max_range]. Parallel segments never report a hit.
std::optional<double> ray_segment_intersection(const Eigen::Vector2d& origin,
                                               const Eigen::Vector2d& dir,
                                               const Eigen::Vector2d& a,
                                               const Eigen::Vector2d& b,
                                               double max_range);

// Nearest hit among static segments and movers active at `time`.
std::optional<RayHit> raycast(const World& world, const Eigen::Vector2d& origin,
                              double angle, double max_range, double time);

}  // namespace gridwise::worldsim

#endif  // GRIDWISE_WORLDSIM_RAYCAST_H_
