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

#include "gridwise/worldsim/raycast.h"

#include <cmath>

#include "gridwise/common/error.h"

namespace gridwise::worldsim {

std::optional<double> ray_segment_intersection(const Eigen::Vector2d& origin,
                                               const Eigen::Vector2d& dir,
                                               const Eigen::Vector2d& a,
                                               const Eigen::Vector2d& b,
                                               double max_range) {
  const Eigen::Vector2d edge = b - a;
  const double denom = dir.x() * edge.y() - dir.y() * edge.x();
  if (denom == 0.0) return std::nullopt;
  const Eigen::Vector2d rel = a - origin;
  const double t = (rel.x() * edge.y() - rel.y() * edge.x()) / denom;
  const double u = (rel.x() * dir.y() - rel.y() * dir.x()) / denom;
  if (t < 0.0 || t > max_range || u < 0.0 || u > 1.0) return std::nullopt;
  return t;
}

std::optional<RayHit> raycast(const World& world, const Eigen::Vector2d& origin,
                              double angle, double max_range, double time) {
  if (!(max_range > 0.0)) fail(ErrorCode::kInvalidArgument, "max_range must be positive");
  const Eigen::Vector2d dir(std::cos(angle), std::sin(angle));
  std::optional<RayHit> best;
  for (const Segment& s : world.segments) {
    const auto t = ray_segment_intersection(origin, dir, s.a, s.b, max_range);
    if (t && (!best || *t < best->range)) {
      best = RayHit{*t, s.reflectivity, false, 0.0};
    }
  }
  for (const Mover& m : world.movers) {
    if (!m.active(time)) continue;
    const Segment s = m.extent_at(time);
    const auto t = ray_segment_intersection(origin, dir, s.a, s.b, max_range);
    if (t && (!best || *t < best->range)) {
      best = RayHit{*t, m.reflectivity, true, m.velocity_at(time).dot(dir)};
    }
  }
  return best;
}

}  // namespace gridwise::worldsim
