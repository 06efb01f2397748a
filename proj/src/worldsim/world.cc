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

#include "gridwise/worldsim/world.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gridwise/common/error.h"

namespace gridwise::worldsim {

std::string_view obstacle_kind_name(ObstacleKind kind) {
  switch (kind) {
    case ObstacleKind::kParkedCar: return "parked_car";
    case ObstacleKind::kFacade: return "facade";
    case ObstacleKind::kAlleyWall: return "alley_wall";
    case ObstacleKind::kArcWall: return "arc_wall";
  }
  return "facade";
}

ObstacleKind obstacle_kind_from_name(std::string_view name) {
  for (ObstacleKind kind : {ObstacleKind::kParkedCar, ObstacleKind::kFacade,
                            ObstacleKind::kAlleyWall, ObstacleKind::kArcWall}) {
    if (obstacle_kind_name(kind) == name) return kind;
  }
  fail(ErrorCode::kInvalidSpec, "unknown obstacle kind '" + std::string(name) + "'");
}

bool Mover::active(double t) const {
  return track.size() >= 2 && t >= track.front().t && t <= track.back().t;
}

Eigen::Vector2d Mover::position_at(double t) const {
  if (track.empty()) return Eigen::Vector2d::Zero();
  if (t <= track.front().t) return track.front().position;
  for (std::size_t i = 1; i < track.size(); ++i) {
    if (t <= track[i].t) {
      const TrackPoint& p0 = track[i - 1];
      const TrackPoint& p1 = track[i];
      const double u = (t - p0.t) / (p1.t - p0.t);
      return p0.position + u * (p1.position - p0.position);
    }
  }
  return track.back().position;
}

Eigen::Vector2d Mover::velocity_at(double t) const {
  for (std::size_t i = 1; i < track.size(); ++i) {
    if (t <= track[i].t || i + 1 == track.size()) {
      return (track[i].position - track[i - 1].position) / (track[i].t - track[i - 1].t);
    }
  }
  return Eigen::Vector2d::Zero();
}

Segment Mover::extent_at(double t) const {
  const Eigen::Vector2d center = position_at(t);
  Eigen::Vector2d v = velocity_at(t);
  const double norm = v.norm();
  const Eigen::Vector2d dir = norm > 0.0 ? Eigen::Vector2d(v / norm) : Eigen::Vector2d(1.0, 0.0);
  const Eigen::Vector2d normal(-dir.y(), dir.x());
  Segment s;
  s.a = center - half_extent * normal;
  s.b = center + half_extent * normal;
  s.reflectivity = reflectivity;
  s.object_id = -1;
  return s;
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return (p - a).norm();
  const double u = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + u * ab)).norm();
}

namespace {

double cross(const Eigen::Vector2d& u, const Eigen::Vector2d& v) {
  return u.x() * v.y() - u.y() * v.x();
}

bool segments_intersect(const Eigen::Vector2d& a0, const Eigen::Vector2d& a1,
                        const Eigen::Vector2d& b0, const Eigen::Vector2d& b1) {
  const double d1 = cross(a1 - a0, b0 - a0);
  const double d2 = cross(a1 - a0, b1 - a0);
  const double d3 = cross(b1 - b0, a0 - b0);
  const double d4 = cross(b1 - b0, a1 - b0);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 &&
         d3 != 0 && d4 != 0;
}

}  // namespace

double segment_segment_distance(const Eigen::Vector2d& a0, const Eigen::Vector2d& a1,
                                const Eigen::Vector2d& b0, const Eigen::Vector2d& b1) {
  if (segments_intersect(a0, a1, b0, b1)) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

double clearance(const World& world, const Eigen::Vector2d& p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Segment& s : world.segments) {
    best = std::min(best, point_segment_distance(p, s.a, s.b));
  }
  return best;
}

}  // namespace gridwise::worldsim
