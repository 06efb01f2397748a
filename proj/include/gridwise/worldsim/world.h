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

#ifndef GRIDWISE_WORLDSIM_WORLD_H_
#define GRIDWISE_WORLDSIM_WORLD_H_

#include <cstdint>
#include <string_view>
#include <vector>

#include "Eigen/Core"

namespace gridwise::worldsim {

enum class ObstacleKind : std::uint8_t { kParkedCar, kFacade, kAlleyWall, kArcWall };

std::string_view obstacle_kind_name(ObstacleKind kind);
ObstacleKind obstacle_kind_from_name(std::string_view name);

// Static obstacle boundary piece. Segments sharing an object_id belong to one
// physical object (a car outline, a facade with its alley walls, ...).
struct Segment {
  Eigen::Vector2d a = Eigen::Vector2d::Zero();
  Eigen::Vector2d b = Eigen::Vector2d::Zero();
  double reflectivity = 0.5;  // [0, 1]
  int object_id = 0;
  ObstacleKind kind = ObstacleKind::kFacade;

  double length() const { return (b - a).norm(); }
};

struct TrackPoint {
  double t = 0.0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
};

// A moving object following a piecewise-linear track. It only exists between
// the first and last track timestamps. Its physical extent is a segment of
// length 2 * half_extent perpendicular to the direction of motion.
struct Mover {
  std::vector<TrackPoint> track;
  double half_extent = 0.9;
  double speed = 0.0;  // m/s, > 0.5
  double reflectivity = 0.9;

  bool active(double t) const;
  Eigen::Vector2d position_at(double t) const;
  Eigen::Vector2d velocity_at(double t) const;
  Segment extent_at(double t) const;
};

struct Bounds {
  Eigen::Vector2d min = Eigen::Vector2d::Zero();
  Eigen::Vector2d max = Eigen::Vector2d::Zero();

  bool contains(const Eigen::Vector2d& p) const {
    return p.x() >= min.x() && p.x() <= max.x() && p.y() >= min.y() && p.y() <= max.y();
  }
};

struct World {
  std::uint64_t seed = 0;
  Bounds bounds;
  std::vector<Segment> segments;
  std::vector<Mover> movers;
  // Street centerline the trajectory generator drives along.
  std::vector<Eigen::Vector2d> route;
};

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b);
double segment_segment_distance(const Eigen::Vector2d& a0, const Eigen::Vector2d& a1,
                                const Eigen::Vector2d& b0, const Eigen::Vector2d& b1);

// Distance from `p` to the nearest static segment (infinity if none).
double clearance(const World& world, const Eigen::Vector2d& p);

}  // namespace gridwise::worldsim

#endif  // GRIDWISE_WORLDSIM_WORLD_H_
