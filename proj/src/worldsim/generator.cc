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

#include "gridwise/worldsim/generator.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/random.h"

namespace gridwise::worldsim {
namespace {

constexpr double kCarReflectivity = 0.9;
constexpr double kFacadeReflectivity = 0.6;
constexpr double kArcReflectivity = 0.5;
constexpr double kRouteSpacing = 0.25;

enum class Feature { kParkedCars, kBuildings, kAlleys, kArcs };

struct Leg {
  Eigen::Vector2d start;
  Eigen::Vector2d end;
  Eigen::Vector2d dir;
  double length;
};

class Builder {
 public:
  Builder(Rng& rng, const SceneMix& mix) : rng_(rng), mix_(mix) {}

  std::vector<Segment> segments;

  Feature pick_feature() {
    const std::array<double, 4> w = {mix_.parked_cars, mix_.buildings, mix_.alleys,
                                      mix_.roundabouts};
    const double total = w[0] + w[1] + w[2] + w[3];
    double u = uniform(rng_, 0.0, total);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] <= 0.0) continue;
      if (u < w[i]) return static_cast<Feature>(i);
      u -= w[i];
    }
    for (std::size_t i = w.size(); i-- > 0;) {
      if (w[i] > 0.0) return static_cast<Feature>(i);
    }
    return Feature::kBuildings;
  }

  // Street-side block on one side of a leg. `side` is +1 for left, -1 for right
  // of the direction of travel. [s0, s1] is the arc-length span on the leg.
  void block(const Leg& leg, int side, double s0, double s1) {
    switch (pick_feature()) {
      case Feature::kParkedCars: parked_cars(leg, side, s0, s1); break;
      case Feature::kBuildings: facade(leg, side, s0, s1, false); break;
      case Feature::kAlleys: facade(leg, side, s0, s1, true); break;
      case Feature::kArcs: arc_wall(leg, side, s0, s1); break;
    }
  }

  void corner_arc(const Eigen::Vector2d& corner, const Eigen::Vector2d& dir_in,
                  const Eigen::Vector2d& dir_out) {
    const double radius = uniform(rng_, 6.5, 7.5);
    const double a0 = std::atan2(dir_in.y(), dir_in.x());
    const Eigen::Vector2d away = -dir_out;
    double a1 = std::atan2(away.y(), away.x());
    // Sweep the quarter between the two directions the short way.
    double sweep = a1 - a0;
    while (sweep > std::numbers::pi) sweep -= 2.0 * std::numbers::pi;
    while (sweep < -std::numbers::pi) sweep += 2.0 * std::numbers::pi;
    const int pieces = 12;
    const int id = next_id_++;
    Eigen::Vector2d prev = corner + radius * Eigen::Vector2d(std::cos(a0), std::sin(a0));
    for (int i = 1; i <= pieces; ++i) {
      const double a = a0 + sweep * i / pieces;
      const Eigen::Vector2d p = corner + radius * Eigen::Vector2d(std::cos(a), std::sin(a));
      add(prev, p, kArcReflectivity, id, ObstacleKind::kArcWall);
      prev = p;
    }
  }

 private:
  static Eigen::Vector2d at(const Leg& leg, int side, double s, double lateral) {
    const Eigen::Vector2d normal(-leg.dir.y(), leg.dir.x());
    return leg.start + s * leg.dir + side * lateral * normal;
  }

  void add(const Eigen::Vector2d& a, const Eigen::Vector2d& b, double reflectivity,
           int id, ObstacleKind kind) {
    segments.push_back(Segment{a, b, reflectivity, id, kind});
  }

  void parked_cars(const Leg& leg, int side, double s0, double s1) {
    const double inner = uniform(rng_, 2.6, 3.0);
    double pos = s0 + uniform(rng_, 0.0, 1.5);
    while (true) {
      const double length = uniform(rng_, 4.0, 5.0);
      const double width = uniform(rng_, 1.8, 2.0);
      if (pos + length > s1) break;
      const int id = next_id_++;
      const Eigen::Vector2d p0 = at(leg, side, pos, inner);
      const Eigen::Vector2d p1 = at(leg, side, pos + length, inner);
      const Eigen::Vector2d p2 = at(leg, side, pos + length, inner + width);
      const Eigen::Vector2d p3 = at(leg, side, pos, inner + width);
      add(p0, p1, kCarReflectivity, id, ObstacleKind::kParkedCar);
      add(p1, p2, kCarReflectivity, id, ObstacleKind::kParkedCar);
      add(p2, p3, kCarReflectivity, id, ObstacleKind::kParkedCar);
      add(p3, p0, kCarReflectivity, id, ObstacleKind::kParkedCar);
      pos += length + uniform(rng_, 0.8, 2.5);
    }
  }

  void facade(const Leg& leg, int side, double s0, double s1, bool with_alley) {
    const double lateral = uniform(rng_, 6.0, 7.0);
    const int id = next_id_++;
    if (!with_alley) {
      add(at(leg, side, s0, lateral), at(leg, side, s1, lateral), kFacadeReflectivity, id,
          ObstacleKind::kFacade);
      return;
    }
    const double gap = uniform(rng_, 2.0, 4.0);
    const double gap_start = s0 + uniform(rng_, 0.3, 0.7) * (s1 - s0 - gap);
    const double gap_end = gap_start + gap;
    const double depth = uniform(rng_, 4.0, 8.0);
    add(at(leg, side, s0, lateral), at(leg, side, gap_start, lateral), kFacadeReflectivity,
        id, ObstacleKind::kFacade);
    add(at(leg, side, gap_end, lateral), at(leg, side, s1, lateral), kFacadeReflectivity,
        id, ObstacleKind::kFacade);
    add(at(leg, side, gap_start, lateral), at(leg, side, gap_start, lateral + depth),
        kFacadeReflectivity, id, ObstacleKind::kAlleyWall);
    add(at(leg, side, gap_end, lateral), at(leg, side, gap_end, lateral + depth),
        kFacadeReflectivity, id, ObstacleKind::kAlleyWall);
  }

  void arc_wall(const Leg& leg, int side, double s0, double s1) {
    const double lateral = uniform(rng_, 6.0, 7.0);
    const double sagitta = uniform(rng_, 1.5, 3.0);
    const double chord = s1 - s0;
    const double radius = (chord * chord / 4.0 + sagitta * sagitta) / (2.0 * sagitta);
    // Circle center lies on the road side of the chord so the wall bulges away.
    const double mid = 0.5 * (s0 + s1);
    const double center_lateral = lateral + sagitta - radius;
    const int pieces = 10;
    const int id = next_id_++;
    auto point = [&](int i) {
      const double s = s0 + chord * i / pieces;
      const double ds = s - mid;
      const double lat = center_lateral + std::sqrt(std::max(0.0, radius * radius - ds * ds));
      return at(leg, side, s, lat);
    };
    for (int i = 0; i < pieces; ++i) {
      add(point(i), point(i + 1), kArcReflectivity, id, ObstacleKind::kArcWall);
    }
  }

  Rng& rng_;
  SceneMix mix_;
  int next_id_ = 0;
};

void append_line(std::vector<Eigen::Vector2d>& route, const Eigen::Vector2d& from,
                 const Eigen::Vector2d& to) {
  const double length = (to - from).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(length / kRouteSpacing)));
  for (int i = route.empty() ? 0 : 1; i <= steps; ++i) {
    route.push_back(from + (to - from) * (static_cast<double>(i) / steps));
  }
}

// Centerline with circular fillets of `radius` at every corner.
std::vector<Eigen::Vector2d> fillet_route(const std::vector<Eigen::Vector2d>& corners,
                                          double radius) {
  std::vector<Eigen::Vector2d> route;
  Eigen::Vector2d cursor = corners.front();
  for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
    const Eigen::Vector2d dir_in = (corners[i] - corners[i - 1]).normalized();
    const Eigen::Vector2d dir_out = (corners[i + 1] - corners[i]).normalized();
    const Eigen::Vector2d entry = corners[i] - radius * dir_in;
    const Eigen::Vector2d exit = corners[i] + radius * dir_out;
    append_line(route, cursor, entry);
    const Eigen::Vector2d center = entry + radius * dir_out;
    const Eigen::Vector2d r0 = entry - center;
    const Eigen::Vector2d r1 = exit - center;
    const double a0 = std::atan2(r0.y(), r0.x());
    double sweep = std::atan2(r1.y(), r1.x()) - a0;
    while (sweep > std::numbers::pi) sweep -= 2.0 * std::numbers::pi;
    while (sweep < -std::numbers::pi) sweep += 2.0 * std::numbers::pi;
    const int steps = std::max(
        2, static_cast<int>(std::ceil(std::abs(sweep) * radius / kRouteSpacing)));
    for (int k = 1; k <= steps; ++k) {
      const double a = a0 + sweep * k / steps;
      route.push_back(center + radius * Eigen::Vector2d(std::cos(a), std::sin(a)));
    }
    cursor = exit;
  }
  append_line(route, cursor, corners.back());
  return route;
}

double route_distance(const std::vector<Eigen::Vector2d>& route, const Segment& s) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < route.size(); ++i) {
    best = std::min(best, segment_segment_distance(route[i - 1], route[i], s.a, s.b));
  }
  return best;
}

}  // namespace

World generate_world(std::uint64_t seed, const SceneMix& mix, const WorldConfig& config) {
  const std::array<double, 4> weights = {mix.parked_cars, mix.buildings, mix.alleys,
                                         mix.roundabouts};
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      fail(ErrorCode::kInvalidSpec, "scene-mix weights must be finite and non-negative");
    }
  }
  if (weights[0] + weights[1] + weights[2] + weights[3] <= 0.0) {
    fail(ErrorCode::kInvalidSpec, "scene-mix weights are all zero");
  }
  if (config.legs < 1 || config.leg_min <= 2.0 * config.corner_margin) {
    fail(ErrorCode::kInvalidSpec, "world config leaves no room for street legs");
  }

  Rng rng = make_stream(seed, 0);
  World world;
  world.seed = seed;

  // Staircase route: east legs alternate with north/south legs so x never
  // decreases and the route does not revisit itself.
  std::vector<Eigen::Vector2d> corners = {Eigen::Vector2d::Zero()};
  std::vector<Leg> legs;
  for (int i = 0; i < config.legs; ++i) {
    Eigen::Vector2d dir(1.0, 0.0);
    if (i % 2 == 1) dir = uniform(rng, 0.0, 1.0) < 0.5 ? Eigen::Vector2d(0.0, 1.0)
                                                       : Eigen::Vector2d(0.0, -1.0);
    const double length = uniform(rng, config.leg_min, config.leg_max);
    const Eigen::Vector2d start = corners.back();
    corners.push_back(start + length * dir);
    legs.push_back(Leg{start, corners.back(), dir, length});
  }
  world.route = fillet_route(corners, config.corner_radius);

  Builder builder(rng, mix);
  for (const Leg& leg : legs) {
    for (int side : {1, -1}) {
      double s = config.corner_margin;
      const double end = leg.length - config.corner_margin;
      while (end - s >= 6.0) {
        const double block = std::min(uniform(rng, 10.0, 18.0), end - s);
        builder.block(leg, side, s, s + block);
        s += block + uniform(rng, 0.5, 2.0);
      }
    }
  }
  if (mix.roundabouts > 0.0) {
    const double p_arc = mix.roundabouts / (weights[0] + weights[1] + weights[2] + weights[3]);
    for (std::size_t i = 1; i < legs.size(); ++i) {
      if (uniform(rng, 0.0, 1.0) < p_arc) {
        builder.corner_arc(legs[i].start, legs[i - 1].dir, legs[i].dir);
      }
    }
  }

  // Drop whole objects that crowd the route.
  std::set<int> crowded;
  for (const Segment& s : builder.segments) {
    if (route_distance(world.route, s) < config.build_clearance) crowded.insert(s.object_id);
  }
  for (const Segment& s : builder.segments) {
    if (!crowded.contains(s.object_id)) world.segments.push_back(s);
  }

  // Oncoming traffic on the left lane of a random leg.
  const int mover_count =
      std::uniform_int_distribution<int>(0, std::max(0, config.max_movers))(rng);
  for (int m = 0; m < mover_count; ++m) {
    const Leg& leg = legs[std::uniform_int_distribution<std::size_t>(0, legs.size() - 1)(rng)];
    Mover mover;
    mover.speed = uniform(rng, 3.0, 8.0);
    const Eigen::Vector2d normal(-leg.dir.y(), leg.dir.x());
    const Eigen::Vector2d from = leg.end + 1.8 * normal;
    const Eigen::Vector2d to = leg.start + 1.8 * normal;
    const double t0 = uniform(rng, 0.0, 20.0);
    mover.track = {TrackPoint{t0, from}, TrackPoint{t0 + leg.length / mover.speed, to}};
    world.movers.push_back(mover);
  }

  Eigen::Vector2d lo = world.route.front();
  Eigen::Vector2d hi = lo;
  auto grow = [&](const Eigen::Vector2d& p) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  };
  for (const auto& p : world.route) grow(p);
  for (const Segment& s : world.segments) {
    grow(s.a);
    grow(s.b);
  }
  for (const Mover& m : world.movers) {
    for (const TrackPoint& p : m.track) grow(p.position);
  }
  const Eigen::Vector2d margin(10.0, 10.0);
  world.bounds = Bounds{lo - margin, hi + margin};
  return world;
}

}  // namespace gridwise::worldsim
