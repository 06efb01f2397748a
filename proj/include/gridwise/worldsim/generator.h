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

#ifndef GRIDWISE_WORLDSIM_GENERATOR_H_
#define GRIDWISE_WORLDSIM_GENERATOR_H_

#include <cstdint>

#include "gridwise/worldsim/world.h"

namespace gridwise::worldsim {

// Relative frequency of each street-side feature. Weights must be
// non-negative and not all zero.
struct SceneMix {
  double parked_cars = 1.0;
  double buildings = 1.0;
  double alleys = 1.0;
  double roundabouts = 1.0;  // curved wall arcs along streets and at corners
};

struct WorldConfig {
  int legs = 5;             // straight street legs, joined by 90 degree turns
  double leg_min = 22.0;    // meters
  double leg_max = 32.0;
  double corner_radius = 5.0;
  double corner_margin = 8.0;  // obstacle-free stretch at each leg end
  int max_movers = 3;
  double build_clearance = 2.0;  // objects closer than this to the route are dropped
};

// Procedural street world: a staircase route of axis-aligned legs lined with
// parked cars, facades (optionally with alley gaps) and curved walls.
// Deterministic for a fixed (seed, mix, config).
World generate_world(std::uint64_t seed, const SceneMix& mix,
                     const WorldConfig& config = {});

}  // namespace gridwise::worldsim

#endif  // GRIDWISE_WORLDSIM_GENERATOR_H_
