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

#ifndef GRIDWISE_WORLDSIM_TRAJECTORY_H_
#define GRIDWISE_WORLDSIM_TRAJECTORY_H_

#include <cstdint>
#include <vector>

#include "gridwise/gridcore/pose2d.h"
#include "gridwise/worldsim/world.h"

namespace gridwise::worldsim {

struct TimedPose {
  double t = 0.0;
  gridcore::Pose2D pose;
};

// Per-step dead-reckoning noise (standard deviations).
struct OdometryNoise {
  double translation_sigma = 0.0;  // meters
  double rotation_sigma = 0.0;     // radians
};

struct Trajectory {
  std::vector<TimedPose> poses;  // strictly increasing timestamps
  OdometryNoise noise;

  std::size_t size() const { return poses.size(); }
};

struct TrajectoryConfig {
  double speed = 5.0;              // m/s, sets timestamps
  double max_lateral_offset = 0.5; // meters of seeded weave around the centerline
  double min_clearance = 1.5;      // meters to the nearest static segment
};

// Drives the world's route at arc-length spacing `step` (in (0.1, 2] m),
// weaving laterally by a seeded sinusoid. Throws kNoPath when the route is
// missing or any pose would violate the clearance.
Trajectory generate_trajectory(const World& world, std::uint64_t seed, double step,
                               const TrajectoryConfig& config = {});

// Odometry estimate obtained by integrating noisy relative motions between
// consecutive ground-truth poses. Identity when the noise is zero.
Trajectory apply_odometry_noise(const Trajectory& truth, const OdometryNoise& noise,
                                std::uint64_t seed);

}  // namespace gridwise::worldsim

#endif  // GRIDWISE_WORLDSIM_TRAJECTORY_H_
