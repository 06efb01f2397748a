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

#ifndef GRIDWISE_SENSORSIM_LIDAR_H_
#define GRIDWISE_SENSORSIM_LIDAR_H_

#include "gridwise/common/random.h"
#include "gridwise/sensorsim/scan.h"
#include "gridwise/worldsim/world.h"

namespace gridwise::sensorsim {

struct LidarParams {
  int n_beams = 720;
  double max_range = 20.0;     // meters
  double range_sigma = 0.02;   // meters
};

// One beam per evenly spaced azimuth 2*pi*k/n_beams; each beam keeps only its
// nearest return, so the scan is already reduced to one point per angle.
Scan simulate_lidar(const worldsim::World& world, const gridcore::Pose2D& pose,
                    double time, const LidarParams& params, Rng& rng);

}  // namespace gridwise::sensorsim

#endif  // GRIDWISE_SENSORSIM_LIDAR_H_
