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

#ifndef GRIDWISE_SENSORSIM_RADAR_H_
#define GRIDWISE_SENSORSIM_RADAR_H_

#include <numbers>

#include "gridwise/common/random.h"
#include "gridwise/sensorsim/scan.h"
#include "gridwise/worldsim/world.h"

namespace gridwise::sensorsim {

inline constexpr int kRadarDetectionBudget = 64;

// A single 360 degree virtual radar.
struct RadarParams {
  int budget = kRadarDetectionBudget;  // detections per frame, <= 64
  int n_rays = 180;                    // candidate azimuths probed per frame
  double max_range = 25.0;
  double range_sigma = 0.3;                                // meters
  double azimuth_sigma = 2.0 * std::numbers::pi / 180.0;  // radians
  double velocity_sigma = 0.1;                             // m/s
  double base_detection_p = 0.35;  // detection probability = base * reflectivity
  double ghost_rate = 1.5;         // Poisson mean of multipath ghosts per frame
  double ghost_offset_min = 2.0;   // ghost range = true range + U(min, max)
  double ghost_offset_max = 8.0;
};

// Sparse, noisy radar frame: true returns are thinned by detection
// probability and perturbed; multipath ghosts are appended behind true
// returns along the same azimuth; the frame is then randomly subsampled to
// the detection budget.
Scan simulate_radar(const worldsim::World& world, const gridcore::Pose2D& pose,
                    double time, const RadarParams& params, Rng& rng);

}  // namespace gridwise::sensorsim

#endif  // GRIDWISE_SENSORSIM_RADAR_H_
