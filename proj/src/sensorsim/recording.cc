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

#include "gridwise/sensorsim/recording.h"

#include "gridwise/common/parallel.h"
#include "gridwise/common/random.h"

namespace gridwise::sensorsim {

RecordOptions RecordOptions::noise_free(std::uint64_t seed) {
  RecordOptions o;
  o.seed = seed;
  o.lidar.range_sigma = 0.0;
  o.radar.range_sigma = 0.0;
  o.radar.azimuth_sigma = 0.0;
  o.radar.velocity_sigma = 0.0;
  o.radar.ghost_rate = 0.0;
  return o;
}

nlohmann::json RecordOptions::params_json(SensorKind kind) const {
  nlohmann::json j;
  if (kind == SensorKind::kLidar) {
    j = {{"n_beams", lidar.n_beams},
         {"max_range", lidar.max_range},
         {"range_sigma", lidar.range_sigma}};
  } else {
    j = {{"budget", radar.budget},
         {"n_rays", radar.n_rays},
         {"max_range", radar.max_range},
         {"range_sigma", radar.range_sigma},
         {"azimuth_sigma", radar.azimuth_sigma},
         {"velocity_sigma", radar.velocity_sigma},
         {"base_detection_p", radar.base_detection_p},
         {"ghost_rate", radar.ghost_rate},
         {"ghost_offset_min", radar.ghost_offset_min},
         {"ghost_offset_max", radar.ghost_offset_max}};
  }
  j["seed"] = seed;
  return j;
}

std::vector<Scan> record_scans(const worldsim::World& world,
                               const worldsim::Trajectory& trajectory, SensorKind kind,
                               const RecordOptions& options) {
  std::vector<Scan> scans(trajectory.size());
  parallel_for(trajectory.size(), [&](std::size_t i) {
    Rng rng = make_stream(options.seed, i);
    const worldsim::TimedPose& p = trajectory.poses[i];
    scans[i] = kind == SensorKind::kLidar
                   ? simulate_lidar(world, p.pose, p.t, options.lidar, rng)
                   : simulate_radar(world, p.pose, p.t, options.radar, rng);
  });
  return scans;
}

}  // namespace gridwise::sensorsim
