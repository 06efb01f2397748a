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

#include "gridwise/sensorsim/lidar.h"

#include <numbers>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/worldsim/raycast.h"

namespace gridwise::sensorsim {

std::string_view sensor_kind_name(SensorKind kind) {
  return kind == SensorKind::kLidar ? "lidar" : "radar";
}

SensorKind sensor_kind_from_name(std::string_view name) {
  if (name == "lidar") return SensorKind::kLidar;
  if (name == "radar") return SensorKind::kRadar;
  fail(ErrorCode::kInvalidArgument, "unknown sensor kind '" + std::string(name) + "'");
}

Scan simulate_lidar(const worldsim::World& world, const gridcore::Pose2D& pose,
                    double time, const LidarParams& params, Rng& rng) {
  if (params.n_beams < 8) fail(ErrorCode::kInvalidArgument, "LiDAR needs at least 8 beams");
  Scan scan{SensorKind::kLidar, time, pose, {}};
  const Eigen::Vector2d origin = pose.translation();
  for (int k = 0; k < params.n_beams; ++k) {
    const double azimuth =
        gridcore::normalize_angle(2.0 * std::numbers::pi * k / params.n_beams);
    const auto hit = worldsim::raycast(world, origin, pose.heading + azimuth,
                                       params.max_range, time);
    if (!hit) continue;
    const double range = hit->range + gaussian(rng, params.range_sigma);
    if (range <= 0.0) continue;
    scan.detections.push_back(Detection{range, azimuth, 0.0, 1.0});
  }
  return scan;
}

}  // namespace gridwise::sensorsim
