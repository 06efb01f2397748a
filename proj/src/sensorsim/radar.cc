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

#include "gridwise/sensorsim/radar.h"

#include <algorithm>
#include <numeric>

#include "gridwise/common/error.h"
#include "gridwise/worldsim/raycast.h"

namespace gridwise::sensorsim {
namespace {

struct TrueReturn {
  double azimuth;
  worldsim::RayHit hit;
};

}  // namespace

Scan simulate_radar(const worldsim::World& world, const gridcore::Pose2D& pose,
                    double time, const RadarParams& params, Rng& rng) {
  if (params.budget < 0 || params.budget > kRadarDetectionBudget) {
    fail(ErrorCode::kInvalidArgument, "radar budget must lie in [0, 64]");
  }
  if (params.n_rays < 1) fail(ErrorCode::kInvalidArgument, "radar needs at least one ray");

  const Eigen::Vector2d origin = pose.translation();
  std::vector<TrueReturn> returns;
  for (int k = 0; k < params.n_rays; ++k) {
    const double azimuth =
        gridcore::normalize_angle(2.0 * std::numbers::pi * k / params.n_rays);
    if (auto hit = worldsim::raycast(world, origin, pose.heading + azimuth,
                                     params.max_range, time)) {
      returns.push_back(TrueReturn{azimuth, *hit});
    }
  }

  std::vector<Detection> detections;
  for (const TrueReturn& r : returns) {
    const double p = params.base_detection_p * r.hit.reflectivity;
    if (uniform(rng, 0.0, 1.0) >= p) continue;
    Detection d;
    d.range = r.hit.range + gaussian(rng, params.range_sigma);
    d.azimuth = gridcore::normalize_angle(r.azimuth + gaussian(rng, params.azimuth_sigma));
    d.radial_velocity = r.hit.radial_velocity + gaussian(rng, params.velocity_sigma);
    d.amplitude = std::clamp(r.hit.reflectivity * uniform(rng, 0.7, 1.0), 0.0, 1.0);
    if (d.range > 0.0) detections.push_back(d);
  }

  // Multipath ghosts sit behind a true return on the same azimuth.
  const int ghosts = returns.empty() ? 0 : poisson(rng, params.ghost_rate);
  for (int g = 0; g < ghosts; ++g) {
    const TrueReturn& r = returns[std::uniform_int_distribution<std::size_t>(
        0, returns.size() - 1)(rng)];
    Detection d;
    d.range = r.hit.range + uniform(rng, params.ghost_offset_min, params.ghost_offset_max);
    d.azimuth = gridcore::normalize_angle(r.azimuth + gaussian(rng, params.azimuth_sigma));
    d.radial_velocity = r.hit.radial_velocity + gaussian(rng, params.velocity_sigma);
    d.amplitude = std::clamp(r.hit.reflectivity * uniform(rng, 0.2, 0.6), 0.0, 1.0);
    detections.push_back(d);
  }

  if (detections.size() > static_cast<std::size_t>(params.budget)) {
    std::vector<std::size_t> order(detections.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(params.budget);
    std::sort(order.begin(), order.end());
    std::vector<Detection> kept;
    kept.reserve(order.size());
    for (std::size_t i : order) kept.push_back(detections[i]);
    detections = std::move(kept);
  }
  return Scan{SensorKind::kRadar, time, pose, std::move(detections)};
}

}  // namespace gridwise::sensorsim
