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

#ifndef GRIDWISE_SENSORSIM_SCAN_H_
#define GRIDWISE_SENSORSIM_SCAN_H_

#include <string_view>
#include <vector>

#include "gridwise/gridcore/pose2d.h"

namespace gridwise::sensorsim {

enum class SensorKind { kLidar, kRadar };

std::string_view sensor_kind_name(SensorKind kind);
SensorKind sensor_kind_from_name(std::string_view name);

// Polar detection in the vehicle frame.
struct Detection {
  double range = 0.0;            // meters, > 0
  double azimuth = 0.0;          // radians, (-pi, pi]
  double radial_velocity = 0.0;  // m/s, positive receding; 0 for LiDAR
  double amplitude = 0.0;        // [0, 1]
};

struct Scan {
  SensorKind kind = SensorKind::kLidar;
  double timestamp = 0.0;
  gridcore::Pose2D pose;  // ground truth at emission
  std::vector<Detection> detections;
};

}  // namespace gridwise::sensorsim

#endif  // GRIDWISE_SENSORSIM_SCAN_H_
