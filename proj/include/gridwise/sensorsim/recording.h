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

#ifndef GRIDWISE_SENSORSIM_RECORDING_H_
#define GRIDWISE_SENSORSIM_RECORDING_H_

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "gridwise/sensorsim/lidar.h"
#include "gridwise/sensorsim/radar.h"
#include "gridwise/sensorsim/scan.h"
#include "gridwise/worldsim/trajectory.h"
#include "gridwise/worldsim/world.h"

namespace gridwise::sensorsim {

struct RecordOptions {
  LidarParams lidar;
  RadarParams radar;
  std::uint64_t seed = 0;  // frame i draws from stream (seed, i)

  // Zero measurement noise; radar also loses its ghosts.
  static RecordOptions noise_free(std::uint64_t seed);
  nlohmann::json params_json(SensorKind kind) const;
};

// One scan per trajectory pose, simulated in parallel. The result does not
// depend on the worker count.
std::vector<Scan> record_scans(const worldsim::World& world,
                               const worldsim::Trajectory& trajectory, SensorKind kind,
                               const RecordOptions& options);

}  // namespace gridwise::sensorsim

#endif  // GRIDWISE_SENSORSIM_RECORDING_H_
