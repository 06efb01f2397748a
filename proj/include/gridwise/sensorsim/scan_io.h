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

#ifndef GRIDWISE_SENSORSIM_SCAN_IO_H_
#define GRIDWISE_SENSORSIM_SCAN_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "gridwise/sensorsim/scan.h"
#include "gridwise/worldsim/trajectory.h"
#include "gridwise/worldsim/world.h"

namespace gridwise::sensorsim {

// One frame on disk: `<stem>.csv` with rows t,range,azimuth,radial_velocity,
// amplitude (plus a header line) and a `<stem>.json` sidecar holding the
// pose, timestamp and sensor kind.
void save_scan(const Scan& scan, const std::filesystem::path& csv_path);
Scan load_scan(const std::filesystem::path& csv_path);

// A simulated drive: every frame of one sensor along one trajectory in one
// world. Directory layout: scans.json, trajectory.csv, frame_NNNNNN.{csv,json}.
struct ScanSet {
  SensorKind kind = SensorKind::kLidar;
  std::uint64_t world_seed = 0;
  std::uint64_t trajectory_seed = 0;
  worldsim::Bounds bounds;
  worldsim::Trajectory trajectory;
  std::vector<Scan> scans;
  nlohmann::json sensor_params = nlohmann::json::object();
};

void save_scan_set(const ScanSet& set, const std::filesystem::path& dir);
ScanSet load_scan_set(const std::filesystem::path& dir);

std::string frame_stem(std::size_t index);

}  // namespace gridwise::sensorsim

#endif  // GRIDWISE_SENSORSIM_SCAN_IO_H_
