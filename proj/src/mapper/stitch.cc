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

#include "gridwise/mapper/stitch.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/parallel.h"

namespace gridwise::mapper {
namespace {

constexpr double kTimestampTolerance = 1e-9;
// Frames predicted ahead of the fold; bounds the patches held in memory.
constexpr std::size_t kFoldBlock = 64;

}  // namespace

gridcore::OccupancyGrid stitch_patches(const std::vector<gridcore::OccupancyGrid>& patches,
                                       const std::vector<gridcore::Pose2D>& poses,
                                       const gtbuilder::MapSpec& spec) {
  if (patches.size() != poses.size()) {
    fail(ErrorCode::kLengthMismatch, std::to_string(patches.size()) + " patches vs " +
                                         std::to_string(poses.size()) + " poses");
  }
  gridcore::OccupancyGrid map = spec.make_grid();
  for (std::size_t i = 0; i < patches.size(); ++i) gridcore::fuse_grid(map, patches[i], poses[i]);
  return map;
}

gridcore::OccupancyGrid stitch(const PatchPredictor& predictor,
                               const std::vector<sensorsim::Scan>& scans,
                               const worldsim::Trajectory& trajectory,
                               const gtbuilder::MapSpec& spec) {
  if (scans.size() != trajectory.size()) {
    fail(ErrorCode::kLengthMismatch, std::to_string(scans.size()) + " scans vs " +
                                         std::to_string(trajectory.size()) + " poses");
  }
  for (std::size_t i = 0; i < scans.size(); ++i) {
    if (std::abs(scans[i].timestamp - trajectory.poses[i].t) > kTimestampTolerance) {
      fail(ErrorCode::kLengthMismatch,
           "scan " + std::to_string(i) + " timestamp does not match its pose");
    }
  }
  gridcore::OccupancyGrid map = spec.make_grid();
  std::vector<std::optional<gridcore::OccupancyGrid>> block(kFoldBlock);
  for (std::size_t start = 0; start < scans.size(); start += kFoldBlock) {
    const std::size_t count = std::min(kFoldBlock, scans.size() - start);
    parallel_for(count, [&](std::size_t i) { block[i] = predictor.predict(scans[start + i]); });
    for (std::size_t i = 0; i < count; ++i) {
      gridcore::fuse_grid(map, *block[i], trajectory.poses[start + i].pose);
    }
  }
  return map;
}

}  // namespace gridwise::mapper
