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

#include "gridwise/gtbuilder/ground_truth.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/parallel.h"

namespace gridwise::gtbuilder {
namespace {

constexpr std::size_t kFoldBlock = 32;
constexpr double kTimestampTolerance = 1e-9;

}  // namespace

gridcore::OccupancyGrid MapSpec::make_grid() const {
  if (!(resolution > 0.0)) fail(ErrorCode::kInvalidArgument, "map resolution must be positive");
  const Eigen::Vector2d extent = bounds.max - bounds.min;
  if (!(extent.x() > 0.0 && extent.y() > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "map bounds are empty");
  }
  const int width = static_cast<int>(std::ceil(extent.x() / resolution));
  const int height = static_cast<int>(std::ceil(extent.y() / resolution));
  return gridcore::OccupancyGrid(width, height, resolution, bounds.min);
}

gridcore::OccupancyGrid accumulate_map(const std::vector<sensorsim::Scan>& scans,
                                       const worldsim::Trajectory& trajectory,
                                       const IdealIsmParams& params, const MapSpec& spec) {
  if (scans.size() != trajectory.size()) {
    fail(ErrorCode::kLengthMismatch, std::to_string(scans.size()) + " scans vs " +
                                         std::to_string(trajectory.size()) + " poses");
  }
  for (std::size_t i = 0; i < scans.size(); ++i) {
    if (std::abs(scans[i].timestamp - trajectory.poses[i].t) > kTimestampTolerance) {
      fail(ErrorCode::kLengthMismatch, "scan " + std::to_string(i) + " timestamp " +
                                           std::to_string(scans[i].timestamp) +
                                           " does not match its pose");
    }
  }
  params.validate();

  gridcore::OccupancyGrid map = spec.make_grid();
  const int side = single_shot_side(params.max_range, spec.resolution);
  std::vector<std::optional<gridcore::OccupancyGrid>> block(kFoldBlock);
  for (std::size_t start = 0; start < scans.size(); start += kFoldBlock) {
    const std::size_t count = std::min(kFoldBlock, scans.size() - start);
    parallel_for(count, [&](std::size_t i) {
      block[i] = single_shot_grid(scans[start + i], params, side, spec.resolution);
    });
    for (std::size_t i = 0; i < count; ++i) {
      gridcore::fuse_grid(map, *block[i], trajectory.poses[start + i].pose);
    }
  }
  return map;
}

LabelPatches cut_labels(const gridcore::OccupancyGrid& map,
                        const worldsim::Trajectory& trajectory, int side) {
  LabelPatches out;
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    try {
      out.patches.push_back(gridcore::extract_patch(map, trajectory.poses[i].pose, side));
      out.pose_indices.push_back(i);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kOutOfBounds) throw;
      ++out.skipped;
    }
  }
  return out;
}

}  // namespace gridwise::gtbuilder
