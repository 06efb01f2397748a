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

#ifndef GRIDWISE_GTBUILDER_GROUND_TRUTH_H_
#define GRIDWISE_GTBUILDER_GROUND_TRUTH_H_

#include <cstddef>
#include <vector>

#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/gtbuilder/ideal_ism.h"
#include "gridwise/sensorsim/scan.h"
#include "gridwise/worldsim/trajectory.h"
#include "gridwise/worldsim/world.h"

namespace gridwise::gtbuilder {

struct MapSpec {
  worldsim::Bounds bounds;
  double resolution = 15.0 / 64;

  gridcore::OccupancyGrid make_grid() const;
};

// Folds the single-shot grid of every scan into a world-anchored map at the
// matching trajectory pose. Scans and poses are paired by index and must
// carry the same timestamps.
gridcore::OccupancyGrid accumulate_map(const std::vector<sensorsim::Scan>& scans,
                                       const worldsim::Trajectory& trajectory,
                                       const IdealIsmParams& params, const MapSpec& spec);

struct LabelPatches {
  std::vector<gridcore::OccupancyGrid> patches;
  std::vector<std::size_t> pose_indices;  // trajectory index of each patch
  std::size_t skipped = 0;
};

LabelPatches cut_labels(const gridcore::OccupancyGrid& map,
                        const worldsim::Trajectory& trajectory, int side);

}  // namespace gridwise::gtbuilder

#endif  // GRIDWISE_GTBUILDER_GROUND_TRUTH_H_
