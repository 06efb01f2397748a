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

#ifndef GRIDWISE_MAPPER_STITCH_H_
#define GRIDWISE_MAPPER_STITCH_H_

#include <vector>

#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/gtbuilder/ground_truth.h"
#include "gridwise/mapper/predictor.h"
#include "gridwise/sensorsim/scan.h"
#include "gridwise/worldsim/trajectory.h"

namespace gridwise::mapper {

// Fuses every frame's predicted patch into a world-anchored map at the
// frame's trajectory pose, in frame order. Scans and poses pair by index and
// must carry the same timestamps (LengthMismatch otherwise).
gridcore::OccupancyGrid stitch(const PatchPredictor& predictor,
                               const std::vector<sensorsim::Scan>& scans,
                               const worldsim::Trajectory& trajectory,
                               const gtbuilder::MapSpec& spec);

// The fold on its own, for patches already at hand.
gridcore::OccupancyGrid stitch_patches(const std::vector<gridcore::OccupancyGrid>& patches,
                                       const std::vector<gridcore::Pose2D>& poses,
                                       const gtbuilder::MapSpec& spec);

}  // namespace gridwise::mapper

#endif  // GRIDWISE_MAPPER_STITCH_H_
