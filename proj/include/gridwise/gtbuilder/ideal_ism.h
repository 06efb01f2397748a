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

#ifndef GRIDWISE_GTBUILDER_IDEAL_ISM_H_
#define GRIDWISE_GTBUILDER_IDEAL_ISM_H_

#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/sensorsim/scan.h"

namespace gridwise::gtbuilder {

struct IdealIsmParams {
  double l_free = -0.41;
  double l_occ = 1.73;
  double max_range = 20.0;
  // Ray cells whose centers lie within this distance (meters) of the hit get
  // no free evidence. Zero leaves every cell short of the endpoint free.
  double free_margin = 0.0;

  void validate() const;
};

// Settings used for ground-truth maps: a margin of 1.5 cells keeps thin
// obstacles from being eroded by grazing rays once grids are rotated into
// the map frame.
IdealIsmParams ground_truth_ism(double resolution);

// Smallest even side whose centered grid holds a disc of `max_range`.
int single_shot_side(double max_range, double resolution);

// Vehicle-centered log-odds grid for one LiDAR scan. The sensor sits in cell
// (side/2, side/2). Cells strictly between the sensor cell and the endpoint
// cell get l_free, the endpoint cell gets l_occ. Endpoints outside the grid
// contribute free evidence only for the in-grid part of the ray.
gridcore::OccupancyGrid single_shot_grid(const sensorsim::Scan& scan,
                                         const IdealIsmParams& params, int side,
                                         double resolution);

}  // namespace gridwise::gtbuilder

#endif  // GRIDWISE_GTBUILDER_IDEAL_ISM_H_
