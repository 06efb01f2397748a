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

#include "gridwise/gtbuilder/ideal_ism.h"

#include <cmath>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/gridcore/log_odds.h"
#include "gridwise/gtbuilder/bresenham.h"

namespace gridwise::gtbuilder {

void IdealIsmParams::validate() const {
  if (!(l_free < 0.0 && l_occ > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "ideal ISM needs l_free < 0 < l_occ");
  }
  if (!(max_range > 0.0)) fail(ErrorCode::kInvalidArgument, "max_range must be positive");
  if (!(free_margin >= 0.0)) fail(ErrorCode::kInvalidArgument, "free_margin must be >= 0");
}

IdealIsmParams ground_truth_ism(double resolution) {
  IdealIsmParams params;
  params.free_margin = 1.5 * resolution;
  return params;
}

int single_shot_side(double max_range, double resolution) {
  if (!(resolution > 0.0)) fail(ErrorCode::kInvalidArgument, "resolution must be positive");
  return 2 * (static_cast<int>(std::ceil(max_range / resolution)) + 1);
}

gridcore::OccupancyGrid single_shot_grid(const sensorsim::Scan& scan,
                                         const IdealIsmParams& params, int side,
                                         double resolution) {
  if (scan.kind != sensorsim::SensorKind::kLidar) {
    fail(ErrorCode::kWrongSensor, "ideal ISM expects a lidar scan, got " +
                                      std::string(sensorsim::sensor_kind_name(scan.kind)));
  }
  params.validate();
  if (side <= 0 || side % 2 != 0) {
    fail(ErrorCode::kInvalidArgument, "single-shot side must be even and positive");
  }

  gridcore::OccupancyGrid grid = gridcore::OccupancyGrid::centered(side, resolution);
  const gridcore::CellIndex sensor{side / 2, side / 2};
  for (const sensorsim::Detection& d : scan.detections) {
    if (!(d.range > 0.0) || d.range > params.max_range) continue;
    const Eigen::Vector2d local(d.range * std::cos(d.azimuth), d.range * std::sin(d.azimuth));
    const gridcore::CellIndex end = grid.cell_of(local);
    if (end == sensor) continue;
    const auto ray = bresenham_cells(sensor, end);
    for (std::size_t i = 1; i + 1 < ray.size(); ++i) {
      if (!grid.contains(ray[i])) break;
      if (params.free_margin > 0.0 &&
          grid.cell_center(ray[i]).norm() > d.range - params.free_margin) {
        break;
      }
      double& cell = grid.at(ray[i]);
      cell = gridcore::fuse_cell(cell, params.l_free);
    }
    if (grid.contains(end)) {
      double& cell = grid.at(end);
      cell = gridcore::fuse_cell(cell, params.l_occ);
    }
  }
  return grid;
}

}  // namespace gridwise::gtbuilder
