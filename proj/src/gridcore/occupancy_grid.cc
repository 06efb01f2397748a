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

#include "gridwise/gridcore/occupancy_grid.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/gridcore/log_odds.h"

namespace gridwise::gridcore {

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             const Eigen::Vector2d& origin)
    : width_(width), height_(height), resolution_(resolution), origin_(origin) {
  if (width <= 0 || height <= 0 || !(resolution > 0.0)) {
    fail(ErrorCode::kInvalidArgument,
         "grid needs positive size and resolution, got " + std::to_string(width) +
             "x" + std::to_string(height) + " @ " + std::to_string(resolution));
  }
  cells_.assign(static_cast<std::size_t>(width) * height, 0.0);
}

OccupancyGrid OccupancyGrid::centered(int side, double resolution) {
  const double half = 0.5 * side * resolution;
  return OccupancyGrid(side, side, resolution, Eigen::Vector2d(-half, -half));
}

CellIndex OccupancyGrid::cell_of(const Eigen::Vector2d& point) const {
  return CellIndex{
      static_cast<int>(std::floor((point.y() - origin_.y()) / resolution_)),
      static_cast<int>(std::floor((point.x() - origin_.x()) / resolution_))};
}

Eigen::Vector2d OccupancyGrid::cell_center(const CellIndex& cell) const {
  return {origin_.x() + (cell.col + 0.5) * resolution_,
          origin_.y() + (cell.row + 0.5) * resolution_};
}

bool OccupancyGrid::same_geometry(const OccupancyGrid& other,
                                  double tolerance) const {
  return width_ == other.width_ && height_ == other.height_ &&
         std::abs(resolution_ - other.resolution_) <= tolerance &&
         (origin_ - other.origin_).cwiseAbs().maxCoeff() <= tolerance;
}

std::size_t fuse_grid(OccupancyGrid& target, const OccupancyGrid& source,
                      const Pose2D& pose) {
  if (std::abs(target.resolution() - source.resolution()) > 1e-9) {
    fail(ErrorCode::kResolutionMismatch,
         "target " + std::to_string(target.resolution()) + " vs source " +
             std::to_string(source.resolution()));
  }

  std::size_t skipped = 0;
  for (int row = 0; row < source.height(); ++row) {
    for (int col = 0; col < source.width(); ++col) {
      const Eigen::Vector2d world = pose.to_world(source.cell_center({row, col}));
      if (!target.contains(target.cell_of(world))) ++skipped;
    }
  }

  // Bounding box of the transformed source footprint, in target cells.
  const double res = source.resolution();
  const Eigen::Vector2d lo = source.origin();
  const Eigen::Vector2d hi =
      lo + Eigen::Vector2d(source.width() * res, source.height() * res);
  double min_x = std::numeric_limits<double>::max();
  double min_y = min_x;
  double max_x = std::numeric_limits<double>::lowest();
  double max_y = max_x;
  for (const Eigen::Vector2d& corner :
       {lo, Eigen::Vector2d(hi.x(), lo.y()), hi, Eigen::Vector2d(lo.x(), hi.y())}) {
    const Eigen::Vector2d w = pose.to_world(corner);
    min_x = std::min(min_x, w.x());
    min_y = std::min(min_y, w.y());
    max_x = std::max(max_x, w.x());
    max_y = std::max(max_y, w.y());
  }
  const CellIndex first = target.cell_of({min_x, min_y});
  const CellIndex last = target.cell_of({max_x, max_y});
  const int row_begin = std::max(0, first.row);
  const int row_end = std::min(target.height() - 1, last.row);
  const int col_begin = std::max(0, first.col);
  const int col_end = std::min(target.width() - 1, last.col);

  for (int row = row_begin; row <= row_end; ++row) {
    for (int col = col_begin; col <= col_end; ++col) {
      const Eigen::Vector2d local = pose.to_local(target.cell_center({row, col}));
      const CellIndex src = source.cell_of(local);
      if (!source.contains(src)) continue;
      double& cell = target.at(row, col);
      cell = fuse_cell(cell, source.at(src));
    }
  }
  return skipped;
}

OccupancyGrid extract_patch(const OccupancyGrid& map, const Pose2D& pose,
                            int side_cells) {
  if (side_cells <= 0) {
    fail(ErrorCode::kInvalidArgument, "patch side must be positive");
  }
  OccupancyGrid patch = OccupancyGrid::centered(side_cells, map.resolution());
  bool any_inside = false;
  for (int row = 0; row < side_cells; ++row) {
    for (int col = 0; col < side_cells; ++col) {
      const CellIndex src = map.cell_of(pose.to_world(patch.cell_center({row, col})));
      if (!map.contains(src)) continue;
      any_inside = true;
      patch.at(row, col) = map.at(src);
    }
  }
  if (!any_inside) {
    fail(ErrorCode::kOutOfBounds, "patch at (" + std::to_string(pose.x) + ", " +
                                      std::to_string(pose.y) +
                                      ") does not intersect the map");
  }
  return patch;
}

std::vector<CellClass> trinarize(const OccupancyGrid& grid, double tau) {
  if (!(tau > 0.0)) fail(ErrorCode::kInvalidArgument, "tau must be positive");
  std::vector<CellClass> classes;
  classes.reserve(grid.size());
  for (double l : grid.cells()) classes.push_back(classify(l, tau));
  return classes;
}

}  // namespace gridwise::gridcore
