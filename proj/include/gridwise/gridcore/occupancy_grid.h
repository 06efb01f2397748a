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

#ifndef GRIDWISE_GRIDCORE_OCCUPANCY_GRID_H_
#define GRIDWISE_GRIDCORE_OCCUPANCY_GRID_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "gridwise/gridcore/pose2d.h"

namespace gridwise::gridcore {

struct CellIndex {
  int row = 0;
  int col = 0;
  auto operator<=>(const CellIndex&) const = default;
};

// Dense 2D grid of log-odds values. Cell (row, col) covers
//   x in [origin.x + col * resolution, origin.x + (col + 1) * resolution)
//   y in [origin.y + row * resolution, origin.y + (row + 1) * resolution)
// so rows grow along +y and columns along +x. A value of 0 is "unknown".
class OccupancyGrid {
 public:
  OccupancyGrid(int width, int height, double resolution,
                const Eigen::Vector2d& origin);

  // Square grid whose frame origin sits at the grid center; used for
  // vehicle-centered patches.
  static OccupancyGrid centered(int side, double resolution);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const Eigen::Vector2d& origin() const { return origin_; }
  std::size_t size() const { return cells_.size(); }

  bool contains(const CellIndex& cell) const {
    return cell.row >= 0 && cell.row < height_ && cell.col >= 0 && cell.col < width_;
  }
  std::size_t flat_index(const CellIndex& cell) const {
    return static_cast<std::size_t>(cell.row) * width_ + cell.col;
  }

  double& at(const CellIndex& cell) { return cells_[flat_index(cell)]; }
  double at(const CellIndex& cell) const { return cells_[flat_index(cell)]; }
  double& at(int row, int col) { return at(CellIndex{row, col}); }
  double at(int row, int col) const { return at(CellIndex{row, col}); }

  std::span<double> cells() { return cells_; }
  std::span<const double> cells() const { return cells_; }

  // Cell containing `point` (which may lie outside the grid).
  CellIndex cell_of(const Eigen::Vector2d& point) const;
  Eigen::Vector2d cell_center(const CellIndex& cell) const;

  bool same_geometry(const OccupancyGrid& other, double tolerance = 1e-9) const;

 private:
  int width_;
  int height_;
  double resolution_;
  Eigen::Vector2d origin_;
  std::vector<double> cells_;
};

// Fuses `source` (expressed in its own local frame) into `target` after
// transforming it by `pose`. Each target cell whose center falls inside the
// transformed source takes the nearest source cell (by center) and adds its
// log-odds with fuse_cell. Returns the number of source cells whose centers
// fall outside the target.
std::size_t fuse_grid(OccupancyGrid& target, const OccupancyGrid& source,
                      const Pose2D& pose);

// Cuts a side x side patch centered on `pose` and aligned with its heading,
// at the map's resolution. Cells outside the map read as unknown.
OccupancyGrid extract_patch(const OccupancyGrid& map, const Pose2D& pose,
                            int side_cells);

enum class CellClass : std::uint8_t { kFree = 0, kUnknown = 1, kOccupied = 2 };

inline CellClass classify(double log_odds, double tau) {
  if (log_odds < -tau) return CellClass::kFree;
  if (log_odds > tau) return CellClass::kOccupied;
  return CellClass::kUnknown;
}

// Per-cell class image; |l| <= tau counts as unknown.
std::vector<CellClass> trinarize(const OccupancyGrid& grid, double tau);

}  // namespace gridwise::gridcore

#endif  // GRIDWISE_GRIDCORE_OCCUPANCY_GRID_H_
