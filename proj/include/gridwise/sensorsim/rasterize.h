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

#ifndef GRIDWISE_SENSORSIM_RASTERIZE_H_
#define GRIDWISE_SENSORSIM_RASTERIZE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/sensorsim/scan.h"

namespace gridwise::sensorsim {

struct Pixel {
  int row = 0;
  int col = 0;
  bool operator==(const Pixel&) const = default;
};

// Vehicle-centered image layout. The vehicle sits at the image center with
// its forward axis (+x) pointing up and its left axis (+y) pointing to the
// left, so
//   row = floor((window/2 - x) / resolution)
//   col = floor((window/2 - y) / resolution)
struct ImageGeometry {
  int side = 64;
  double window = 15.0;  // meters

  double resolution() const { return window / side; }
  double half() const { return 0.5 * window; }
  std::optional<Pixel> pixel_of(const Eigen::Vector2d& vehicle_point) const;
  Eigen::Vector2d pixel_center(const Pixel& pixel) const;
};

// Desk-scale default and the full-size preset (both ~0.234 m per pixel).
inline constexpr ImageGeometry kDeskImage{64, 15.0};
inline constexpr ImageGeometry kFullImage{128, 30.0};

struct InputImage {
  int side = 0;
  double resolution = 0.0;
  std::vector<std::uint8_t> pixels;  // row-major, 1 where a detection lands
};

InputImage rasterize(const Scan& scan, int side, double window);

// Conversions between a vehicle-centered patch grid (OccupancyGrid::centered,
// rows along +y) and the image layout above. Both share side and resolution.
std::vector<double> patch_to_image(const gridcore::OccupancyGrid& patch);
gridcore::OccupancyGrid image_to_patch(std::span<const float> image, int side,
                                       double resolution);

}  // namespace gridwise::sensorsim

#endif  // GRIDWISE_SENSORSIM_RASTERIZE_H_
