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

#include "gridwise/sensorsim/rasterize.h"

#include <cmath>
#include <string>

#include "gridwise/common/error.h"

namespace gridwise::sensorsim {

std::optional<Pixel> ImageGeometry::pixel_of(const Eigen::Vector2d& p) const {
  const double res = resolution();
  const double row = std::floor((half() - p.x()) / res);
  const double col = std::floor((half() - p.y()) / res);
  if (row < 0 || row >= side || col < 0 || col >= side) return std::nullopt;
  return Pixel{static_cast<int>(row), static_cast<int>(col)};
}

Eigen::Vector2d ImageGeometry::pixel_center(const Pixel& pixel) const {
  const double res = resolution();
  return {half() - (pixel.row + 0.5) * res, half() - (pixel.col + 0.5) * res};
}

InputImage rasterize(const Scan& scan, int side, double window) {
  if (side <= 0 || !(window > 0.0)) {
    fail(ErrorCode::kInvalidArgument, "rasterize needs positive side and window");
  }
  const ImageGeometry geometry{side, window};
  InputImage image{side, geometry.resolution(),
                   std::vector<std::uint8_t>(static_cast<std::size_t>(side) * side, 0)};
  for (const Detection& d : scan.detections) {
    const Eigen::Vector2d p(d.range * std::cos(d.azimuth), d.range * std::sin(d.azimuth));
    if (auto px = geometry.pixel_of(p)) {
      image.pixels[static_cast<std::size_t>(px->row) * side + px->col] = 1;
    }
  }
  return image;
}

std::vector<double> patch_to_image(const gridcore::OccupancyGrid& patch) {
  if (patch.width() != patch.height()) {
    fail(ErrorCode::kShapeMismatch, "patch must be square");
  }
  const int side = patch.width();
  std::vector<double> image(patch.size());
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      image[static_cast<std::size_t>(row) * side + col] =
          patch.at(side - 1 - col, side - 1 - row);
    }
  }
  return image;
}

gridcore::OccupancyGrid image_to_patch(std::span<const float> image, int side,
                                       double resolution) {
  if (image.size() != static_cast<std::size_t>(side) * side) {
    fail(ErrorCode::kShapeMismatch, "image holds " + std::to_string(image.size()) +
                                        " values, expected side^2 = " +
                                        std::to_string(side * side));
  }
  gridcore::OccupancyGrid patch = gridcore::OccupancyGrid::centered(side, resolution);
  for (int row = 0; row < side; ++row) {
    for (int col = 0; col < side; ++col) {
      patch.at(side - 1 - col, side - 1 - row) =
          image[static_cast<std::size_t>(row) * side + col];
    }
  }
  return patch;
}

}  // namespace gridwise::sensorsim
