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

#ifndef GRIDWISE_GRIDCORE_GRID_IO_H_
#define GRIDWISE_GRIDCORE_GRID_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "gridwise/gridcore/occupancy_grid.h"

namespace gridwise::gridcore {

// Binary grid file: "OGRD", u32 width, u32 height, f64 resolution,
// f64 origin_x, f64 origin_y, then width*height row-major f32 log-odds.
// All fields little-endian.
void save_grid(const OccupancyGrid& grid, const std::filesystem::path& path);
OccupancyGrid load_grid(const std::filesystem::path& path);

// round(p * 255) with halves rounded up.
std::uint8_t probability_to_byte(double p);

// 8-bit image of occupancy probability, [0,1] -> [black, white]. Image row 0
// is the north edge (largest grid row).
std::vector<std::uint8_t> grid_to_image(const OccupancyGrid& grid);

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& pixels);
void write_png(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& pixels);

void export_pgm(const OccupancyGrid& grid, const std::filesystem::path& path);
void export_png(const OccupancyGrid& grid, const std::filesystem::path& path);

}  // namespace gridwise::gridcore

#endif  // GRIDWISE_GRIDCORE_GRID_IO_H_
