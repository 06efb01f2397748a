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

#include "gridwise/gridcore/grid_io.h"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>

#include "gridwise/common/binary_io.h"
#include "gridwise/common/error.h"
#include "gridwise/gridcore/log_odds.h"

namespace gridwise::gridcore {

namespace bio = binary_io;

void save_grid(const OccupancyGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path.string());
  bio::write_magic(out, "OGRD");
  bio::write_le<std::uint32_t>(out, grid.width());
  bio::write_le<std::uint32_t>(out, grid.height());
  bio::write_le<double>(out, grid.resolution());
  bio::write_le<double>(out, grid.origin().x());
  bio::write_le<double>(out, grid.origin().y());
  for (double l : grid.cells()) bio::write_le<float>(out, static_cast<float>(l));
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

OccupancyGrid load_grid(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  if (bio::read_magic(in) != "OGRD") {
    fail(ErrorCode::kIoError, path.string() + " is not a grid file");
  }
  const auto width = bio::read_le<std::uint32_t>(in);
  const auto height = bio::read_le<std::uint32_t>(in);
  const double resolution = bio::read_le<double>(in);
  const double origin_x = bio::read_le<double>(in);
  const double origin_y = bio::read_le<double>(in);
  if (width == 0 || height == 0 || width > (1u << 16) || height > (1u << 16)) {
    fail(ErrorCode::kIoError, "implausible grid size in " + path.string());
  }
  OccupancyGrid grid(static_cast<int>(width), static_cast<int>(height), resolution,
                     {origin_x, origin_y});
  for (double& l : grid.cells()) l = bio::read_le<float>(in);
  return grid;
}

std::uint8_t probability_to_byte(double p) {
  const double scaled = std::floor(p * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

std::vector<std::uint8_t> grid_to_image(const OccupancyGrid& grid) {
  std::vector<std::uint8_t> pixels(grid.size());
  for (int row = 0; row < grid.height(); ++row) {
    const int image_row = grid.height() - 1 - row;
    for (int col = 0; col < grid.width(); ++col) {
      pixels[static_cast<std::size_t>(image_row) * grid.width() + col] =
          probability_to_byte(logit_to_prob(grid.at(row, col)));
    }
  }
  return pixels;
}

void write_pgm(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& pixels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIoError, "cannot open " + path.string());
  out << "P5\n" << width << " " << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

void write_png(const std::filesystem::path& path, int width, int height,
               const std::vector<std::uint8_t>& pixels) {
  std::unique_ptr<FILE, int (*)(FILE*)> file(std::fopen(path.c_str(), "wb"),
                                             &std::fclose);
  if (!file) fail(ErrorCode::kIoError, "cannot open " + path.string());
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::kIoError, "libpng initialisation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    fail(ErrorCode::kIoError, "libpng failed writing " + path.string());
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int row = 0; row < height; ++row) {
    png_write_row(png, const_cast<png_bytep>(pixels.data() +
                                              static_cast<std::size_t>(row) * width));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

void export_pgm(const OccupancyGrid& grid, const std::filesystem::path& path) {
  write_pgm(path, grid.width(), grid.height(), grid_to_image(grid));
}

void export_png(const OccupancyGrid& grid, const std::filesystem::path& path) {
  write_png(path, grid.width(), grid.height(), grid_to_image(grid));
}

}  // namespace gridwise::gridcore
