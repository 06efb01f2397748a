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

#include "gridwise/gtbuilder/bresenham.h"

#include <cstdlib>

namespace gridwise::gtbuilder {

std::vector<gridcore::CellIndex> bresenham_cells(const gridcore::CellIndex& from,
                                                 const gridcore::CellIndex& to) {
  const int d_row = to.row - from.row;
  const int d_col = to.col - from.col;
  const bool row_major = std::abs(d_row) > std::abs(d_col);
  const int major = row_major ? std::abs(d_row) : std::abs(d_col);
  const int minor = row_major ? std::abs(d_col) : std::abs(d_row);
  const int major_step = (row_major ? d_row : d_col) < 0 ? -1 : 1;
  const int minor_step = (row_major ? d_col : d_row) < 0 ? -1 : 1;

  std::vector<gridcore::CellIndex> cells;
  cells.reserve(major + 1);
  // offset(t) = floor((2 * minor * t + major) / (2 * major)), tracked through
  // the remainder `error` of that division.
  int offset = 0;
  int error = major;
  for (int t = 0; t <= major; ++t) {
    const int a = t * major_step;
    const int b = offset * minor_step;
    cells.push_back(row_major ? gridcore::CellIndex{from.row + a, from.col + b}
                              : gridcore::CellIndex{from.row + b, from.col + a});
    error += 2 * minor;
    if (error >= 2 * major) {
      ++offset;
      error -= 2 * major;
    }
  }
  return cells;
}

}  // namespace gridwise::gtbuilder
