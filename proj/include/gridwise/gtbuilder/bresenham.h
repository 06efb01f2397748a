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

#ifndef GRIDWISE_GTBUILDER_BRESENHAM_H_
#define GRIDWISE_GTBUILDER_BRESENHAM_H_

#include <vector>

#include "gridwise/gridcore/occupancy_grid.h"

namespace gridwise::gtbuilder {

// 8-connected integer line from `from` to `to`, both ends included. Along the
// major axis each step advances by one; the minor offset is the ideal line's
// value rounded half away from the start.
std::vector<gridcore::CellIndex> bresenham_cells(const gridcore::CellIndex& from,
                                                 const gridcore::CellIndex& to);

}  // namespace gridwise::gtbuilder

#endif  // GRIDWISE_GTBUILDER_BRESENHAM_H_
