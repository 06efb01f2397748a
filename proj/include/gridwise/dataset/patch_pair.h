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

#ifndef GRIDWISE_DATASET_PATCH_PAIR_H_
#define GRIDWISE_DATASET_PATCH_PAIR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/gridcore/pose2d.h"
#include "gridwise/sensorsim/rasterize.h"
#include "gridwise/sensorsim/scan.h"
#include "gridwise/worldsim/trajectory.h"

namespace gridwise::dataset {

using gridcore::CellClass;

struct ClassCounts {
  std::int64_t free = 0;
  std::int64_t unknown = 0;
  std::int64_t occupied = 0;
  std::int64_t total = 0;

  std::int64_t of(CellClass c) const {
    return c == CellClass::kFree ? free : c == CellClass::kOccupied ? occupied : unknown;
  }
  bool operator==(const ClassCounts&) const = default;
};

// Label value above which a pixel is occupied (below the negation: free) for
// a log-odds threshold tau. Labels are tanh(l/2), so this is tanh(tau/2)
// rounded to the stored precision.
float label_threshold(double tau);

CellClass classify_label(float label, float threshold);

// Images are row-major side x side in the vehicle image layout (row 0 ahead).
struct PatchPair {
  int side = 0;
  std::vector<float> input;  // {-1, +1}
  std::vector<float> label;  // [-1, 1]
  std::vector<CellClass> classes;
  ClassCounts counts;
  gridcore::Pose2D pose;
  std::uint64_t world_seed = 0;
  std::uint32_t frame = 0;
  sensorsim::SensorKind sensor = sensorsim::SensorKind::kLidar;
};

std::vector<float> normalize_input(const sensorsim::InputImage& image);

// Classes and counts of a label image at the given threshold.
void classify_pair(PatchPair& pair, float threshold);

struct PairOptions {
  sensorsim::ImageGeometry geometry = sensorsim::kDeskImage;
  double tau = 1.0986122886681098;  // ln 3
  double velocity_threshold = 0.4;
  std::uint64_t world_seed = 0;
};

// Pairs scan k (rasterized after motion filtering) with label patch k, a
// log-odds patch of the same side cut at trajectory pose k.
std::vector<PatchPair> make_pairs(const std::vector<sensorsim::Scan>& scans,
                                  const std::vector<gridcore::OccupancyGrid>& labels,
                                  const worldsim::Trajectory& trajectory,
                                  const PairOptions& options);

struct MapPairs {
  std::vector<PatchPair> pairs;
  std::size_t skipped = 0;  // frames whose patch would leave the map
};

// Cuts a label patch from a ground-truth map at every trajectory pose and
// pairs it with that frame's scan. `frame` holds the trajectory index.
MapPairs pairs_from_map(const std::vector<sensorsim::Scan>& scans,
                        const worldsim::Trajectory& trajectory,
                        const gridcore::OccupancyGrid& map, const PairOptions& options);

}  // namespace gridwise::dataset

#endif  // GRIDWISE_DATASET_PATCH_PAIR_H_
