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

#include "gridwise/dataset/patch_pair.h"

#include <cmath>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/gtbuilder/ground_truth.h"
#include "gridwise/sensorsim/motion_filter.h"

namespace gridwise::dataset {

float label_threshold(double tau) {
  if (!(tau > 0.0)) fail(ErrorCode::kInvalidArgument, "tau must be positive");
  return static_cast<float>(std::tanh(0.5 * tau));
}

CellClass classify_label(float label, float threshold) {
  if (label < -threshold) return CellClass::kFree;
  if (label > threshold) return CellClass::kOccupied;
  return CellClass::kUnknown;
}

std::vector<float> normalize_input(const sensorsim::InputImage& image) {
  std::vector<float> out(image.pixels.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = image.pixels[i] ? 1.0f : -1.0f;
  return out;
}

void classify_pair(PatchPair& pair, float threshold) {
  pair.classes.resize(pair.label.size());
  pair.counts = ClassCounts{};
  for (std::size_t i = 0; i < pair.label.size(); ++i) {
    const CellClass c = classify_label(pair.label[i], threshold);
    pair.classes[i] = c;
    if (c == CellClass::kFree) ++pair.counts.free;
    if (c == CellClass::kUnknown) ++pair.counts.unknown;
    if (c == CellClass::kOccupied) ++pair.counts.occupied;
  }
  pair.counts.total = static_cast<std::int64_t>(pair.label.size());
}

std::vector<PatchPair> make_pairs(const std::vector<sensorsim::Scan>& scans,
                                  const std::vector<gridcore::OccupancyGrid>& labels,
                                  const worldsim::Trajectory& trajectory,
                                  const PairOptions& options) {
  if (scans.size() != labels.size() || scans.size() != trajectory.size()) {
    fail(ErrorCode::kLengthMismatch,
         std::to_string(scans.size()) + " scans, " + std::to_string(labels.size()) +
             " labels, " + std::to_string(trajectory.size()) + " poses");
  }
  const int side = options.geometry.side;
  const double resolution = options.geometry.resolution();
  const float threshold = label_threshold(options.tau);

  std::vector<PatchPair> pairs;
  pairs.reserve(scans.size());
  for (std::size_t k = 0; k < scans.size(); ++k) {
    const gridcore::OccupancyGrid& patch = labels[k];
    if (patch.width() != side || patch.height() != side ||
        std::abs(patch.resolution() - resolution) > 1e-9) {
      fail(ErrorCode::kShapeMismatch, "label patch " + std::to_string(k) +
                                          " does not match the input geometry");
    }
    PatchPair pair;
    pair.side = side;
    pair.input = normalize_input(sensorsim::rasterize(
        sensorsim::filter_moving(scans[k], options.velocity_threshold), side,
        options.geometry.window));
    const std::vector<double> image = sensorsim::patch_to_image(patch);
    pair.label.resize(image.size());
    for (std::size_t i = 0; i < image.size(); ++i) {
      pair.label[i] = static_cast<float>(std::tanh(0.5 * image[i]));
    }
    classify_pair(pair, threshold);
    pair.pose = trajectory.poses[k].pose;
    pair.world_seed = options.world_seed;
    pair.frame = static_cast<std::uint32_t>(k);
    pair.sensor = scans[k].kind;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

MapPairs pairs_from_map(const std::vector<sensorsim::Scan>& scans,
                        const worldsim::Trajectory& trajectory,
                        const gridcore::OccupancyGrid& map, const PairOptions& options) {
  if (scans.size() != trajectory.size()) {
    fail(ErrorCode::kLengthMismatch, std::to_string(scans.size()) + " scans vs " +
                                         std::to_string(trajectory.size()) + " poses");
  }
  const gtbuilder::LabelPatches labels =
      gtbuilder::cut_labels(map, trajectory, options.geometry.side);
  std::vector<sensorsim::Scan> kept;
  worldsim::Trajectory kept_poses;
  for (std::size_t idx : labels.pose_indices) {
    kept.push_back(scans[idx]);
    kept_poses.poses.push_back(trajectory.poses[idx]);
  }
  MapPairs out;
  out.pairs = make_pairs(kept, labels.patches, kept_poses, options);
  for (std::size_t i = 0; i < out.pairs.size(); ++i) {
    out.pairs[i].frame = static_cast<std::uint32_t>(labels.pose_indices[i]);
  }
  out.skipped = labels.skipped;
  return out;
}

}  // namespace gridwise::dataset
