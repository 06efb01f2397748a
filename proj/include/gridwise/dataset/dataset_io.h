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

#ifndef GRIDWISE_DATASET_DATASET_IO_H_
#define GRIDWISE_DATASET_DATASET_IO_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "json.hpp"
#include "gridwise/dataset/patch_pair.h"

namespace gridwise::dataset {

inline constexpr int kDatasetFormatVersion = 1;

struct DatasetInfo {
  int side = 0;
  double window = 0.0;
  double tau = 0.0;
  sensorsim::SensorKind sensor = sensorsim::SensorKind::kLidar;
  std::vector<std::uint64_t> train_seeds;
  std::vector<std::uint64_t> test_seeds;
};

struct Dataset {
  DatasetInfo info;
  std::vector<PatchPair> train;
  std::vector<PatchPair> test;
};

// Splits by world seed: the first round(fraction * n) seeds in ascending
// order go to train, the rest to test. Writes manifest.json plus
// train/samples.f32 and test/samples.f32 under `dir`.
DatasetInfo split_save(const std::vector<PatchPair>& pairs, double train_fraction,
                       double window, double tau, const std::filesystem::path& dir);

Dataset load_dataset(const std::filesystem::path& dir);

}  // namespace gridwise::dataset

#endif  // GRIDWISE_DATASET_DATASET_IO_H_
