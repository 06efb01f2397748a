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

#ifndef GRIDWISE_MAPPER_METRICS_H_
#define GRIDWISE_MAPPER_METRICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "gridwise/dataset/patch_pair.h"
#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/neuralnet/autoencoder.h"

namespace gridwise::mapper {

// Errors are measured in the label scale [-1, 1]; a class without pixels is
// absent rather than zero.
struct ClassMseReport {
  std::optional<double> free_mse;
  std::optional<double> unknown_mse;
  std::optional<double> occupied_mse;
  dataset::ClassCounts counts;
};

// Per-class mean of (pred - label)^2 pooled over all patches; the class of a
// pixel comes from its label at threshold tau.
ClassMseReport per_class_mse(const std::vector<std::vector<float>>& preds,
                             const std::vector<std::vector<float>>& labels, double tau);

// Same for the constant predictor 0 ("unknown everywhere"); each value is the
// class mean of label^2.
ClassMseReport constant_unknown_baseline(const std::vector<std::vector<float>>& labels,
                                         double tau);

// tanh(logit / 2) of the model for every sample, eval mode.
std::vector<std::vector<float>> predict_probabilities(const neuralnet::Autoencoder<float>& model,
                                                      const std::vector<dataset::PatchPair>& pairs);

std::vector<std::vector<float>> labels_of(const std::vector<dataset::PatchPair>& pairs);

struct MapAgreement {
  // Intersection over union per class over cells the ground truth knows;
  // absent when neither map has the class there.
  std::optional<double> occupied_iou;
  std::optional<double> free_iou;
  // confusion[gt][pred], indexed by CellClass, over every cell.
  std::array<std::array<std::int64_t, 3>, 3> confusion{};
};

// GeometryMismatch unless both maps share size, resolution and origin.
MapAgreement map_agreement(const gridcore::OccupancyGrid& pred,
                           const gridcore::OccupancyGrid& gt, double tau);

// {scheme, sensor, free_mse, unknown_mse, occupied_mse, occ_iou, free_iou}
// plus the baseline and the evaluation scale. Absent values are null.
nlohmann::json metrics_json(const std::string& scheme, const std::string& sensor,
                            const ClassMseReport& mse, const ClassMseReport& baseline,
                            const std::optional<MapAgreement>& agreement);

}  // namespace gridwise::mapper

#endif  // GRIDWISE_MAPPER_METRICS_H_
