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

#ifndef GRIDWISE_TRAINING_TRAINER_H_
#define GRIDWISE_TRAINING_TRAINER_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "json.hpp"
#include "gridwise/dataset/patch_pair.h"
#include "gridwise/neuralnet/autoencoder.h"
#include "gridwise/training/adam.h"
#include "gridwise/training/loss.h"

namespace gridwise::training {

struct TrainConfig {
  int epochs = 40;
  int batch_size = 16;
  AdamConfig adam;
  std::uint64_t seed = 0;
  bool augment = true;  // random D4 element per sample and epoch

  void validate() const;
  nlohmann::json to_json() const;
  // Missing keys keep their defaults.
  static TrainConfig from_json(const nlohmann::json& json);
};

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;  // mean batch loss, L2 term included
  // Squared error per label class over the epoch's training forwards.
  std::optional<double> free_mse;
  std::optional<double> unknown_mse;
  std::optional<double> occupied_mse;
};

struct TrainOptions {
  std::filesystem::path log_csv;     // written after every epoch when set
  std::filesystem::path checkpoint;  // last finite parameters on divergence
  nlohmann::json metadata = nlohmann::json::object();
  std::function<void(const EpochStats&)> on_epoch;
};

struct TrainResult {
  std::vector<EpochStats> curve;
  long steps = 0;
};

// Adam over shuffled minibatches. Shuffling and augmentation draw from
// streams keyed by (seed, epoch) so a run is reproducible. Throws Divergence
// on a non-finite loss or parameter, leaving `model` at its last finite
// state (also saved to options.checkpoint when set).
TrainResult train(neuralnet::Autoencoder<float>& model,
                  const std::vector<dataset::PatchPair>& samples, const LossConfig& loss,
                  const TrainConfig& config, const TrainOptions& options = {});

void write_curve_csv(const std::vector<EpochStats>& curve, const std::filesystem::path& path);

}  // namespace gridwise::training

#endif  // GRIDWISE_TRAINING_TRAINER_H_
