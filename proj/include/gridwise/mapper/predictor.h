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

#ifndef GRIDWISE_MAPPER_PREDICTOR_H_
#define GRIDWISE_MAPPER_PREDICTOR_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "gridwise/gridcore/occupancy_grid.h"
#include "gridwise/gtbuilder/ideal_ism.h"
#include "gridwise/neuralnet/autoencoder.h"
#include "gridwise/sensorsim/motion_filter.h"
#include "gridwise/sensorsim/rasterize.h"
#include "gridwise/sensorsim/scan.h"

namespace gridwise::mapper {

// What a trained model expects of its input; stored in the model file's
// metadata.
struct ModelInfo {
  sensorsim::SensorKind sensor = sensorsim::SensorKind::kLidar;
  sensorsim::ImageGeometry geometry = sensorsim::kDeskImage;
  double tau = 1.0986122886681098;  // ln 3
  double velocity_threshold = sensorsim::kDefaultVelocityThreshold;
  std::string scheme;

  nlohmann::json to_json() const;
  static ModelInfo from_json(const nlohmann::json& json);
};

// Produces one vehicle-centered log-odds patch per scan. Implementations are
// safe to call from several threads at once.
class PatchPredictor {
 public:
  virtual ~PatchPredictor() = default;
  virtual gridcore::OccupancyGrid predict(const sensorsim::Scan& scan) const = 0;
};

class ModelPredictor : public PatchPredictor {
 public:
  ModelPredictor(neuralnet::Autoencoder<float> model, ModelInfo info);
  static ModelPredictor load(const std::filesystem::path& path);

  // Motion filter, rasterize, forward in eval mode; the logits become the
  // patch. SensorKindMismatch for a scan of the other sensor.
  gridcore::OccupancyGrid predict(const sensorsim::Scan& scan) const override;

  const ModelInfo& info() const { return info_; }
  const neuralnet::Autoencoder<float>& model() const { return model_; }

 private:
  neuralnet::Autoencoder<float> model_;
  ModelInfo info_;
};

// Hand-made LiDAR model: the single-shot grid used for ground truth.
class IdealIsmPredictor : public PatchPredictor {
 public:
  IdealIsmPredictor(const gtbuilder::IdealIsmParams& params, double resolution);
  gridcore::OccupancyGrid predict(const sensorsim::Scan& scan) const override;

 private:
  gtbuilder::IdealIsmParams params_;
  double resolution_;
  int side_;
};

gridcore::OccupancyGrid predict_patch(const neuralnet::Autoencoder<float>& model,
                                      const ModelInfo& info, const sensorsim::Scan& scan);

// Predictions for every scan, computed in parallel; order follows `scans`.
std::vector<gridcore::OccupancyGrid> predict_all(const PatchPredictor& predictor,
                                                 const std::vector<sensorsim::Scan>& scans);

}  // namespace gridwise::mapper

#endif  // GRIDWISE_MAPPER_PREDICTOR_H_
