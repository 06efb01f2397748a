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

#include "gridwise/mapper/predictor.h"

#include <optional>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/parallel.h"
#include "gridwise/dataset/patch_pair.h"
#include "gridwise/neuralnet/params_io.h"

namespace gridwise::mapper {

nlohmann::json ModelInfo::to_json() const {
  return {{"sensor", sensorsim::sensor_kind_name(sensor)},
          {"side", geometry.side},
          {"window", geometry.window},
          {"tau", tau},
          {"velocity_threshold", velocity_threshold},
          {"scheme", scheme}};
}

ModelInfo ModelInfo::from_json(const nlohmann::json& json) {
  ModelInfo info;
  try {
    info.sensor = sensorsim::sensor_kind_from_name(json.at("sensor").get<std::string>());
    info.geometry.side = json.at("side").get<int>();
    info.geometry.window = json.at("window").get<double>();
    info.tau = json.value("tau", info.tau);
    info.velocity_threshold = json.value("velocity_threshold", info.velocity_threshold);
    info.scheme = json.value("scheme", std::string());
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kIoError, std::string("model metadata: ") + e.what());
  }
  return info;
}

ModelPredictor::ModelPredictor(neuralnet::Autoencoder<float> model, ModelInfo info)
    : model_(std::move(model)), info_(std::move(info)) {
  if (model_.config().side != info_.geometry.side) {
    fail(ErrorCode::kShapeMismatch, "model side " + std::to_string(model_.config().side) +
                                        " does not match its input side " +
                                        std::to_string(info_.geometry.side));
  }
}

ModelPredictor ModelPredictor::load(const std::filesystem::path& path) {
  neuralnet::LoadedModel loaded = neuralnet::load_model(path);
  ModelInfo info = ModelInfo::from_json(loaded.metadata);
  return ModelPredictor(std::move(loaded.model), std::move(info));
}

gridcore::OccupancyGrid ModelPredictor::predict(const sensorsim::Scan& scan) const {
  return predict_patch(model_, info_, scan);
}

gridcore::OccupancyGrid predict_patch(const neuralnet::Autoencoder<float>& model,
                                      const ModelInfo& info, const sensorsim::Scan& scan) {
  if (scan.kind != info.sensor) {
    fail(ErrorCode::kSensorKindMismatch,
         "model was trained on " + std::string(sensorsim::sensor_kind_name(info.sensor)) +
             " but the scan is " + std::string(sensorsim::sensor_kind_name(scan.kind)));
  }
  const int side = info.geometry.side;
  if (model.config().side != side) {
    fail(ErrorCode::kShapeMismatch, "model side does not match the input side");
  }
  const std::vector<float> input = dataset::normalize_input(sensorsim::rasterize(
      sensorsim::filter_moving(scan, info.velocity_threshold), side, info.geometry.window));
  neuralnet::Tensor<float> x(neuralnet::Shape{1, 1, side, side});
  std::copy(input.begin(), input.end(), x.data.begin());
  const neuralnet::Tensor<float> logits = model.infer(x);
  return sensorsim::image_to_patch(logits.data, side, info.geometry.resolution());
}

IdealIsmPredictor::IdealIsmPredictor(const gtbuilder::IdealIsmParams& params, double resolution)
    : params_(params), resolution_(resolution) {
  params_.validate();
  side_ = gtbuilder::single_shot_side(params_.max_range, resolution_);
}

gridcore::OccupancyGrid IdealIsmPredictor::predict(const sensorsim::Scan& scan) const {
  if (scan.kind != sensorsim::SensorKind::kLidar) {
    fail(ErrorCode::kSensorKindMismatch, "the ideal model only accepts LiDAR scans");
  }
  return gtbuilder::single_shot_grid(scan, params_, side_, resolution_);
}

std::vector<gridcore::OccupancyGrid> predict_all(const PatchPredictor& predictor,
                                                 const std::vector<sensorsim::Scan>& scans) {
  std::vector<std::optional<gridcore::OccupancyGrid>> slots(scans.size());
  parallel_for(scans.size(), [&](std::size_t i) { slots[i] = predictor.predict(scans[i]); });
  std::vector<gridcore::OccupancyGrid> out;
  out.reserve(scans.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace gridwise::mapper
