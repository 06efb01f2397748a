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

#include "gridwise/mapper/metrics.h"

#include <algorithm>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/parallel.h"
#include "gridwise/training/loss.h"

namespace gridwise::mapper {
namespace {

using gridcore::CellClass;

// Samples per inference call.
constexpr std::size_t kInferBatch = 16;

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

std::optional<double> iou(const MapAgreement& a, CellClass c) {
  const auto k = static_cast<std::size_t>(c);
  std::int64_t inter = a.confusion[k][k];
  std::int64_t uni = 0;
  for (std::size_t g : {std::size_t{0}, std::size_t{2}}) {  // known ground truth only
    for (std::size_t p = 0; p < 3; ++p) {
      if (g == k || p == k) uni += a.confusion[g][p];
    }
  }
  if (uni == 0) return std::nullopt;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace

ClassMseReport per_class_mse(const std::vector<std::vector<float>>& preds,
                             const std::vector<std::vector<float>>& labels, double tau) {
  if (preds.size() != labels.size()) {
    fail(ErrorCode::kLengthMismatch, std::to_string(preds.size()) + " predictions vs " +
                                         std::to_string(labels.size()) + " labels");
  }
  const float threshold = dataset::label_threshold(tau);
  training::ClassMse acc;
  ClassMseReport report;
  for (std::size_t k = 0; k < preds.size(); ++k) {
    if (preds[k].size() != labels[k].size()) {
      fail(ErrorCode::kShapeMismatch, "prediction " + std::to_string(k) + " has " +
                                          std::to_string(preds[k].size()) + " pixels, label " +
                                          std::to_string(labels[k].size()));
    }
    for (std::size_t i = 0; i < preds[k].size(); ++i) {
      const CellClass c = dataset::classify_label(labels[k][i], threshold);
      acc.add(preds[k][i], labels[k][i], c);
    }
  }
  report.free_mse = acc.mse(CellClass::kFree);
  report.unknown_mse = acc.mse(CellClass::kUnknown);
  report.occupied_mse = acc.mse(CellClass::kOccupied);
  report.counts.free = acc.count(CellClass::kFree);
  report.counts.unknown = acc.count(CellClass::kUnknown);
  report.counts.occupied = acc.count(CellClass::kOccupied);
  report.counts.total = report.counts.free + report.counts.unknown + report.counts.occupied;
  return report;
}

ClassMseReport constant_unknown_baseline(const std::vector<std::vector<float>>& labels,
                                         double tau) {
  std::vector<std::vector<float>> zeros;
  zeros.reserve(labels.size());
  for (const auto& l : labels) zeros.emplace_back(l.size(), 0.0f);
  return per_class_mse(zeros, labels, tau);
}

std::vector<std::vector<float>> predict_probabilities(const neuralnet::Autoencoder<float>& model,
                                                      const std::vector<dataset::PatchPair>& pairs) {
  const int side = model.config().side;
  const std::size_t pixels = static_cast<std::size_t>(side) * side;
  for (const auto& p : pairs) {
    if (p.side != side) fail(ErrorCode::kShapeMismatch, "sample side does not match the model");
  }
  std::vector<std::vector<float>> out(pairs.size());
  const std::size_t batches = (pairs.size() + kInferBatch - 1) / kInferBatch;
  parallel_for(batches, [&](std::size_t b) {
    const std::size_t start = b * kInferBatch;
    const std::size_t count = std::min(kInferBatch, pairs.size() - start);
    neuralnet::Tensor<float> x(neuralnet::Shape{static_cast<int>(count), 1, side, side});
    for (std::size_t k = 0; k < count; ++k) {
      std::copy(pairs[start + k].input.begin(), pairs[start + k].input.end(),
                x.sample(static_cast<int>(k)));
    }
    const neuralnet::Tensor<float> prob = neuralnet::head_to_prob(model.infer(x));
    for (std::size_t k = 0; k < count; ++k) {
      const float* p = prob.sample(static_cast<int>(k));
      out[start + k].assign(p, p + pixels);
    }
  });
  return out;
}

std::vector<std::vector<float>> labels_of(const std::vector<dataset::PatchPair>& pairs) {
  std::vector<std::vector<float>> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.label);
  return out;
}

MapAgreement map_agreement(const gridcore::OccupancyGrid& pred,
                           const gridcore::OccupancyGrid& gt, double tau) {
  if (!pred.same_geometry(gt)) {
    fail(ErrorCode::kGeometryMismatch, "predicted and ground-truth maps differ in geometry");
  }
  MapAgreement a;
  const auto p = pred.cells();
  const auto g = gt.cells();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto gc = static_cast<std::size_t>(gridcore::classify(g[i], tau));
    const auto pc = static_cast<std::size_t>(gridcore::classify(p[i], tau));
    ++a.confusion[gc][pc];
  }
  a.occupied_iou = iou(a, CellClass::kOccupied);
  a.free_iou = iou(a, CellClass::kFree);
  return a;
}

nlohmann::json metrics_json(const std::string& scheme, const std::string& sensor,
                            const ClassMseReport& mse, const ClassMseReport& baseline,
                            const std::optional<MapAgreement>& agreement) {
  nlohmann::json j;
  j["scheme"] = scheme;
  j["sensor"] = sensor;
  j["free_mse"] = optional_json(mse.free_mse);
  j["unknown_mse"] = optional_json(mse.unknown_mse);
  j["occupied_mse"] = optional_json(mse.occupied_mse);
  j["occ_iou"] = agreement ? optional_json(agreement->occupied_iou) : nlohmann::json(nullptr);
  j["free_iou"] = agreement ? optional_json(agreement->free_iou) : nlohmann::json(nullptr);
  j["scale"] = "label [-1, 1]";
  j["baseline"] = {{"free_mse", optional_json(baseline.free_mse)},
                   {"unknown_mse", optional_json(baseline.unknown_mse)},
                   {"occupied_mse", optional_json(baseline.occupied_mse)}};
  j["pixels"] = {{"free", mse.counts.free},
                 {"unknown", mse.counts.unknown},
                 {"occupied", mse.counts.occupied}};
  return j;
}

}  // namespace gridwise::mapper
