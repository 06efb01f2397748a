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

#include "gridwise/training/loss.h"

#include <cmath>
#include <string>

#include "gridwise/common/error.h"

namespace gridwise::training {

void LossConfig::validate() const {
  if (!(lambda >= 0.0)) fail(ErrorCode::kInvalidArgument, "lambda must be >= 0");
  if (!(tau > 0.0)) fail(ErrorCode::kInvalidArgument, "tau must be positive");
}

LossValue weighted_loss(std::span<const double> pred, std::span<const double> label,
                        std::span<const double> alpha) {
  if (pred.size() != label.size() || pred.size() != alpha.size()) {
    fail(ErrorCode::kShapeMismatch, "prediction, label and weights differ in size");
  }
  LossValue out;
  out.grad.resize(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - label[i];
    out.loss += alpha[i] * d * d;
    out.grad[i] = 2.0 * alpha[i] * d;
  }
  return out;
}

template <typename T>
double batch_data_loss(const neuralnet::Tensor<T>& logits,
                       const std::vector<const dataset::PatchPair*>& batch, Scheme scheme,
                       std::type_identity_t<neuralnet::Tensor<T>>* dlogits) {
  const neuralnet::Shape& shape = logits.shape;
  if (shape.n != static_cast<int>(batch.size()) || shape.c != 1) {
    fail(ErrorCode::kShapeMismatch, "logits " + shape.to_string() + " vs batch of " +
                                        std::to_string(batch.size()));
  }
  const std::size_t pixels = shape.sample_size();
  if (dlogits) *dlogits = neuralnet::Tensor<T>(shape);
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  std::vector<double> pred(pixels);
  std::vector<double> label(pixels);
  for (int n = 0; n < shape.n; ++n) {
    const dataset::PatchPair& pair = *batch[n];
    if (pair.label.size() != pixels) {
      fail(ErrorCode::kShapeMismatch, "label size does not match the logits");
    }
    const T* z = logits.sample(n);
    for (std::size_t i = 0; i < pixels; ++i) {
      pred[i] = std::tanh(0.5 * static_cast<double>(z[i]));
      label[i] = pair.label[i];
    }
    const std::vector<double> alpha = pixel_weights(scheme, pair.counts, pair.classes);
    const LossValue value = weighted_loss(pred, label, alpha);
    total += value.loss;
    if (dlogits) {
      T* g = dlogits->sample(n);
      for (std::size_t i = 0; i < pixels; ++i) {
        g[i] = static_cast<T>(inv_n * value.grad[i] * 0.5 * (1.0 - pred[i] * pred[i]));
      }
    }
  }
  return total * inv_n;
}

template double batch_data_loss(const neuralnet::Tensor<float>&,
                                const std::vector<const dataset::PatchPair*>&, Scheme,
                                neuralnet::Tensor<float>*);
template double batch_data_loss(const neuralnet::Tensor<double>&,
                                const std::vector<const dataset::PatchPair*>&, Scheme,
                                neuralnet::Tensor<double>*);

void ClassMse::add(double pred, double label, CellClass c) {
  const auto k = static_cast<std::size_t>(c);
  sum_[k] += (pred - label) * (pred - label);
  ++count_[k];
}

void ClassMse::add(std::span<const float> pred, std::span<const float> label,
                   std::span<const CellClass> classes) {
  if (pred.size() != label.size() || pred.size() != classes.size()) {
    fail(ErrorCode::kShapeMismatch, "prediction, label and classes differ in size");
  }
  for (std::size_t i = 0; i < pred.size(); ++i) add(pred[i], label[i], classes[i]);
}

std::optional<double> ClassMse::mse(CellClass c) const {
  const auto k = static_cast<std::size_t>(c);
  if (count_[k] == 0) return std::nullopt;
  return sum_[k] / static_cast<double>(count_[k]);
}

}  // namespace gridwise::training
