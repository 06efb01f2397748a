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

#ifndef GRIDWISE_TRAINING_LOSS_H_
#define GRIDWISE_TRAINING_LOSS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>
#include <vector>

#include "gridwise/dataset/patch_pair.h"
#include "gridwise/neuralnet/tensor.h"
#include "gridwise/training/weights.h"

namespace gridwise::training {

struct LossConfig {
  Scheme scheme = Scheme::kInverseClassRatio;
  double lambda = 1e-4;
  double tau = 1.0986122886681098;  // ln 3

  void validate() const;
};

struct LossValue {
  double loss = 0.0;
  std::vector<double> grad;  // d(loss)/d(pred)
};

// sum_i alpha_i (pred_i - label_i)^2 and its gradient 2 alpha_i (pred_i - label_i).
// The L2 term is added by the caller from the model.
LossValue weighted_loss(std::span<const double> pred, std::span<const double> label,
                        std::span<const double> alpha);

// Data term of a batch: the mean over samples of weighted_loss applied to
// tanh(logit / 2). Writes d(loss)/d(logits) into `dlogits` when non-null.
template <typename T>
double batch_data_loss(const neuralnet::Tensor<T>& logits,
                       const std::vector<const dataset::PatchPair*>& batch, Scheme scheme,
                       std::type_identity_t<neuralnet::Tensor<T>>* dlogits);

// Running squared error per label class.
class ClassMse {
 public:
  void add(std::span<const float> pred, std::span<const float> label,
           std::span<const CellClass> classes);
  void add(double pred, double label, CellClass c);
  // Absent when no pixel of the class was seen.
  std::optional<double> mse(CellClass c) const;
  std::int64_t count(CellClass c) const { return count_[static_cast<std::size_t>(c)]; }

 private:
  std::array<double, 3> sum_{};
  std::array<std::int64_t, 3> count_{};
};

}  // namespace gridwise::training

#endif  // GRIDWISE_TRAINING_LOSS_H_
