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

#ifndef GRIDWISE_TRAINING_ADAM_H_
#define GRIDWISE_TRAINING_ADAM_H_

#include <vector>

#include "gridwise/neuralnet/autoencoder.h"

namespace gridwise::training {

struct AdamConfig {
  double learning_rate = 2e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class Adam {
 public:
  explicit Adam(const AdamConfig& config) : config_(config) {}

  // Applies one bias-corrected update from the gradients held in `model`.
  void step(neuralnet::Autoencoder<float>& model);
  long steps() const { return t_; }

 private:
  AdamConfig config_;
  long t_ = 0;
  std::vector<std::vector<float>> m_;
  std::vector<std::vector<float>> v_;
};

}  // namespace gridwise::training

#endif  // GRIDWISE_TRAINING_ADAM_H_
