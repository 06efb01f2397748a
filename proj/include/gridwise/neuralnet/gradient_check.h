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

#ifndef GRIDWISE_NEURALNET_GRADIENT_CHECK_H_
#define GRIDWISE_NEURALNET_GRADIENT_CHECK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "gridwise/neuralnet/autoencoder.h"
#include "gridwise/neuralnet/layers.h"

namespace gridwise::neuralnet {

// Scalar objective of a network output. Writes d(objective)/d(output) into
// `grad` when it is non-null.
using Objective = std::function<double(const Tensor<double>& output, Tensor<double>* grad)>;

struct GradCheckOptions {
  double step = 1e-5;
  // A probe whose +/- step evaluations change any LeakyReLU side straddles
  // a kink, where the derivative is undefined. It is retried with the step
  // divided by 10 up to this many times, then skipped.
  int kink_retries = 3;
  // Entries probed per tensor; 0 probes every entry. Sampled entries are
  // drawn without replacement from `seed`.
  std::size_t max_per_tensor = 0;
  std::uint64_t seed = 0;
};

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst;  // "<tensor>[<index>]" of the largest error
  std::size_t checked = 0;
  std::size_t skipped = 0;  // probes that kept straddling a kink
};

// |a - n| / max(|a|, |n|, 1e-6)
double relative_error(double analytic, double numeric);

// Central differences of objective(forward_train(x)) + lambda * l2_penalty
// against back-propagation, over the model parameters. Batch-norm running
// statistics are restored afterwards. Probes follow the kink rule of
// GradCheckOptions::kink_retries.
GradCheckResult gradient_check(Autoencoder<double>& model, const Tensor<double>& input,
                               const Objective& objective, double lambda,
                               const GradCheckOptions& options = {});

// Same check for one layer in training mode under the objective
// sum(r * layer(x)) with a fixed random r; covers the input gradient and
// every parameter.
GradCheckResult check_layer(Layer<double>& layer, const Tensor<double>& input,
                            const GradCheckOptions& options = {});

}  // namespace gridwise::neuralnet

#endif  // GRIDWISE_NEURALNET_GRADIENT_CHECK_H_
