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

#ifndef GRIDWISE_NEURALNET_AUTOENCODER_H_
#define GRIDWISE_NEURALNET_AUTOENCODER_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "gridwise/neuralnet/layers.h"

namespace gridwise::neuralnet {

enum class Mode { kTrain, kEval };

struct AeConfig {
  int side = 64;
  std::vector<int> channels{8, 16, 32, 64};  // encoder ladder; its length is the depth
  double init_std = 0.02;
  std::uint64_t seed = 0;

  static AeConfig desk();   // 64 px, 8-16-32-64
  static AeConfig full();  // 128 px, 16-32-64-128
  static AeConfig tiny();   // 8 px, 2-4

  int depth() const { return static_cast<int>(channels.size()); }
  void validate() const;
  nlohmann::json to_json() const;
  static AeConfig from_json(const nlohmann::json& json);
};

// Encoder: `depth` blocks of conv(k4, s2, p1, no bias) + batch norm +
// LeakyReLU(0.2). Decoder: the mirror image with transposed convolutions;
// its last block keeps the first encoder width. Head: conv(k3, s1, p1) with
// bias to a single logit channel.
template <typename T>
class Autoencoder {
 public:
  explicit Autoencoder(const AeConfig& config);
  Autoencoder(const Autoencoder& other);
  Autoencoder& operator=(const Autoencoder& other);
  Autoencoder(Autoencoder&&) noexcept = default;
  Autoencoder& operator=(Autoencoder&&) noexcept = default;

  const AeConfig& config() const { return config_; }

  // Logits [N, 1, side, side] for input [N, 1, side, side]. Train mode uses
  // batch statistics and updates the running ones; eval mode does not touch
  // any state.
  Tensor<T> forward(const Tensor<T>& x, Mode mode);
  Tensor<T> infer(const Tensor<T>& x) const;
  // Back-propagates d(loss)/d(logits) for the last train-mode forward,
  // accumulates parameter gradients and returns d(loss)/d(input).
  Tensor<T> backward(const Tensor<T>& dlogits);

  void zero_grad();
  std::vector<Parameter<T>*> parameters();
  std::vector<const Parameter<T>*> parameters() const;
  std::vector<Buffer<T>*> buffers();
  std::vector<const Buffer<T>*> buffers() const;
  std::size_t parameter_count() const;

  // Activation-side pattern of the last train-mode forward; two forwards
  // with equal patterns lie on the same smooth piece of the network.
  std::vector<bool> kink_state() const;

  // Sum of squared decayed weights (convolution kernels).
  double l2_penalty() const;
  // Adds 2 * lambda * w to the gradient of every decayed weight.
  void add_l2_gradient(double lambda);

  // Copies parameters and buffers, converting precision.
  template <typename U>
  Autoencoder<U> cast() const;

 private:
  void build();
  void initialize();

  AeConfig config_;
  std::vector<std::unique_ptr<Layer<T>>> layers_;
};

template <typename T>
Tensor<T> head_to_prob(const Tensor<T>& logits);

double head_to_prob(double logit);

}  // namespace gridwise::neuralnet

#endif  // GRIDWISE_NEURALNET_AUTOENCODER_H_
