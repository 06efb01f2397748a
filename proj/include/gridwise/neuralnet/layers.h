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

#ifndef GRIDWISE_NEURALNET_LAYERS_H_
#define GRIDWISE_NEURALNET_LAYERS_H_

#include <memory>
#include <string>
#include <vector>

#include "gridwise/common/random.h"
#include "gridwise/neuralnet/tensor.h"

namespace gridwise::neuralnet {

template <typename T>
struct Parameter {
  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
  bool decay = false;  // included in the L2 penalty
};

// Non-trainable state persisted with the parameters (batch-norm statistics).
template <typename T>
struct Buffer {
  std::string name;
  Tensor<T> value;
};

template <typename T>
class Layer {
 public:
  virtual ~Layer() = default;

  // Training forward pass; caches what backward needs and may update buffers.
  virtual Tensor<T> forward(const Tensor<T>& x) = 0;
  // Inference forward pass; pure.
  virtual Tensor<T> infer(const Tensor<T>& x) const = 0;
  // Gradient of the input for the most recent forward; adds parameter
  // gradients into Parameter::grad.
  virtual Tensor<T> backward(const Tensor<T>& dy) = 0;

  virtual std::vector<Parameter<T>*> parameters() { return {}; }
  virtual std::vector<Buffer<T>*> buffers() { return {}; }
  virtual Shape output_shape(const Shape& input) const = 0;

  // Appends which side of each non-differentiable point the cached inputs
  // of the last training forward fall on. Empty for smooth layers.
  virtual void append_kink_state(std::vector<bool>& /*state*/) const {}
};

struct ConvGeometry {
  int in_channels = 1;
  int out_channels = 1;
  int kernel = 4;
  int stride = 2;
  int padding = 1;
};

template <typename T>
class Conv2d : public Layer<T> {
 public:
  Conv2d(const std::string& name, const ConvGeometry& geometry, bool bias);

  Tensor<T> forward(const Tensor<T>& x) override;
  Tensor<T> infer(const Tensor<T>& x) const override;
  Tensor<T> backward(const Tensor<T>& dy) override;
  std::vector<Parameter<T>*> parameters() override;
  Shape output_shape(const Shape& input) const override;

  const ConvGeometry& geometry() const { return geometry_; }
  Parameter<T>& weight() { return weight_; }  // [out, in, k, k]
  Parameter<T>* bias() { return has_bias_ ? &bias_ : nullptr; }

 private:
  ConvGeometry geometry_;
  bool has_bias_;
  Parameter<T> weight_;
  Parameter<T> bias_;
  Tensor<T> input_;
  std::vector<AlignedVector<T>> columns_;
};

// Transposed convolution from geometry.in_channels to geometry.out_channels
// with weight [in, out, k, k]. It is the exact adjoint of a Conv2d mapping
// out -> in with the same kernel, stride, padding and weight values.
template <typename T>
class TransposedConv2d : public Layer<T> {
 public:
  TransposedConv2d(const std::string& name, const ConvGeometry& geometry);

  Tensor<T> forward(const Tensor<T>& x) override;
  Tensor<T> infer(const Tensor<T>& x) const override;
  Tensor<T> backward(const Tensor<T>& dy) override;
  std::vector<Parameter<T>*> parameters() override;
  Shape output_shape(const Shape& input) const override;

  const ConvGeometry& geometry() const { return geometry_; }
  Parameter<T>& weight() { return weight_; }

 private:
  ConvGeometry geometry_;
  Parameter<T> weight_;
  Tensor<T> input_;
};

template <typename T>
class BatchNorm2d : public Layer<T> {
 public:
  static constexpr double kMomentum = 0.9;
  static constexpr double kEpsilon = 1e-5;

  BatchNorm2d(const std::string& name, int channels);

  Tensor<T> forward(const Tensor<T>& x) override;
  Tensor<T> infer(const Tensor<T>& x) const override;
  Tensor<T> backward(const Tensor<T>& dy) override;
  std::vector<Parameter<T>*> parameters() override;
  std::vector<Buffer<T>*> buffers() override;
  Shape output_shape(const Shape& input) const override { return input; }

  Parameter<T>& gamma() { return gamma_; }
  Parameter<T>& beta() { return beta_; }
  Buffer<T>& running_mean() { return running_mean_; }
  Buffer<T>& running_var() { return running_var_; }

 private:
  int channels_;
  Parameter<T> gamma_;
  Parameter<T> beta_;
  Buffer<T> running_mean_;
  Buffer<T> running_var_;
  Tensor<T> normalized_;
  std::vector<T> inv_std_;
};

template <typename T>
class LeakyRelu : public Layer<T> {
 public:
  explicit LeakyRelu(double slope = 0.2) : slope_(slope) {}

  Tensor<T> forward(const Tensor<T>& x) override;
  Tensor<T> infer(const Tensor<T>& x) const override;
  Tensor<T> backward(const Tensor<T>& dy) override;
  Shape output_shape(const Shape& input) const override { return input; }
  void append_kink_state(std::vector<bool>& state) const override;

 private:
  double slope_;
  Tensor<T> input_;
};

}  // namespace gridwise::neuralnet

#endif  // GRIDWISE_NEURALNET_LAYERS_H_
