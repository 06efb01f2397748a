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

#include "gridwise/neuralnet/autoencoder.h"

#include <cmath>
#include <string>

#include "gridwise/common/error.h"
#include "gridwise/common/random.h"

namespace gridwise::neuralnet {

AeConfig AeConfig::desk() { return AeConfig{}; }

AeConfig AeConfig::full() {
  AeConfig config;
  config.side = 128;
  config.channels = {16, 32, 64, 128};
  return config;
}

AeConfig AeConfig::tiny() {
  AeConfig config;
  config.side = 8;
  config.channels = {2, 4};
  return config;
}

void AeConfig::validate() const {
  if (channels.empty()) fail(ErrorCode::kInvalidArgument, "channel ladder is empty");
  for (int c : channels) {
    if (c <= 0) fail(ErrorCode::kInvalidArgument, "channel counts must be positive");
  }
  const int factor = 1 << depth();
  if (side <= 0 || side % factor != 0 || side / factor < 2) {
    fail(ErrorCode::kInvalidArgument,
         "side " + std::to_string(side) + " must be a multiple of " + std::to_string(factor) +
             " leaving at least 2x2 at the bottleneck");
  }
  if (!(init_std > 0.0)) fail(ErrorCode::kInvalidArgument, "init_std must be positive");
}

nlohmann::json AeConfig::to_json() const {
  return {{"side", side}, {"channels", channels}, {"init_std", init_std}, {"seed", seed}};
}

AeConfig AeConfig::from_json(const nlohmann::json& json) {
  AeConfig config;
  config.side = json.at("side").get<int>();
  config.channels = json.at("channels").get<std::vector<int>>();
  config.init_std = json.value("init_std", config.init_std);
  config.seed = json.value("seed", config.seed);
  config.validate();
  return config;
}

template <typename T>
Autoencoder<T>::Autoencoder(const AeConfig& config) : config_(config) {
  config_.validate();
  build();
  initialize();
}

template <typename T>
Autoencoder<T>::Autoencoder(const Autoencoder& other) : config_(other.config_) {
  build();
  auto dst = parameters();
  auto src = other.parameters();
  for (std::size_t i = 0; i < dst.size(); ++i) *dst[i] = *src[i];
  auto dst_b = buffers();
  auto src_b = other.buffers();
  for (std::size_t i = 0; i < dst_b.size(); ++i) *dst_b[i] = *src_b[i];
}

template <typename T>
Autoencoder<T>& Autoencoder<T>::operator=(const Autoencoder& other) {
  if (this != &other) *this = Autoencoder(other);
  return *this;
}

template <typename T>
void Autoencoder<T>::build() {
  layers_.clear();
  const auto& ch = config_.channels;
  const int depth = config_.depth();
  auto block = [&](std::unique_ptr<Layer<T>> conv, const std::string& prefix, int width) {
    layers_.push_back(std::move(conv));
    layers_.push_back(std::make_unique<BatchNorm2d<T>>(prefix + ".bn", width));
    layers_.push_back(std::make_unique<LeakyRelu<T>>(0.2));
  };
  int in = 1;
  for (int i = 0; i < depth; ++i) {
    const std::string prefix = "enc" + std::to_string(i);
    block(std::make_unique<Conv2d<T>>(prefix + ".conv", ConvGeometry{in, ch[i], 4, 2, 1}, false),
          prefix, ch[i]);
    in = ch[i];
  }
  for (int i = depth - 1; i >= 0; --i) {
    const int out = i > 0 ? ch[i - 1] : ch[0];
    const std::string prefix = "dec" + std::to_string(i);
    block(std::make_unique<TransposedConv2d<T>>(prefix + ".tconv",
                                                ConvGeometry{in, out, 4, 2, 1}),
          prefix, out);
    in = out;
  }
  layers_.push_back(std::make_unique<Conv2d<T>>("head", ConvGeometry{in, 1, 3, 1, 1}, true));
}

template <typename T>
void Autoencoder<T>::initialize() {
  Rng rng = make_stream(config_.seed, 0x1a17);
  for (Parameter<T>* p : parameters()) {
    if (!p->decay) continue;  // batch-norm scale/shift and biases keep their defaults
    for (T& w : p->value.data) w = static_cast<T>(gaussian(rng, config_.init_std));
  }
}

template <typename T>
Tensor<T> Autoencoder<T>::forward(const Tensor<T>& x, Mode mode) {
  if (mode == Mode::kEval) return infer(x);
  require_shape(x.shape, Shape{x.shape.n, 1, config_.side, config_.side}, "autoencoder input");
  Tensor<T> h = layers_.front()->forward(x);
  for (std::size_t i = 1; i < layers_.size(); ++i) h = layers_[i]->forward(h);
  return h;
}

template <typename T>
Tensor<T> Autoencoder<T>::infer(const Tensor<T>& x) const {
  require_shape(x.shape, Shape{x.shape.n, 1, config_.side, config_.side}, "autoencoder input");
  Tensor<T> h = layers_.front()->infer(x);
  for (std::size_t i = 1; i < layers_.size(); ++i) h = layers_[i]->infer(h);
  return h;
}

template <typename T>
Tensor<T> Autoencoder<T>::backward(const Tensor<T>& dlogits) {
  Tensor<T> g = layers_.back()->backward(dlogits);
  for (std::size_t i = layers_.size() - 1; i-- > 0;) g = layers_[i]->backward(g);
  return g;
}

template <typename T>
void Autoencoder<T>::zero_grad() {
  for (Parameter<T>* p : parameters()) p->grad.fill(T(0));
}

template <typename T>
std::vector<Parameter<T>*> Autoencoder<T>::parameters() {
  std::vector<Parameter<T>*> out;
  for (auto& layer : layers_) {
    for (Parameter<T>* p : layer->parameters()) out.push_back(p);
  }
  return out;
}

template <typename T>
std::vector<const Parameter<T>*> Autoencoder<T>::parameters() const {
  std::vector<const Parameter<T>*> out;
  for (auto& layer : layers_) {
    for (Parameter<T>* p : layer->parameters()) out.push_back(p);
  }
  return out;
}

template <typename T>
std::vector<Buffer<T>*> Autoencoder<T>::buffers() {
  std::vector<Buffer<T>*> out;
  for (auto& layer : layers_) {
    for (Buffer<T>* b : layer->buffers()) out.push_back(b);
  }
  return out;
}

template <typename T>
std::vector<const Buffer<T>*> Autoencoder<T>::buffers() const {
  std::vector<const Buffer<T>*> out;
  for (auto& layer : layers_) {
    for (Buffer<T>* b : layer->buffers()) out.push_back(b);
  }
  return out;
}

template <typename T>
std::size_t Autoencoder<T>::parameter_count() const {
  std::size_t n = 0;
  for (const Parameter<T>* p : parameters()) n += p->value.size();
  return n;
}

template <typename T>
std::vector<bool> Autoencoder<T>::kink_state() const {
  std::vector<bool> state;
  for (const auto& layer : layers_) layer->append_kink_state(state);
  return state;
}

template <typename T>
double Autoencoder<T>::l2_penalty() const {
  double sum = 0.0;
  for (const Parameter<T>* p : parameters()) {
    if (!p->decay) continue;
    for (T w : p->value.data) sum += static_cast<double>(w) * w;
  }
  return sum;
}

template <typename T>
void Autoencoder<T>::add_l2_gradient(double lambda) {
  const T scale = static_cast<T>(2.0 * lambda);
  for (Parameter<T>* p : parameters()) {
    if (!p->decay) continue;
    for (std::size_t i = 0; i < p->value.size(); ++i) p->grad.data[i] += scale * p->value.data[i];
  }
}

template <typename T>
template <typename U>
Autoencoder<U> Autoencoder<T>::cast() const {
  Autoencoder<U> out(config_);
  auto dst = out.parameters();
  auto src = parameters();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i]->value = src[i]->value.template cast<U>();
    dst[i]->grad = src[i]->grad.template cast<U>();
  }
  auto dst_b = out.buffers();
  auto src_b = buffers();
  for (std::size_t i = 0; i < dst_b.size(); ++i) dst_b[i]->value = src_b[i]->value.template cast<U>();
  return out;
}

template <typename T>
Tensor<T> head_to_prob(const Tensor<T>& logits) {
  Tensor<T> out(logits.shape);
  for (std::size_t i = 0; i < logits.size(); ++i) out.data[i] = std::tanh(logits.data[i] / T(2));
  return out;
}

double head_to_prob(double logit) { return std::tanh(0.5 * logit); }

template class Autoencoder<float>;
template class Autoencoder<double>;
template Autoencoder<double> Autoencoder<float>::cast<double>() const;
template Autoencoder<float> Autoencoder<double>::cast<float>() const;
template Autoencoder<float> Autoencoder<float>::cast<float>() const;
template Autoencoder<double> Autoencoder<double>::cast<double>() const;
template Tensor<float> head_to_prob(const Tensor<float>&);
template Tensor<double> head_to_prob(const Tensor<double>&);

}  // namespace gridwise::neuralnet
