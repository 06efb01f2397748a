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

#include "gridwise/neuralnet/layers.h"

#include <cmath>

#include "Eigen/Core"
#include "gridwise/common/error.h"

namespace gridwise::neuralnet {
namespace {

template <typename T>
using RowMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <typename T>
using MatrixMap = Eigen::Map<RowMatrix<T>>;
template <typename T>
using ConstMatrixMap = Eigen::Map<const RowMatrix<T>>;

struct Window {
  int channels;
  int height;  // image the kernel slides over
  int width;
  int kernel;
  int stride;
  int padding;
  int out_h;  // number of kernel positions
  int out_w;

  int rows() const { return channels * kernel * kernel; }
  int cols() const { return out_h * out_w; }
};

Window window_for(int channels, int height, int width, const ConvGeometry& g) {
  Window w{channels, height, width, g.kernel, g.stride, g.padding, 0, 0};
  w.out_h = (height + 2 * g.padding - g.kernel) / g.stride + 1;
  w.out_w = (width + 2 * g.padding - g.kernel) / g.stride + 1;
  return w;
}

// cols[(c*k + kh)*k + kw][oh*out_w + ow] = image[c][oh*s - p + kh][ow*s - p + kw]
template <typename T>
void im2col(const T* image, const Window& w, T* cols) {
  for (int c = 0; c < w.channels; ++c) {
    for (int kh = 0; kh < w.kernel; ++kh) {
      for (int kw = 0; kw < w.kernel; ++kw) {
        T* row = cols + static_cast<std::size_t>((c * w.kernel + kh) * w.kernel + kw) * w.cols();
        for (int oh = 0; oh < w.out_h; ++oh) {
          const int ih = oh * w.stride - w.padding + kh;
          T* out = row + oh * w.out_w;
          if (ih < 0 || ih >= w.height) {
            for (int ow = 0; ow < w.out_w; ++ow) out[ow] = T(0);
            continue;
          }
          const T* in = image + (static_cast<std::size_t>(c) * w.height + ih) * w.width;
          for (int ow = 0; ow < w.out_w; ++ow) {
            const int iw = ow * w.stride - w.padding + kw;
            out[ow] = (iw >= 0 && iw < w.width) ? in[iw] : T(0);
          }
        }
      }
    }
  }
}

// Adjoint of im2col: scatters columns back and sums overlaps into `image`,
// which must be zeroed by the caller.
template <typename T>
void col2im(const T* cols, const Window& w, T* image) {
  for (int c = 0; c < w.channels; ++c) {
    for (int kh = 0; kh < w.kernel; ++kh) {
      for (int kw = 0; kw < w.kernel; ++kw) {
        const T* row =
            cols + static_cast<std::size_t>((c * w.kernel + kh) * w.kernel + kw) * w.cols();
        for (int oh = 0; oh < w.out_h; ++oh) {
          const int ih = oh * w.stride - w.padding + kh;
          if (ih < 0 || ih >= w.height) continue;
          T* out = image + (static_cast<std::size_t>(c) * w.height + ih) * w.width;
          const T* in = row + oh * w.out_w;
          for (int ow = 0; ow < w.out_w; ++ow) {
            const int iw = ow * w.stride - w.padding + kw;
            if (iw >= 0 && iw < w.width) out[iw] += in[ow];
          }
        }
      }
    }
  }
}

void validate_geometry(const ConvGeometry& g) {
  if (g.in_channels <= 0 || g.out_channels <= 0 || g.kernel <= 0 || g.stride <= 0 ||
      g.padding < 0) {
    fail(ErrorCode::kInvalidArgument, "invalid convolution geometry");
  }
}

template <typename T>
Parameter<T> make_parameter(const std::string& name, const Shape& shape, bool decay) {
  return Parameter<T>{name, Tensor<T>(shape), Tensor<T>(shape), decay};
}

}  // namespace

// Conv2d ---------------------------------------------------------------------

template <typename T>
Conv2d<T>::Conv2d(const std::string& name, const ConvGeometry& geometry, bool bias)
    : geometry_(geometry), has_bias_(bias) {
  validate_geometry(geometry);
  weight_ = make_parameter<T>(
      name + ".weight",
      Shape{geometry.out_channels, geometry.in_channels, geometry.kernel, geometry.kernel},
      true);
  if (bias) bias_ = make_parameter<T>(name + ".bias", Shape{geometry.out_channels, 1, 1, 1}, false);
}

template <typename T>
Shape Conv2d<T>::output_shape(const Shape& input) const {
  if (input.c != geometry_.in_channels) {
    fail(ErrorCode::kShapeMismatch, weight_.name + " expects " +
                                        std::to_string(geometry_.in_channels) +
                                        " channels, got " + input.to_string());
  }
  const Window w = window_for(input.c, input.h, input.w, geometry_);
  if (w.out_h <= 0 || w.out_w <= 0) {
    fail(ErrorCode::kShapeMismatch, weight_.name + " input too small: " + input.to_string());
  }
  return Shape{input.n, geometry_.out_channels, w.out_h, w.out_w};
}

template <typename T>
Tensor<T> Conv2d<T>::infer(const Tensor<T>& x) const {
  const Shape out_shape = output_shape(x.shape);
  const Window w = window_for(x.shape.c, x.shape.h, x.shape.w, geometry_);
  Tensor<T> y(out_shape);
  AlignedVector<T> cols(static_cast<std::size_t>(w.rows()) * w.cols());
  const ConstMatrixMap<T> weight(weight_.value.data.data(), geometry_.out_channels, w.rows());
  for (int n = 0; n < x.shape.n; ++n) {
    im2col(x.sample(n), w, cols.data());
    MatrixMap<T> out(y.sample(n), geometry_.out_channels, w.cols());
    out.noalias() = weight * ConstMatrixMap<T>(cols.data(), w.rows(), w.cols());
    if (has_bias_) out.colwise() += Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>(
                                        bias_.value.data.data(), geometry_.out_channels);
  }
  return y;
}

template <typename T>
Tensor<T> Conv2d<T>::forward(const Tensor<T>& x) {
  const Shape out_shape = output_shape(x.shape);
  const Window w = window_for(x.shape.c, x.shape.h, x.shape.w, geometry_);
  input_.shape = x.shape;
  columns_.resize(x.shape.n);
  Tensor<T> y(out_shape);
  const ConstMatrixMap<T> weight(weight_.value.data.data(), geometry_.out_channels, w.rows());
  for (int n = 0; n < x.shape.n; ++n) {
    AlignedVector<T>& cols = columns_[n];
    cols.resize(static_cast<std::size_t>(w.rows()) * w.cols());
    im2col(x.sample(n), w, cols.data());
    MatrixMap<T> out(y.sample(n), geometry_.out_channels, w.cols());
    out.noalias() = weight * ConstMatrixMap<T>(cols.data(), w.rows(), w.cols());
    if (has_bias_) out.colwise() += Eigen::Map<const Eigen::Matrix<T, Eigen::Dynamic, 1>>(
                                        bias_.value.data.data(), geometry_.out_channels);
  }
  return y;
}

template <typename T>
Tensor<T> Conv2d<T>::backward(const Tensor<T>& dy) {
  const Shape& in = input_.shape;
  const Window w = window_for(in.c, in.h, in.w, geometry_);
  require_shape(dy.shape, output_shape(in), weight_.name + " backward");
  Tensor<T> dx(in);
  AlignedVector<T> dcols(static_cast<std::size_t>(w.rows()) * w.cols());
  const ConstMatrixMap<T> weight(weight_.value.data.data(), geometry_.out_channels, w.rows());
  MatrixMap<T> dweight(weight_.grad.data.data(), geometry_.out_channels, w.rows());
  for (int n = 0; n < in.n; ++n) {
    const ConstMatrixMap<T> dout(dy.sample(n), geometry_.out_channels, w.cols());
    const ConstMatrixMap<T> cols(columns_[n].data(), w.rows(), w.cols());
    dweight.noalias() += dout * cols.transpose();
    if (has_bias_) {
      Eigen::Map<Eigen::Matrix<T, Eigen::Dynamic, 1>>(bias_.grad.data.data(),
                                                      geometry_.out_channels) +=
          dout.rowwise().sum();
    }
    MatrixMap<T>(dcols.data(), w.rows(), w.cols()).noalias() = weight.transpose() * dout;
    col2im(dcols.data(), w, dx.sample(n));
  }
  return dx;
}

template <typename T>
std::vector<Parameter<T>*> Conv2d<T>::parameters() {
  if (has_bias_) return {&weight_, &bias_};
  return {&weight_};
}

// TransposedConv2d -----------------------------------------------------------

template <typename T>
TransposedConv2d<T>::TransposedConv2d(const std::string& name, const ConvGeometry& geometry)
    : geometry_(geometry) {
  validate_geometry(geometry);
  weight_ = make_parameter<T>(
      name + ".weight",
      Shape{geometry.in_channels, geometry.out_channels, geometry.kernel, geometry.kernel},
      true);
}

template <typename T>
Shape TransposedConv2d<T>::output_shape(const Shape& input) const {
  if (input.c != geometry_.in_channels) {
    fail(ErrorCode::kShapeMismatch, weight_.name + " expects " +
                                        std::to_string(geometry_.in_channels) +
                                        " channels, got " + input.to_string());
  }
  const int h = (input.h - 1) * geometry_.stride - 2 * geometry_.padding + geometry_.kernel;
  const int w = (input.w - 1) * geometry_.stride - 2 * geometry_.padding + geometry_.kernel;
  if (h <= 0 || w <= 0) {
    fail(ErrorCode::kShapeMismatch, weight_.name + " input too small: " + input.to_string());
  }
  return Shape{input.n, geometry_.out_channels, h, w};
}

template <typename T>
Tensor<T> TransposedConv2d<T>::infer(const Tensor<T>& x) const {
  const Shape out_shape = output_shape(x.shape);
  const Window w = window_for(geometry_.out_channels, out_shape.h, out_shape.w, geometry_);
  Tensor<T> y(out_shape);
  AlignedVector<T> cols(static_cast<std::size_t>(w.rows()) * w.cols());
  const ConstMatrixMap<T> weight(weight_.value.data.data(), geometry_.in_channels, w.rows());
  for (int n = 0; n < x.shape.n; ++n) {
    const ConstMatrixMap<T> in(x.sample(n), geometry_.in_channels, w.cols());
    MatrixMap<T>(cols.data(), w.rows(), w.cols()).noalias() = weight.transpose() * in;
    col2im(cols.data(), w, y.sample(n));
  }
  return y;
}

template <typename T>
Tensor<T> TransposedConv2d<T>::forward(const Tensor<T>& x) {
  input_ = x;
  return infer(x);
}

template <typename T>
Tensor<T> TransposedConv2d<T>::backward(const Tensor<T>& dy) {
  const Shape& in = input_.shape;
  const Shape out_shape = output_shape(in);
  require_shape(dy.shape, out_shape, weight_.name + " backward");
  const Window w = window_for(geometry_.out_channels, out_shape.h, out_shape.w, geometry_);
  Tensor<T> dx(in);
  AlignedVector<T> dcols(static_cast<std::size_t>(w.rows()) * w.cols());
  const ConstMatrixMap<T> weight(weight_.value.data.data(), geometry_.in_channels, w.rows());
  MatrixMap<T> dweight(weight_.grad.data.data(), geometry_.in_channels, w.rows());
  for (int n = 0; n < in.n; ++n) {
    im2col(dy.sample(n), w, dcols.data());
    const ConstMatrixMap<T> cols(dcols.data(), w.rows(), w.cols());
    const ConstMatrixMap<T> x(input_.sample(n), geometry_.in_channels, w.cols());
    dweight.noalias() += x * cols.transpose();
    MatrixMap<T>(dx.sample(n), geometry_.in_channels, w.cols()).noalias() = weight * cols;
  }
  return dx;
}

template <typename T>
std::vector<Parameter<T>*> TransposedConv2d<T>::parameters() {
  return {&weight_};
}

// BatchNorm2d ----------------------------------------------------------------

template <typename T>
BatchNorm2d<T>::BatchNorm2d(const std::string& name, int channels) : channels_(channels) {
  if (channels <= 0) fail(ErrorCode::kInvalidArgument, "batch norm needs channels > 0");
  const Shape shape{channels, 1, 1, 1};
  gamma_ = make_parameter<T>(name + ".gamma", shape, false);
  gamma_.value.fill(T(1));
  beta_ = make_parameter<T>(name + ".beta", shape, false);
  running_mean_ = Buffer<T>{name + ".running_mean", Tensor<T>(shape)};
  running_var_ = Buffer<T>{name + ".running_var", Tensor<T>(shape, T(1))};
}

template <typename T>
Tensor<T> BatchNorm2d<T>::infer(const Tensor<T>& x) const {
  if (x.shape.c != channels_) fail(ErrorCode::kShapeMismatch, gamma_.name + " channel count");
  Tensor<T> y(x.shape);
  const std::size_t plane = static_cast<std::size_t>(x.shape.h) * x.shape.w;
  for (int c = 0; c < channels_; ++c) {
    const T inv_std = T(1) / std::sqrt(running_var_.value.data[c] + T(kEpsilon));
    const T scale = gamma_.value.data[c] * inv_std;
    const T shift = beta_.value.data[c] - running_mean_.value.data[c] * scale;
    for (int n = 0; n < x.shape.n; ++n) {
      const T* in = x.sample(n) + c * plane;
      T* out = y.sample(n) + c * plane;
      for (std::size_t i = 0; i < plane; ++i) out[i] = in[i] * scale + shift;
    }
  }
  return y;
}

template <typename T>
Tensor<T> BatchNorm2d<T>::forward(const Tensor<T>& x) {
  if (x.shape.c != channels_) fail(ErrorCode::kShapeMismatch, gamma_.name + " channel count");
  const std::size_t plane = static_cast<std::size_t>(x.shape.h) * x.shape.w;
  const std::size_t count = plane * x.shape.n;
  if (count < 2) {
    fail(ErrorCode::kShapeMismatch, gamma_.name + " needs at least two values per channel");
  }
  normalized_ = Tensor<T>(x.shape);
  inv_std_.assign(channels_, T(0));
  Tensor<T> y(x.shape);
  for (int c = 0; c < channels_; ++c) {
    double sum = 0.0;
    for (int n = 0; n < x.shape.n; ++n) {
      const T* in = x.sample(n) + c * plane;
      for (std::size_t i = 0; i < plane; ++i) sum += in[i];
    }
    const double mean = sum / static_cast<double>(count);
    double sq = 0.0;
    for (int n = 0; n < x.shape.n; ++n) {
      const T* in = x.sample(n) + c * plane;
      for (std::size_t i = 0; i < plane; ++i) sq += (in[i] - mean) * (in[i] - mean);
    }
    const double var = sq / static_cast<double>(count);
    const T inv_std = static_cast<T>(1.0 / std::sqrt(var + kEpsilon));
    inv_std_[c] = inv_std;
    const T g = gamma_.value.data[c];
    const T b = beta_.value.data[c];
    for (int n = 0; n < x.shape.n; ++n) {
      const T* in = x.sample(n) + c * plane;
      T* xhat = normalized_.sample(n) + c * plane;
      T* out = y.sample(n) + c * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        xhat[i] = static_cast<T>((in[i] - mean)) * inv_std;
        out[i] = g * xhat[i] + b;
      }
    }
    T& rm = running_mean_.value.data[c];
    T& rv = running_var_.value.data[c];
    const double unbiased = sq / static_cast<double>(count - 1);
    rm = static_cast<T>(kMomentum * rm + (1.0 - kMomentum) * mean);
    rv = static_cast<T>(kMomentum * rv + (1.0 - kMomentum) * unbiased);
  }
  return y;
}

template <typename T>
Tensor<T> BatchNorm2d<T>::backward(const Tensor<T>& dy) {
  require_shape(dy.shape, normalized_.shape, gamma_.name + " backward");
  const std::size_t plane = static_cast<std::size_t>(dy.shape.h) * dy.shape.w;
  const double count = static_cast<double>(plane * dy.shape.n);
  Tensor<T> dx(dy.shape);
  for (int c = 0; c < channels_; ++c) {
    double sum_dy = 0.0;
    double sum_dy_xhat = 0.0;
    for (int n = 0; n < dy.shape.n; ++n) {
      const T* g = dy.sample(n) + c * plane;
      const T* xhat = normalized_.sample(n) + c * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        sum_dy += g[i];
        sum_dy_xhat += g[i] * xhat[i];
      }
    }
    gamma_.grad.data[c] += static_cast<T>(sum_dy_xhat);
    beta_.grad.data[c] += static_cast<T>(sum_dy);
    const double scale = gamma_.value.data[c] * inv_std_[c];
    const double mean_dy = sum_dy / count;
    const double mean_dy_xhat = sum_dy_xhat / count;
    for (int n = 0; n < dy.shape.n; ++n) {
      const T* g = dy.sample(n) + c * plane;
      const T* xhat = normalized_.sample(n) + c * plane;
      T* out = dx.sample(n) + c * plane;
      for (std::size_t i = 0; i < plane; ++i) {
        out[i] = static_cast<T>(scale * (g[i] - mean_dy - xhat[i] * mean_dy_xhat));
      }
    }
  }
  return dx;
}

template <typename T>
std::vector<Parameter<T>*> BatchNorm2d<T>::parameters() {
  return {&gamma_, &beta_};
}

template <typename T>
std::vector<Buffer<T>*> BatchNorm2d<T>::buffers() {
  return {&running_mean_, &running_var_};
}

// LeakyRelu ------------------------------------------------------------------

template <typename T>
Tensor<T> LeakyRelu<T>::infer(const Tensor<T>& x) const {
  Tensor<T> y(x.shape);
  const T slope = static_cast<T>(slope_);
  for (std::size_t i = 0; i < x.size(); ++i) y.data[i] = x.data[i] > T(0) ? x.data[i] : slope * x.data[i];
  return y;
}

template <typename T>
Tensor<T> LeakyRelu<T>::forward(const Tensor<T>& x) {
  input_ = x;
  return infer(x);
}

template <typename T>
Tensor<T> LeakyRelu<T>::backward(const Tensor<T>& dy) {
  require_shape(dy.shape, input_.shape, "leaky relu backward");
  Tensor<T> dx(dy.shape);
  const T slope = static_cast<T>(slope_);
  for (std::size_t i = 0; i < dy.size(); ++i) {
    dx.data[i] = input_.data[i] > T(0) ? dy.data[i] : slope * dy.data[i];
  }
  return dx;
}

template <typename T>
void LeakyRelu<T>::append_kink_state(std::vector<bool>& state) const {
  for (T v : input_.data) state.push_back(v > T(0));
}

template class Conv2d<float>;
template class Conv2d<double>;
template class TransposedConv2d<float>;
template class TransposedConv2d<double>;
template class BatchNorm2d<float>;
template class BatchNorm2d<double>;
template class LeakyRelu<float>;
template class LeakyRelu<double>;

}  // namespace gridwise::neuralnet
