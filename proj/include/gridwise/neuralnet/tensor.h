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

#ifndef GRIDWISE_NEURALNET_TENSOR_H_
#define GRIDWISE_NEURALNET_TENSOR_H_

#include <cstddef>
#include <new>
#include <string>
#include <vector>

namespace gridwise::neuralnet {

// Eigen picks its vectorized summation order from buffer addresses, so every
// buffer it reads starts on a 64-byte boundary to keep results reproducible.
template <typename T>
struct AlignedAllocator {
  using value_type = T;
  static constexpr std::align_val_t kAlign{64};

  AlignedAllocator() = default;
  template <typename U>
  AlignedAllocator(const AlignedAllocator<U>&) {}

  T* allocate(std::size_t n) { return static_cast<T*>(::operator new(n * sizeof(T), kAlign)); }
  void deallocate(T* p, std::size_t) { ::operator delete(p, kAlign); }
  template <typename U>
  bool operator==(const AlignedAllocator<U>&) const { return true; }
};

template <typename T>
using AlignedVector = std::vector<T, AlignedAllocator<T>>;

struct Shape {
  int n = 0;
  int c = 0;
  int h = 0;
  int w = 0;

  std::size_t size() const {
    return static_cast<std::size_t>(n) * c * h * w;
  }
  std::size_t sample_size() const { return static_cast<std::size_t>(c) * h * w; }
  bool operator==(const Shape&) const = default;
  std::string to_string() const;
};

// Dense NCHW tensor.
template <typename T>
struct Tensor {
  Shape shape;
  AlignedVector<T> data;

  Tensor() = default;
  explicit Tensor(const Shape& s, T fill = T(0)) : shape(s), data(s.size(), fill) {}

  std::size_t size() const { return data.size(); }
  T* sample(int n) { return data.data() + n * shape.sample_size(); }
  const T* sample(int n) const { return data.data() + n * shape.sample_size(); }
  T& at(int n, int c, int h, int w) {
    return data[((static_cast<std::size_t>(n) * shape.c + c) * shape.h + h) * shape.w + w];
  }
  T at(int n, int c, int h, int w) const {
    return data[((static_cast<std::size_t>(n) * shape.c + c) * shape.h + h) * shape.w + w];
  }
  void fill(T value) { data.assign(data.size(), value); }

  template <typename U>
  Tensor<U> cast() const {
    Tensor<U> out;
    out.shape = shape;
    out.data.assign(data.begin(), data.end());
    return out;
  }
};

// Throws ShapeMismatch with `what` in the message when the shapes differ.
void require_shape(const Shape& actual, const Shape& expected, const std::string& what);

// Throws Divergence if any value is NaN or infinite.
template <typename T>
void require_finite(const Tensor<T>& t, const std::string& what);

}  // namespace gridwise::neuralnet

#endif  // GRIDWISE_NEURALNET_TENSOR_H_
