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

#include "gridwise/neuralnet/tensor.h"

#include <cmath>

#include "gridwise/common/error.h"

namespace gridwise::neuralnet {

std::string Shape::to_string() const {
  return "[" + std::to_string(n) + ", " + std::to_string(c) + ", " + std::to_string(h) +
         ", " + std::to_string(w) + "]";
}

void require_shape(const Shape& actual, const Shape& expected, const std::string& what) {
  if (!(actual == expected)) {
    fail(ErrorCode::kShapeMismatch,
         what + ": expected " + expected.to_string() + ", got " + actual.to_string());
  }
}

template <typename T>
void require_finite(const Tensor<T>& t, const std::string& what) {
  for (T v : t.data) {
    if (!std::isfinite(v)) fail(ErrorCode::kDivergence, what + " produced a non-finite value");
  }
}

template void require_finite(const Tensor<float>&, const std::string&);
template void require_finite(const Tensor<double>&, const std::string&);

}  // namespace gridwise::neuralnet
