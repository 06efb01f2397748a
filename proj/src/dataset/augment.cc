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

#include "gridwise/dataset/augment.h"

#include <cstdint>

#include "gridwise/common/error.h"

namespace gridwise::dataset {

D4Element D4Element::from_index(int index) {
  if (index < 0 || index > 7) fail(ErrorCode::kInvalidArgument, "D4 index must be in 0..7");
  return D4Element{index % 4, index >= 4};
}

template <typename T>
std::vector<T> transform_image(std::span<const T> image, int side, D4Element g) {
  if (image.size() != static_cast<std::size_t>(side) * side) {
    fail(ErrorCode::kShapeMismatch, "image is not side x side");
  }
  std::vector<T> out(image.size());
  const int last = side - 1;
  for (int r = 0; r < side; ++r) {
    for (int c = 0; c < side; ++c) {
      int rr = r;
      int cc = c;
      for (int q = 0; q < g.quarter_turns; ++q) {
        const int t = rr;
        rr = last - cc;
        cc = t;
      }
      if (g.flip) cc = last - cc;
      out[static_cast<std::size_t>(rr) * side + cc] = image[static_cast<std::size_t>(r) * side + c];
    }
  }
  return out;
}

template std::vector<float> transform_image(std::span<const float>, int, D4Element);
template std::vector<CellClass> transform_image(std::span<const CellClass>, int, D4Element);
template std::vector<std::uint8_t> transform_image(std::span<const std::uint8_t>, int,
                                                   D4Element);

PatchPair apply(const PatchPair& pair, D4Element g) {
  PatchPair out = pair;
  out.input = transform_image<float>(pair.input, pair.side, g);
  out.label = transform_image<float>(pair.label, pair.side, g);
  out.classes = transform_image<CellClass>(pair.classes, pair.side, g);
  return out;
}

PatchPair augment(const PatchPair& pair, Rng& rng) {
  return apply(pair, D4Element::from_index(std::uniform_int_distribution<int>(0, 7)(rng)));
}

}  // namespace gridwise::dataset
