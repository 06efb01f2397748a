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

#ifndef GRIDWISE_DATASET_AUGMENT_H_
#define GRIDWISE_DATASET_AUGMENT_H_

#include <span>
#include <vector>

#include "gridwise/common/random.h"
#include "gridwise/dataset/patch_pair.h"

namespace gridwise::dataset {

// Element of the dihedral group of the square: rotate counter-clockwise by
// quarter_turns * 90 degrees, then mirror left-right if `flip`.
struct D4Element {
  int quarter_turns = 0;
  bool flip = false;

  static D4Element from_index(int index);  // 0..7
  int index() const { return quarter_turns + (flip ? 4 : 0); }
};

template <typename T>
std::vector<T> transform_image(std::span<const T> image, int side, D4Element g);

PatchPair apply(const PatchPair& pair, D4Element g);

PatchPair augment(const PatchPair& pair, Rng& rng);

}  // namespace gridwise::dataset

#endif  // GRIDWISE_DATASET_AUGMENT_H_
