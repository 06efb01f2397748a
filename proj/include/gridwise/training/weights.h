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

#ifndef GRIDWISE_TRAINING_WEIGHTS_H_
#define GRIDWISE_TRAINING_WEIGHTS_H_

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "gridwise/dataset/patch_pair.h"

namespace gridwise::training {

using dataset::CellClass;
using dataset::ClassCounts;

enum class Scheme { kInverseClassRatio, kIndependentClassMse };

std::string_view scheme_name(Scheme scheme);  // "inverse-ratio" / "independent"
Scheme scheme_from_name(std::string_view name);

// Per-class weight indexed by CellClass (free, unknown, occupied).
using ClassAlpha = std::array<double, 3>;

// alpha_c = 1 - B_c / B.
ClassAlpha inverse_class_ratio_alpha(const ClassCounts& counts);
// alpha_c = 1 / B_c, and 0 for classes without pixels.
ClassAlpha independent_class_alpha(const ClassCounts& counts);
ClassAlpha class_alpha(Scheme scheme, const ClassCounts& counts);

// Per-pixel weights for a label's classes.
std::vector<double> pixel_weights(Scheme scheme, const ClassCounts& counts,
                                  std::span<const CellClass> classes);

}  // namespace gridwise::training

#endif  // GRIDWISE_TRAINING_WEIGHTS_H_
