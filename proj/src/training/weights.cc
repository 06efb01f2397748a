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

#include "gridwise/training/weights.h"

#include <string>

#include "gridwise/common/error.h"

namespace gridwise::training {
namespace {

void check_counts(const ClassCounts& counts) {
  if (counts.total <= 0) fail(ErrorCode::kDegenerateCounts, "label has no pixels");
  if (counts.free < 0 || counts.unknown < 0 || counts.occupied < 0 ||
      counts.free + counts.unknown + counts.occupied != counts.total) {
    fail(ErrorCode::kDegenerateCounts,
         "class counts (" + std::to_string(counts.free) + ", " + std::to_string(counts.unknown) +
             ", " + std::to_string(counts.occupied) + ") do not sum to " +
             std::to_string(counts.total));
  }
}

}  // namespace

std::string_view scheme_name(Scheme scheme) {
  return scheme == Scheme::kInverseClassRatio ? "inverse-ratio" : "independent";
}

Scheme scheme_from_name(std::string_view name) {
  if (name == "inverse-ratio") return Scheme::kInverseClassRatio;
  if (name == "independent") return Scheme::kIndependentClassMse;
  fail(ErrorCode::kInvalidArgument, "unknown weighting scheme '" + std::string(name) +
                                        "' (expected inverse-ratio or independent)");
}

ClassAlpha inverse_class_ratio_alpha(const ClassCounts& counts) {
  check_counts(counts);
  const double b = static_cast<double>(counts.total);
  return {1.0 - counts.free / b, 1.0 - counts.unknown / b, 1.0 - counts.occupied / b};
}

ClassAlpha independent_class_alpha(const ClassCounts& counts) {
  check_counts(counts);
  auto inv = [](std::int64_t n) { return n > 0 ? 1.0 / static_cast<double>(n) : 0.0; };
  return {inv(counts.free), inv(counts.unknown), inv(counts.occupied)};
}

ClassAlpha class_alpha(Scheme scheme, const ClassCounts& counts) {
  return scheme == Scheme::kInverseClassRatio ? inverse_class_ratio_alpha(counts)
                                              : independent_class_alpha(counts);
}

std::vector<double> pixel_weights(Scheme scheme, const ClassCounts& counts,
                                  std::span<const CellClass> classes) {
  if (classes.size() != static_cast<std::size_t>(counts.total)) {
    fail(ErrorCode::kDegenerateCounts, "class image size does not match the counts");
  }
  const ClassAlpha alpha = class_alpha(scheme, counts);
  std::vector<double> weights(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    weights[i] = alpha[static_cast<std::size_t>(classes[i])];
  }
  return weights;
}

}  // namespace gridwise::training
