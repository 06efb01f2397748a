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

#include "gridwise/sensorsim/motion_filter.h"

#include <cmath>

#include "gridwise/common/error.h"

namespace gridwise::sensorsim {

Scan filter_moving(const Scan& scan, double v_thresh) {
  if (!(v_thresh > 0.0)) fail(ErrorCode::kInvalidArgument, "v_thresh must be positive");
  Scan kept{scan.kind, scan.timestamp, scan.pose, {}};
  for (const Detection& d : scan.detections) {
    if (std::abs(d.radial_velocity) <= v_thresh) kept.detections.push_back(d);
  }
  return kept;
}

}  // namespace gridwise::sensorsim
