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

#ifndef GRIDWISE_SENSORSIM_MOTION_FILTER_H_
#define GRIDWISE_SENSORSIM_MOTION_FILTER_H_

#include "gridwise/sensorsim/scan.h"

namespace gridwise::sensorsim {

inline constexpr double kDefaultVelocityThreshold = 0.4;  // m/s

// Keeps detections with |radial_velocity| <= v_thresh. Objects moving
// perpendicular to the ray have near-zero radial velocity and survive.
Scan filter_moving(const Scan& scan, double v_thresh = kDefaultVelocityThreshold);

}  // namespace gridwise::sensorsim

#endif  // GRIDWISE_SENSORSIM_MOTION_FILTER_H_
