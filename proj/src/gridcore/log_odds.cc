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

#include "gridwise/gridcore/log_odds.h"

#include <algorithm>
#include <cmath>

namespace gridwise::gridcore {

double prob_to_logit(double p) {
  p = std::clamp(p, kProbabilityEpsilon, 1.0 - kProbabilityEpsilon);
  return std::log(p / (1.0 - p));
}

double logit_to_prob(double l) { return 1.0 / (1.0 + std::exp(-l)); }

double clamp_log_odds(double l) {
  return std::clamp(l, -kLogOddsLimit, kLogOddsLimit);
}

double fuse_cell(double prior, double update) {
  return clamp_log_odds(prior + update);
}

}  // namespace gridwise::gridcore
