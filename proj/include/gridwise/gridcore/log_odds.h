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

#ifndef GRIDWISE_GRIDCORE_LOG_ODDS_H_
#define GRIDWISE_GRIDCORE_LOG_ODDS_H_

namespace gridwise::gridcore {

// Saturation bound for accumulated log-odds.
inline constexpr double kLogOddsLimit = 50.0;
// Probabilities are clamped to [eps, 1 - eps] before conversion.
inline constexpr double kProbabilityEpsilon = 1e-6;

double prob_to_logit(double p);
double logit_to_prob(double l);

// Recursive Bayesian occupancy update in log-odds form: the posterior is the
// sum of the prior and the measurement's inverse sensor model, clamped to
// [-kLogOddsLimit, kLogOddsLimit].
double fuse_cell(double prior, double update);

double clamp_log_odds(double l);

}  // namespace gridwise::gridcore

#endif  // GRIDWISE_GRIDCORE_LOG_ODDS_H_
