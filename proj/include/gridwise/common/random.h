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

#ifndef GRIDWISE_COMMON_RANDOM_H_
#define GRIDWISE_COMMON_RANDOM_H_

#include <cstdint>
#include <random>

namespace gridwise {

using Rng = std::mt19937_64;

// Derives an independent stream seed from a base seed and a stream index
// (splitmix64 finalizer over both words).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

inline Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  return Rng(stream_seed(seed, index));
}

double uniform(Rng& rng, double lo, double hi);
double gaussian(Rng& rng, double sigma);
int poisson(Rng& rng, double mean);

}  // namespace gridwise

#endif  // GRIDWISE_COMMON_RANDOM_H_
