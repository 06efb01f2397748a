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

#ifndef GRIDWISE_COMMON_PARALLEL_H_
#define GRIDWISE_COMMON_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace gridwise {

// Worker count for internal parallelism. Honors the GRIDWISE_THREADS
// environment variable as an upper bound; never returns less than 1.
int thread_count();

// Runs `body(i)` for i in [0, count). Indices are split into contiguous
// chunks, one per worker, so results written to per-index slots do not
// depend on the worker count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gridwise

#endif  // GRIDWISE_COMMON_PARALLEL_H_
