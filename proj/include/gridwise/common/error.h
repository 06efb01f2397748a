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

#ifndef GRIDWISE_COMMON_ERROR_H_
#define GRIDWISE_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace gridwise {

enum class ErrorCode {
  kInvalidArgument,
  kResolutionMismatch,
  kOutOfBounds,
  kInvalidSpec,
  kNoPath,
  kWrongSensor,
  kLengthMismatch,
  kDegenerateSplit,
  kDegenerateCounts,
  kIoError,
  kShapeMismatch,
  kVersionMismatch,
  kDivergence,
  kSensorKindMismatch,
  kGeometryMismatch,
};

std::string_view error_code_name(ErrorCode code);

// All library failures surface as this exception; `code()` identifies the
// contract that was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace gridwise

#endif  // GRIDWISE_COMMON_ERROR_H_
