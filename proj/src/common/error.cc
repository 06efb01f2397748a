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

#include "gridwise/common/error.h"

namespace gridwise {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kResolutionMismatch: return "ResolutionMismatch";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kNoPath: return "NoPath";
    case ErrorCode::kWrongSensor: return "WrongSensor";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kDegenerateSplit: return "DegenerateSplit";
    case ErrorCode::kDegenerateCounts: return "DegenerateCounts";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kVersionMismatch: return "VersionMismatch";
    case ErrorCode::kDivergence: return "Divergence";
    case ErrorCode::kSensorKindMismatch: return "SensorKindMismatch";
    case ErrorCode::kGeometryMismatch: return "GeometryMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace gridwise
