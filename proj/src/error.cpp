// Copyright 2026 The privfl-lab Authors
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

#include "privfl/error.hpp"

namespace privfl {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kPreconditionViolated:
      return "PreconditionViolated";
    case ErrorCode::kInvalidArity:
      return "InvalidArity";
    case ErrorCode::kNotFound:
      return "NotFound";
    case ErrorCode::kUnknownFixture:
      return "UnknownFixture";
    case ErrorCode::kEmptyFacilitySet:
      return "EmptyFacilitySet";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kDegenerateParams:
      return "DegenerateParams";
    case ErrorCode::kRadiusTooLarge:
      return "RadiusTooLarge";
    case ErrorCode::kInvalidPartition:
      return "InvalidPartition";
    case ErrorCode::kEmptyCandidates:
      return "EmptyCandidates";
    case ErrorCode::kConfigInvalid:
      return "ConfigInvalid";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kParseError:
      return "ParseError";
    case ErrorCode::kInternal:
      return "Internal";
  }
  return "Unknown";
}

}  // namespace privfl
