// Copyright 2026 The oodeval Authors
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

#include "oodeval/error.hpp"

namespace oodeval
{

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kOutOfRange:
      return "OUT_OF_RANGE";
    case ErrorCode::kParseError:
      return "PARSE_ERROR";
    case ErrorCode::kValidationError:
      return "VALIDATION_ERROR";
    case ErrorCode::kIoError:
      return "IO_ERROR";
    case ErrorCode::kConfigError:
      return "CONFIG_ERROR";
    case ErrorCode::kMissingEgo:
      return "MISSING_EGO";
    case ErrorCode::kUnknownAgent:
      return "UNKNOWN_AGENT";
    case ErrorCode::kNotObserved:
      return "NOT_OBSERVED";
    case ErrorCode::kFitError:
      return "FIT_ERROR";
    case ErrorCode::kPredictionError:
      return "PREDICTION_ERROR";
    case ErrorCode::kInsufficientModes:
      return "INSUFFICIENT_MODES";
    case ErrorCode::kEmptySet:
      return "EMPTY_SET";
    case ErrorCode::kTagMismatch:
      return "TAG_MISMATCH";
    case ErrorCode::kMissingReference:
      return "MISSING_REFERENCE";
    case ErrorCode::kDuplicateRun:
      return "DUPLICATE_RUN";
    case ErrorCode::kDegenerateData:
      return "DEGENERATE_DATA";
  }
  return "UNKNOWN";
}

}  // namespace oodeval
