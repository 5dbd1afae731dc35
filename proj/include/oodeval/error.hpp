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

#ifndef OODEVAL_ERROR_HPP_
#define OODEVAL_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace oodeval
{

enum class ErrorCode
{
  kOutOfRange,
  kParseError,
  kValidationError,
  kIoError,
  kConfigError,
  kMissingEgo,
  kUnknownAgent,
  kNotObserved,
  kFitError,
  kPredictionError,
  kInsufficientModes,
  kEmptySet,
  kTagMismatch,
  kMissingReference,
  kDuplicateRun,
  kDegenerateData,
};

/// Machine-readable name, e.g. "OUT_OF_RANGE".
std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & message)
  : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code)
  {
  }

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace oodeval

#endif  // OODEVAL_ERROR_HPP_
