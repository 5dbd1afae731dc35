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

#ifndef OODEVAL_CLI_HPP_
#define OODEVAL_CLI_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "oodeval/error.hpp"

namespace oodeval
{

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int
{
  kExitOk = 0,
  kExitValidation = 1,  // bad input, config, or contract violation
  kExitIo = 2,
  kExitNumeric = 3,
};

int exit_code_for(ErrorCode code);

/// Flat `key = value` settings; '#' starts a comment. Keys are option names
/// without the leading dashes ("scenario_count" and "scenario-count" are
/// the same key). Throws CONFIG_ERROR on malformed lines, IO_ERROR if the
/// file cannot be read.
std::vector<std::pair<std::string, std::string>> read_run_config(const std::string & path);

/// Runs one subcommand. `args` excludes the program name. Data goes only to
/// declared output paths; progress and errors go to `err`, version/help to
/// `out`.
int dispatch(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

}  // namespace oodeval

#endif  // OODEVAL_CLI_HPP_
