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

// Canonical line-delimited JSON formats for scenarios and predictions.
//
// Scenario record (one per line, keys in this order):
//   {"schema_version":1,"scenario_id":..,"source_profile":"A2"|"WO"|"synthetic",
//    "step_count":..,"tracks":[{"agent_id","agent_kind","is_ego",
//    "states":[{"x","y","heading","vx","vy","observed"}]}],
//    "map_elements":[{"element_id","kind","points":[[x,y],..]}],
//    "focal_agent_id":string|null,"metadata":{"maneuver"?,"noise_sigma"?,
//    "junction_lane_ids"?}}
//
// Prediction record:
//   {"scenario_id","agent_id","modes":[[[x,y] x 41] x K],"probabilities"?}
//
// Doubles are written in shortest round-trip form, so parse(write(x)) == x.

#ifndef OODEVAL_SCENARIO_IO_HPP_
#define OODEVAL_SCENARIO_IO_HPP_

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodeval/prediction.hpp"
#include "oodeval/scenario.hpp"

namespace oodeval
{

inline constexpr int kSchemaVersion = 1;

/// Serializes one scenario as a single line (no trailing newline).
std::string serialize_scenario(const Scenario & scenario);

/// Parses one record; `line_number` is used in PARSE_ERROR messages.
/// Does not validate.
Scenario parse_scenario_record(std::string_view line, std::size_t line_number);

/// Reads all records; blank lines are skipped. Every scenario is validated
/// and a failure raises ScenarioValidationError. `jobs` > 1 parses records
/// concurrently; result order is file order regardless.
std::vector<Scenario> parse_scenarios(const std::filesystem::path & path, int jobs = 1);
std::vector<Scenario> parse_scenarios(std::istream & in, int jobs = 1);

/// Validates, then writes one record per line. Returns the record count.
std::size_t write_scenarios(std::span<const Scenario> scenarios, const std::filesystem::path & path);
std::size_t write_scenarios(std::span<const Scenario> scenarios, std::ostream & out);

std::string serialize_prediction(const PredictionSet & prediction);
PredictionSet parse_prediction_record(std::string_view line, std::size_t line_number);

/// Prediction files; every record is checked with validate_prediction_set
/// against `horizon_steps`.
std::vector<PredictionSet> parse_predictions(
  const std::filesystem::path & path, std::size_t horizon_steps = 41);
std::size_t write_predictions(
  std::span<const PredictionSet> predictions, const std::filesystem::path & path);

/// Reads every line of a text file; IO_ERROR naming the path on failure.
std::vector<std::string> read_lines(const std::filesystem::path & path);

/// Writes `content` to `path`; IO_ERROR naming the path on failure.
void write_text_file(const std::filesystem::path & path, std::string_view content);

}  // namespace oodeval

#endif  // OODEVAL_SCENARIO_IO_HPP_
