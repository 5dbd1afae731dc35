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

#ifndef OODEVAL_SCENARIO_HPP_
#define OODEVAL_SCENARIO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oodeval/error.hpp"
#include "oodeval/geometry.hpp"

namespace oodeval
{

inline constexpr double kSamplingRateHz = 10.0;
inline constexpr double kStepSeconds = 0.1;

enum class AgentKind { kVehicle, kPedestrian, kCyclist, kOther };
enum class MapElementKind { kLaneCenter, kCrosswalk, kLaneBoundary, kOther };
enum class SourceProfile { kA2, kWO, kSynthetic };

std::string_view to_string(AgentKind kind);
std::string_view to_string(MapElementKind kind);
std::string_view to_string(SourceProfile profile);
std::optional<AgentKind> parse_agent_kind(std::string_view text);
std::optional<MapElementKind> parse_map_element_kind(std::string_view text);
std::optional<SourceProfile> parse_source_profile(std::string_view text);

struct AgentState
{
  Vec2 position{};
  double heading = 0.0;  // radians, CCW from +x, in (-pi, pi]
  Vec2 velocity{};
  bool observed = true;

  friend bool operator==(const AgentState &, const AgentState &) = default;
};

struct Track
{
  std::string agent_id;
  AgentKind agent_kind = AgentKind::kVehicle;
  bool is_ego = false;
  std::vector<AgentState> states;  // one per step

  bool fully_observed() const;

  friend bool operator==(const Track &, const Track &) = default;
};

struct MapElement
{
  std::string element_id;
  MapElementKind kind = MapElementKind::kLaneCenter;
  std::vector<Vec2> polyline;

  friend bool operator==(const MapElement &, const MapElement &) = default;
};

struct ScenarioMetadata
{
  std::optional<std::string> maneuver;
  std::optional<double> noise_sigma;
  // Source-side junction labels; homogenization drops them.
  std::vector<std::string> junction_lane_ids;

  friend bool operator==(const ScenarioMetadata &, const ScenarioMetadata &) = default;
};

struct Scenario
{
  std::string scenario_id;
  SourceProfile source_profile = SourceProfile::kSynthetic;
  double sampling_rate_hz = kSamplingRateHz;
  int step_count = 0;
  std::vector<Track> tracks;
  std::vector<MapElement> map_elements;
  std::optional<std::string> focal_agent_id;
  ScenarioMetadata metadata;

  const Track * find_track(std::string_view agent_id) const;
  const Track * ego() const;

  friend bool operator==(const Scenario &, const Scenario &) = default;
};

enum class ViolationCode
{
  kNonPositiveStepCount,
  kBadSamplingRate,
  kStepCountMismatch,
  kNonFinitePosition,
  kNonFiniteVelocity,
  kNonFiniteHeading,
  kHeadingOutOfRange,
  kMultipleEgo,
  kDuplicateAgentId,
  kUnknownFocalAgent,
  kShortPolyline,
  kNonFiniteMapPoint,
};

/// e.g. "STEP_COUNT_MISMATCH".
std::string_view to_string(ViolationCode code);

struct Violation
{
  ViolationCode code;
  std::string where;  // e.g. "tracks[2].states[17]"
};

struct ValidationReport
{
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool contains(ViolationCode code) const;
  std::string summary() const;
};

/// Collects every structural invariant violation; an empty report means valid.
ValidationReport validate_scenario(const Scenario & scenario);

/// Stored state at `step`; throws OUT_OF_RANGE outside [0, states.size()).
const AgentState & state_at(const Track & track, int step);

/// Thrown when a scenario fails validation at an I/O or API boundary.
class ScenarioValidationError : public Error
{
public:
  ScenarioValidationError(const std::string & scenario_id, ValidationReport report);
  const ValidationReport & report() const noexcept { return report_; }

private:
  ValidationReport report_;
};

}  // namespace oodeval

#endif  // OODEVAL_SCENARIO_HPP_
