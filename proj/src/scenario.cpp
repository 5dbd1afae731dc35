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

#include "oodeval/scenario.hpp"

#include <algorithm>
#include <numbers>
#include <unordered_set>

#include <fmt/core.h>

namespace oodeval
{

std::string_view to_string(AgentKind kind)
{
  switch (kind) {
    case AgentKind::kVehicle:
      return "vehicle";
    case AgentKind::kPedestrian:
      return "pedestrian";
    case AgentKind::kCyclist:
      return "cyclist";
    case AgentKind::kOther:
      return "other";
  }
  return "other";
}

std::string_view to_string(MapElementKind kind)
{
  switch (kind) {
    case MapElementKind::kLaneCenter:
      return "lane_center";
    case MapElementKind::kCrosswalk:
      return "crosswalk";
    case MapElementKind::kLaneBoundary:
      return "lane_boundary";
    case MapElementKind::kOther:
      return "other";
  }
  return "other";
}

std::string_view to_string(SourceProfile profile)
{
  switch (profile) {
    case SourceProfile::kA2:
      return "A2";
    case SourceProfile::kWO:
      return "WO";
    case SourceProfile::kSynthetic:
      return "synthetic";
  }
  return "synthetic";
}

std::optional<AgentKind> parse_agent_kind(std::string_view text)
{
  for (auto kind : {AgentKind::kVehicle, AgentKind::kPedestrian, AgentKind::kCyclist, AgentKind::kOther}) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  return std::nullopt;
}

std::optional<MapElementKind> parse_map_element_kind(std::string_view text)
{
  for (auto kind : {MapElementKind::kLaneCenter, MapElementKind::kCrosswalk,
                    MapElementKind::kLaneBoundary, MapElementKind::kOther}) {
    if (to_string(kind) == text) {
      return kind;
    }
  }
  return std::nullopt;
}

std::optional<SourceProfile> parse_source_profile(std::string_view text)
{
  for (auto profile : {SourceProfile::kA2, SourceProfile::kWO, SourceProfile::kSynthetic}) {
    if (to_string(profile) == text) {
      return profile;
    }
  }
  return std::nullopt;
}

bool Track::fully_observed() const
{
  return std::all_of(states.begin(), states.end(), [](const AgentState & s) { return s.observed; });
}

const Track * Scenario::find_track(std::string_view agent_id) const
{
  for (const auto & track : tracks) {
    if (track.agent_id == agent_id) {
      return &track;
    }
  }
  return nullptr;
}

const Track * Scenario::ego() const
{
  for (const auto & track : tracks) {
    if (track.is_ego) {
      return &track;
    }
  }
  return nullptr;
}

std::string_view to_string(ViolationCode code)
{
  switch (code) {
    case ViolationCode::kNonPositiveStepCount:
      return "NON_POSITIVE_STEP_COUNT";
    case ViolationCode::kBadSamplingRate:
      return "BAD_SAMPLING_RATE";
    case ViolationCode::kStepCountMismatch:
      return "STEP_COUNT_MISMATCH";
    case ViolationCode::kNonFinitePosition:
      return "NON_FINITE_POSITION";
    case ViolationCode::kNonFiniteVelocity:
      return "NON_FINITE_VELOCITY";
    case ViolationCode::kNonFiniteHeading:
      return "NON_FINITE_HEADING";
    case ViolationCode::kHeadingOutOfRange:
      return "HEADING_OUT_OF_RANGE";
    case ViolationCode::kMultipleEgo:
      return "MULTIPLE_EGO";
    case ViolationCode::kDuplicateAgentId:
      return "DUPLICATE_AGENT_ID";
    case ViolationCode::kUnknownFocalAgent:
      return "UNKNOWN_FOCAL_AGENT";
    case ViolationCode::kShortPolyline:
      return "SHORT_POLYLINE";
    case ViolationCode::kNonFiniteMapPoint:
      return "NON_FINITE_MAP_POINT";
  }
  return "UNKNOWN";
}

bool ValidationReport::contains(ViolationCode code) const
{
  return std::any_of(
    violations.begin(), violations.end(), [code](const Violation & v) { return v.code == code; });
}

std::string ValidationReport::summary() const
{
  std::string out;
  for (const auto & v : violations) {
    if (!out.empty()) {
      out += "; ";
    }
    out += fmt::format("{} at {}", to_string(v.code), v.where);
  }
  return out;
}

ValidationReport validate_scenario(const Scenario & scenario)
{
  ValidationReport report;
  auto add = [&report](ViolationCode code, std::string where) {
    report.violations.push_back({code, std::move(where)});
  };

  if (scenario.step_count <= 0) {
    add(ViolationCode::kNonPositiveStepCount, "step_count");
  }
  if (scenario.sampling_rate_hz != kSamplingRateHz) {
    add(ViolationCode::kBadSamplingRate, "sampling_rate_hz");
  }

  int ego_count = 0;
  std::unordered_set<std::string> seen_ids;
  for (std::size_t t = 0; t < scenario.tracks.size(); ++t) {
    const Track & track = scenario.tracks[t];
    if (!seen_ids.insert(track.agent_id).second) {
      add(ViolationCode::kDuplicateAgentId, fmt::format("tracks[{}]", t));
    }
    if (track.is_ego) {
      ++ego_count;
    }
    if (static_cast<int>(track.states.size()) != scenario.step_count) {
      add(ViolationCode::kStepCountMismatch, fmt::format("tracks[{}]", t));
    }
    for (std::size_t k = 0; k < track.states.size(); ++k) {
      const AgentState & s = track.states[k];
      if (!is_finite(s.position)) {
        add(ViolationCode::kNonFinitePosition, fmt::format("tracks[{}].states[{}]", t, k));
      }
      if (!is_finite(s.velocity)) {
        add(ViolationCode::kNonFiniteVelocity, fmt::format("tracks[{}].states[{}]", t, k));
      }
      if (!std::isfinite(s.heading)) {
        add(ViolationCode::kNonFiniteHeading, fmt::format("tracks[{}].states[{}]", t, k));
      } else if (s.heading <= -std::numbers::pi || s.heading > std::numbers::pi) {
        add(ViolationCode::kHeadingOutOfRange, fmt::format("tracks[{}].states[{}]", t, k));
      }
    }
  }
  if (ego_count > 1) {
    add(ViolationCode::kMultipleEgo, "tracks");
  }
  if (scenario.focal_agent_id && !seen_ids.contains(*scenario.focal_agent_id)) {
    add(ViolationCode::kUnknownFocalAgent, "focal_agent_id");
  }

  for (std::size_t m = 0; m < scenario.map_elements.size(); ++m) {
    const MapElement & element = scenario.map_elements[m];
    if (element.polyline.size() < 2) {
      add(ViolationCode::kShortPolyline, fmt::format("map_elements[{}]", m));
    }
    if (!std::all_of(element.polyline.begin(), element.polyline.end(), is_finite)) {
      add(ViolationCode::kNonFiniteMapPoint, fmt::format("map_elements[{}]", m));
    }
  }
  return report;
}

const AgentState & state_at(const Track & track, int step)
{
  if (step < 0 || step >= static_cast<int>(track.states.size())) {
    throw Error(
      ErrorCode::kOutOfRange,
      fmt::format("step {} outside [0, {}) for agent '{}'", step, track.states.size(), track.agent_id));
  }
  return track.states[static_cast<std::size_t>(step)];
}

ScenarioValidationError::ScenarioValidationError(const std::string & scenario_id, ValidationReport report)
: Error(ErrorCode::kValidationError, fmt::format("scenario '{}': {}", scenario_id, report.summary())),
  report_(std::move(report))
{
}

}  // namespace oodeval
