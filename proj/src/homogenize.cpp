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

#include "oodeval/homogenize.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <unordered_set>

#include <fmt/core.h>

namespace oodeval
{

std::string_view to_string(RejectionReason reason)
{
  switch (reason) {
    case RejectionReason::kNoValidFocal:
      return "NO_VALID_FOCAL";
    case RejectionReason::kTooShort:
      return "TOO_SHORT";
    case RejectionReason::kInvalidSource:
      return "INVALID_SOURCE";
  }
  return "INVALID_SOURCE";
}

const Track & HomogenizedSample::focal() const
{
  const Track * track = scenario.find_track(focal_agent_id);
  if (track == nullptr) {
    throw Error(
      ErrorCode::kUnknownAgent,
      fmt::format("scenario '{}': focal agent '{}' not found", scenario.scenario_id, focal_agent_id));
  }
  return *track;
}

namespace
{

bool is_valid_focal(const Track & track) { return !track.is_ego && track.fully_observed(); }

int required_steps(SourceProfile profile)
{
  return profile == SourceProfile::kA2 ? kA2SourceSteps : kWOSourceSteps;
}

}  // namespace

std::optional<std::string> select_focal_agent(const Scenario & scenario, SourceProfile profile)
{
  if (profile == SourceProfile::kA2) {
    if (!scenario.focal_agent_id) {
      return std::nullopt;
    }
    const Track * labeled = scenario.find_track(*scenario.focal_agent_id);
    if (labeled == nullptr || !is_valid_focal(*labeled)) {
      return std::nullopt;
    }
    return labeled->agent_id;
  }
  for (const Track & track : scenario.tracks) {
    if (is_valid_focal(track)) {
      return track.agent_id;
    }
  }
  return std::nullopt;
}

std::optional<std::string> select_focal_agent(const Scenario & scenario)
{
  return select_focal_agent(scenario, scenario.source_profile);
}

std::vector<MapElement> filter_map(std::span<const MapElement> elements)
{
  std::vector<MapElement> kept;
  for (const MapElement & element : elements) {
    if (element.kind == MapElementKind::kLaneCenter || element.kind == MapElementKind::kCrosswalk) {
      kept.push_back(element);
    }
  }
  return kept;
}

HomogenizeResult homogenize_scenario(const Scenario & raw, const HomogenizeOptions & options)
{
  ValidationReport report = validate_scenario(raw);
  if (!report.ok()) {
    throw ScenarioValidationError(raw.scenario_id, std::move(report));
  }
  const SourceProfile profile = options.forced_profile.value_or(raw.source_profile);
  if (raw.step_count < required_steps(profile)) {
    return RejectionReason::kTooShort;
  }
  if (
    options.forced_profile && raw.source_profile != SourceProfile::kSynthetic &&
    raw.source_profile != *options.forced_profile) {
    return RejectionReason::kInvalidSource;
  }

  // A2: keep the native 5 s history, cut the 6 s future to 4.1 s.
  // WO: the same 91 steps, with the current step moved from 10 to 49.
  Scenario sliced;
  sliced.scenario_id = raw.scenario_id;
  sliced.source_profile = raw.source_profile;
  sliced.sampling_rate_hz = raw.sampling_rate_hz;
  sliced.step_count = kHomogenizedSteps;
  sliced.tracks.reserve(raw.tracks.size());
  for (const Track & track : raw.tracks) {
    Track cut = track;
    cut.states.resize(kHomogenizedSteps);
    sliced.tracks.push_back(std::move(cut));
  }
  sliced.map_elements = filter_map(raw.map_elements);
  sliced.focal_agent_id = raw.focal_agent_id;
  sliced.metadata = raw.metadata;
  sliced.metadata.junction_lane_ids.clear();

  std::optional<std::string> focal = select_focal_agent(sliced, profile);
  if (!focal) {
    return RejectionReason::kNoValidFocal;
  }
  sliced.focal_agent_id = *focal;

  HomogenizedSample sample;
  sample.scenario = std::move(sliced);
  sample.current_step = kCurrentStep;
  sample.focal_agent_id = *focal;
  return sample;
}

HomogenizedSample cap_complexity(const HomogenizedSample & sample, int max_agents, int max_map)
{
  if (max_agents < 1 || max_map < 1) {
    throw Error(ErrorCode::kConfigError, "complexity caps must be >= 1");
  }
  const Track * ego = sample.ego();
  if (ego == nullptr) {
    throw Error(
      ErrorCode::kMissingEgo, fmt::format("scenario '{}' has no ego track", sample.scenario.scenario_id));
  }
  const Vec2 ego_position = state_at(*ego, sample.current_step).position;
  constexpr double kUnobserved = std::numeric_limits<double>::infinity();

  using Ranked = std::tuple<double, std::string>;  // squared distance, id
  std::vector<Ranked> candidates;
  std::unordered_set<std::string> keep_agents{ego->agent_id, sample.focal_agent_id};
  for (const Track & track : sample.scenario.tracks) {
    if (keep_agents.contains(track.agent_id)) {
      continue;
    }
    const AgentState & s = state_at(track, sample.current_step);
    const double d2 = s.observed ? squared_norm(s.position - ego_position) : kUnobserved;
    candidates.emplace_back(d2, track.agent_id);
  }
  std::sort(candidates.begin(), candidates.end());
  const std::size_t free_slots =
    static_cast<std::size_t>(std::max(0, max_agents - static_cast<int>(keep_agents.size())));
  for (std::size_t i = 0; i < std::min(free_slots, candidates.size()); ++i) {
    keep_agents.insert(std::get<1>(candidates[i]));
  }

  // Element ids need not be unique, so ranks carry the stored index.
  std::vector<std::tuple<double, std::string, std::size_t>> elements;
  const auto & map = sample.scenario.map_elements;
  for (std::size_t e = 0; e < map.size(); ++e) {
    double best = kUnobserved;
    for (const Vec2 & p : map[e].polyline) {
      best = std::min(best, squared_norm(p - ego_position));
    }
    elements.emplace_back(best, map[e].element_id, e);
  }
  std::sort(elements.begin(), elements.end());
  std::vector<bool> keep_elements(map.size(), false);
  for (std::size_t i = 0; i < std::min(static_cast<std::size_t>(max_map), elements.size()); ++i) {
    keep_elements[std::get<2>(elements[i])] = true;
  }

  HomogenizedSample capped;
  capped.current_step = sample.current_step;
  capped.focal_agent_id = sample.focal_agent_id;
  const Scenario & in = sample.scenario;
  capped.scenario.scenario_id = in.scenario_id;
  capped.scenario.source_profile = in.source_profile;
  capped.scenario.sampling_rate_hz = in.sampling_rate_hz;
  capped.scenario.step_count = in.step_count;
  capped.scenario.focal_agent_id = in.focal_agent_id;
  capped.scenario.metadata = in.metadata;
  for (const Track & track : in.tracks) {
    if (keep_agents.contains(track.agent_id)) {
      capped.scenario.tracks.push_back(track);
    }
  }
  for (std::size_t e = 0; e < in.map_elements.size(); ++e) {
    if (keep_elements[e]) {
      capped.scenario.map_elements.push_back(in.map_elements[e]);
    }
  }
  return capped;
}

std::vector<std::string> check_sample(const HomogenizedSample & sample)
{
  std::vector<std::string> problems;
  const Scenario & s = sample.scenario;
  if (s.step_count != kHomogenizedSteps) {
    problems.push_back(fmt::format("step_count {} != {}", s.step_count, kHomogenizedSteps));
  }
  if (sample.current_step != kCurrentStep) {
    problems.push_back(fmt::format("current_step {} != {}", sample.current_step, kCurrentStep));
  }
  const ValidationReport report = validate_scenario(s);
  if (!report.ok()) {
    problems.push_back(report.summary());
  }
  if (!s.focal_agent_id || *s.focal_agent_id != sample.focal_agent_id) {
    problems.push_back("scenario focal_agent_id does not match the sample");
  }
  const Track * focal = s.find_track(sample.focal_agent_id);
  if (focal == nullptr) {
    problems.push_back(fmt::format("focal agent '{}' missing", sample.focal_agent_id));
  } else {
    if (focal->is_ego) {
      problems.push_back("focal agent is the ego");
    }
    if (!focal->fully_observed()) {
      problems.push_back("focal agent is not fully observed");
    }
  }
  for (const MapElement & element : s.map_elements) {
    if (element.kind != MapElementKind::kLaneCenter && element.kind != MapElementKind::kCrosswalk) {
      problems.push_back(fmt::format("map element '{}' has kind {}", element.element_id, to_string(element.kind)));
    }
  }
  if (!s.metadata.junction_lane_ids.empty()) {
    problems.push_back("junction labels present");
  }
  return problems;
}

HomogenizedSample as_homogenized_sample(Scenario scenario)
{
  HomogenizedSample sample;
  sample.focal_agent_id = scenario.focal_agent_id.value_or("");
  sample.scenario = std::move(scenario);
  const std::vector<std::string> problems = check_sample(sample);
  if (!problems.empty()) {
    std::string joined;
    for (const auto & p : problems) {
      joined += joined.empty() ? p : "; " + p;
    }
    throw Error(
      ErrorCode::kValidationError,
      fmt::format("scenario '{}' is not a homogenized sample: {}", sample.scenario.scenario_id, joined));
  }
  return sample;
}

}  // namespace oodeval
