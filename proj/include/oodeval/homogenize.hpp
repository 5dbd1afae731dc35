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

// Cross-dataset homogenization: a common 9.1 s window at 10 Hz with a 5 s
// history (steps 0..49), a 4.1 s future (steps 50..90), lane centers and
// crosswalks only, and a single fully observed non-ego focal agent.

#ifndef OODEVAL_HOMOGENIZE_HPP_
#define OODEVAL_HOMOGENIZE_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "oodeval/scenario.hpp"

namespace oodeval
{

inline constexpr int kHomogenizedSteps = 91;
inline constexpr int kHistorySteps = 50;
inline constexpr int kFutureSteps = 41;
inline constexpr int kCurrentStep = kHistorySteps - 1;
inline constexpr int kFirstFutureStep = kHistorySteps;

// Native layouts of the two source datasets.
inline constexpr int kA2SourceSteps = 110;
inline constexpr int kWOSourceSteps = 91;
inline constexpr int kWOSourceCurrentStep = 10;

inline constexpr int kDefaultMaxAgents = 50;
inline constexpr int kDefaultMaxMapElements = 80;

enum class RejectionReason { kNoValidFocal, kTooShort, kInvalidSource };

std::string_view to_string(RejectionReason reason);

struct HomogenizedSample
{
  Scenario scenario;  // step_count == 91, focal_agent_id set
  int current_step = kCurrentStep;
  std::string focal_agent_id;

  const Track & focal() const;
  const Track * ego() const { return scenario.ego(); }
};

using HomogenizeResult = std::variant<HomogenizedSample, RejectionReason>;

struct HomogenizeOptions
{
  // Interpret every input with this layout instead of its stored profile.
  // A forced profile that contradicts a non-synthetic stored profile is
  // rejected as INVALID_SOURCE.
  std::optional<SourceProfile> forced_profile;
};

HomogenizeResult homogenize_scenario(const Scenario & raw, const HomogenizeOptions & options = {});

/// Per-profile focal rule. A2: the labeled focal, if non-ego and fully
/// observed. WO / synthetic: first non-ego fully observed track in stored
/// order.
std::optional<std::string> select_focal_agent(const Scenario & scenario);
std::optional<std::string> select_focal_agent(const Scenario & scenario, SourceProfile profile);

/// Keeps lane centers and crosswalks, order preserved.
std::vector<MapElement> filter_map(std::span<const MapElement> elements);

/// Keeps ego, focal, then the agents nearest to the ego at current_step until
/// `max_agents` tracks remain; keeps the `max_map` elements with smallest
/// vertex distance to the ego. Ties go to the smaller identifier. Retained
/// items keep their stored order. Throws MISSING_EGO.
HomogenizedSample cap_complexity(
  const HomogenizedSample & sample, int max_agents = kDefaultMaxAgents,
  int max_map = kDefaultMaxMapElements);

/// Lists violated HomogenizedSample invariants (empty when valid).
std::vector<std::string> check_sample(const HomogenizedSample & sample);

/// Rewraps a scenario read back from a homogenized file; throws
/// VALIDATION_ERROR naming the scenario if the sample invariants fail.
HomogenizedSample as_homogenized_sample(Scenario scenario);

}  // namespace oodeval

#endif  // OODEVAL_HOMOGENIZE_HPP_
