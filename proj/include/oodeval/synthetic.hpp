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

// Deterministic synthetic scenario corpora with controlled maneuver placement
// and position noise.

#ifndef OODEVAL_SYNTHETIC_HPP_
#define OODEVAL_SYNTHETIC_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "oodeval/scenario.hpp"

namespace oodeval
{

enum class Maneuver { kConstantVelocity, kAccelerate, kBrake, kTurnLeft, kTurnRight, kStopAndGo };

std::string_view to_string(Maneuver maneuver);
std::optional<Maneuver> parse_maneuver(std::string_view text);

struct StepWindow
{
  int start_step = 10;
  int end_step = 49;
};

struct Interval
{
  double min = 0.0;
  double max = 0.0;
};

struct CountRange
{
  int min = 2;
  int max = 8;
};

struct SyntheticConfig
{
  int scenario_count = 100;
  int step_count = 91;
  std::map<Maneuver, double> maneuver_mix{{Maneuver::kConstantVelocity, 1.0}};
  // Non-CV maneuvers start and finish inside this window (inclusive steps).
  StepWindow maneuver_window{};
  Interval speed_range{2.0, 15.0};  // m/s
  double noise_sigma = 0.0;         // meters, isotropic Gaussian on positions
  CountRange agent_count_range{};   // total tracks, ego and focal included
  int map_elements_per_scene = 8;
  std::uint64_t seed = 0;
};

/// Throws CONFIG_ERROR naming the first offending field.
void validate_config(const SyntheticConfig & config);

/// Mixes a base seed with an index; used for per-scenario streams so output
/// does not depend on generation order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// A piecewise-analytic motion: constant velocity outside segments, and
/// inside each segment either constant longitudinal acceleration (straight
/// line, speed clamped at zero) or a constant yaw rate at constant speed.
struct MotionSegment
{
  double t_begin = 0.0;  // seconds
  double t_end = 0.0;
  double accel = 0.0;     // m/s^2
  double yaw_rate = 0.0;  // rad/s
};

struct KinematicState
{
  Vec2 position{};
  double heading = 0.0;
  double speed = 0.0;
};

struct MotionProfile
{
  KinematicState start{};
  std::vector<MotionSegment> segments;  // sorted, non-overlapping
};

/// Closed-form state at time t >= 0.
KinematicState evaluate_motion(const MotionProfile & profile, double t);

/// Builds one track by sampling `profile` at every step (all observed).
Track sample_track(
  const MotionProfile & profile, std::string agent_id, AgentKind kind, bool is_ego, int step_count);

/// Returns config.scenario_count valid scenarios. Track 0 is the ego, track 1
/// the fully observed focal agent whose maneuver is recorded in metadata.
std::vector<Scenario> generate_synthetic(const SyntheticConfig & config, int jobs = 1);

/// Adds N(0, sigma^2) to every position coordinate, then recomputes
/// velocities by central differences (one-sided at the ends) and headings
/// from them. sigma == 0 returns the input unchanged.
Scenario add_noise(const Scenario & scenario, double sigma, std::uint64_t seed);
std::vector<Scenario> add_noise(std::span<const Scenario> scenarios, double sigma, std::uint64_t seed);

}  // namespace oodeval

#endif  // OODEVAL_SYNTHETIC_HPP_
