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

#include "oodeval/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/random/discrete_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <fmt/core.h>

#include "oodeval/parallel.hpp"

namespace oodeval
{

std::string_view to_string(Maneuver maneuver)
{
  switch (maneuver) {
    case Maneuver::kConstantVelocity:
      return "constant_velocity";
    case Maneuver::kAccelerate:
      return "accelerate";
    case Maneuver::kBrake:
      return "brake";
    case Maneuver::kTurnLeft:
      return "turn_left";
    case Maneuver::kTurnRight:
      return "turn_right";
    case Maneuver::kStopAndGo:
      return "stop_and_go";
  }
  return "constant_velocity";
}

std::optional<Maneuver> parse_maneuver(std::string_view text)
{
  for (auto m : {Maneuver::kConstantVelocity, Maneuver::kAccelerate, Maneuver::kBrake,
                 Maneuver::kTurnLeft, Maneuver::kTurnRight, Maneuver::kStopAndGo}) {
    if (to_string(m) == text) {
      return m;
    }
  }
  return std::nullopt;
}

void validate_config(const SyntheticConfig & config)
{
  auto fail = [](const std::string & what) { throw Error(ErrorCode::kConfigError, what); };
  if (config.scenario_count < 0) {
    fail("scenario_count must be >= 0");
  }
  if (config.step_count < 2) {
    fail("step_count must be >= 2");
  }
  if (config.maneuver_mix.empty()) {
    fail("maneuver_mix must not be empty");
  }
  double total_weight = 0.0;
  for (const auto & [maneuver, weight] : config.maneuver_mix) {
    if (!std::isfinite(weight) || weight < 0.0) {
      fail(fmt::format("maneuver_mix weight for {} must be finite and >= 0", to_string(maneuver)));
    }
    total_weight += weight;
  }
  if (!(total_weight > 0.0)) {
    fail("maneuver_mix weights must sum to > 0");
  }
  const StepWindow & w = config.maneuver_window;
  if (w.start_step < 0 || w.start_step > w.end_step || w.end_step >= config.step_count) {
    fail(fmt::format(
      "maneuver_window [{}, {}] must satisfy 0 <= start <= end < step_count ({})", w.start_step,
      w.end_step, config.step_count));
  }
  if (
    !std::isfinite(config.speed_range.min) || !std::isfinite(config.speed_range.max) ||
    config.speed_range.min < 0.0 || config.speed_range.min > config.speed_range.max) {
    fail("speed_range must satisfy 0 <= min <= max");
  }
  if (!std::isfinite(config.noise_sigma) || config.noise_sigma < 0.0) {
    fail("noise_sigma must be finite and >= 0");
  }
  if (config.agent_count_range.min < 2 || config.agent_count_range.min > config.agent_count_range.max) {
    fail("agent_count_range must satisfy 2 <= min <= max (ego and focal are always present)");
  }
  if (config.map_elements_per_scene < 0) {
    fail("map_elements_per_scene must be >= 0");
  }
}

namespace
{

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
  return splitmix64(splitmix64(seed) ^ splitmix64(index ^ 0xD1B54A32D192ED03ULL));
}

namespace
{

void advance_constant_velocity(KinematicState & state, double dt)
{
  if (dt <= 0.0) {
    return;
  }
  const Vec2 velocity = state.speed * unit_from_heading(state.heading);
  state.position = state.position + dt * velocity;
}

void advance_segment(KinematicState & state, const MotionSegment & segment, double dt)
{
  if (dt <= 0.0) {
    return;
  }
  if (segment.accel != 0.0 && segment.yaw_rate != 0.0) {
    throw Error(ErrorCode::kConfigError, "motion segments combine acceleration and yaw rate");
  }
  if (segment.yaw_rate != 0.0) {
    const double theta0 = state.heading;
    const double theta1 = theta0 + segment.yaw_rate * dt;
    const double radius = state.speed / segment.yaw_rate;
    state.position = state.position +
                     Vec2{radius * (std::sin(theta1) - std::sin(theta0)),
                          radius * (std::cos(theta0) - std::cos(theta1))};
    state.heading = theta1;
    return;
  }
  double travel_time = dt;
  if (segment.accel < 0.0) {
    travel_time = std::min(dt, state.speed / -segment.accel);
  }
  const double distance =
    state.speed * travel_time + 0.5 * segment.accel * travel_time * travel_time;
  state.position = state.position + distance * unit_from_heading(state.heading);
  state.speed = std::max(0.0, state.speed + segment.accel * travel_time);
}

}  // namespace

KinematicState evaluate_motion(const MotionProfile & profile, double t)
{
  KinematicState state = profile.start;
  double cursor = 0.0;
  for (const MotionSegment & segment : profile.segments) {
    if (t <= segment.t_begin) {
      break;
    }
    advance_constant_velocity(state, segment.t_begin - cursor);
    const double until = std::min(t, segment.t_end);
    advance_segment(state, segment, until - segment.t_begin);
    cursor = until;
  }
  advance_constant_velocity(state, t - cursor);
  state.heading = wrap_angle(state.heading);
  return state;
}

Track sample_track(
  const MotionProfile & profile, std::string agent_id, AgentKind kind, bool is_ego, int step_count)
{
  Track track;
  track.agent_id = std::move(agent_id);
  track.agent_kind = kind;
  track.is_ego = is_ego;
  track.states.reserve(static_cast<std::size_t>(step_count));
  for (int k = 0; k < step_count; ++k) {
    const KinematicState s = evaluate_motion(profile, k * kStepSeconds);
    AgentState state;
    state.position = s.position;
    state.heading = s.heading;
    state.velocity = s.speed * unit_from_heading(s.heading);
    state.observed = true;
    track.states.push_back(state);
  }
  return track;
}

namespace
{

using Engine = std::mt19937_64;

double uniform(Engine & rng, double lo, double hi)
{
  if (lo == hi) {
    return lo;
  }
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(Engine & rng, int lo, int hi)
{
  return boost::random::uniform_int_distribution<int>(lo, hi)(rng);
}

double uniform_heading(Engine & rng) { return wrap_angle(uniform(rng, -std::numbers::pi, std::numbers::pi)); }

// Places the maneuver as [begin, begin + length] steps inside the window.
std::vector<MotionSegment> plan_maneuver(
  Maneuver maneuver, double start_speed, const StepWindow & window, Engine & rng)
{
  if (maneuver == Maneuver::kConstantVelocity) {
    return {};
  }
  const int latest_begin = std::max(window.start_step, window.end_step - 5);
  const int begin = uniform_int(rng, window.start_step, latest_begin);
  const int room = window.end_step - begin;
  const int length = room == 0 ? 0 : uniform_int(rng, (room + 1) / 2, room);
  if (length == 0) {
    return {};
  }
  const double t0 = begin * kStepSeconds;
  const double t1 = (begin + length) * kStepSeconds;

  switch (maneuver) {
    case Maneuver::kAccelerate:
      return {{t0, t1, uniform(rng, 1.0, 3.0), 0.0}};
    case Maneuver::kBrake:
      return {{t0, t1, -uniform(rng, 1.0, 4.0), 0.0}};
    case Maneuver::kTurnLeft:
    case Maneuver::kTurnRight: {
      const double angle = uniform(rng, std::numbers::pi / 6.0, std::numbers::pi / 2.0);
      const double sign = maneuver == Maneuver::kTurnLeft ? 1.0 : -1.0;
      return {{t0, t1, 0.0, sign * angle / (t1 - t0)}};
    }
    case Maneuver::kStopAndGo: {
      if (length < 3 || start_speed <= 0.0) {
        return {{t0, t1, -uniform(rng, 1.0, 4.0), 0.0}};
      }
      const int brake_steps = length / 3;
      const int dwell_steps = length / 3;
      const int go_steps = length - brake_steps - dwell_steps;
      const double ta = t0 + brake_steps * kStepSeconds;
      const double tb = ta + dwell_steps * kStepSeconds;
      return {
        {t0, ta, -start_speed / (ta - t0), 0.0},
        {tb, t1, start_speed / (t1 - tb), 0.0},
      };
    }
    case Maneuver::kConstantVelocity:
      break;
  }
  return {};
}

MapElement random_map_element(int index, Engine & rng)
{
  MapElement element;
  element.element_id = fmt::format("m{:03d}", index);
  const double roll = uniform(rng, 0.0, 1.0);
  element.kind = roll < 0.6 ? MapElementKind::kLaneCenter
                 : roll < 0.8 ? MapElementKind::kCrosswalk
                              : MapElementKind::kLaneBoundary;
  const Vec2 origin{uniform(rng, -80.0, 80.0), uniform(rng, -80.0, 80.0)};
  const Vec2 direction = unit_from_heading(uniform_heading(rng));
  const double length = uniform(rng, 10.0, 60.0);
  constexpr int kPoints = 10;
  for (int i = 0; i < kPoints; ++i) {
    element.polyline.push_back(origin + (length * i / (kPoints - 1)) * direction);
  }
  return element;
}

Scenario generate_one(const SyntheticConfig & config, std::size_t index)
{
  const std::uint64_t scenario_seed = derive_seed(config.seed, index);
  Engine rng(scenario_seed);

  std::vector<Maneuver> kinds;
  std::vector<double> weights;
  for (const auto & [maneuver, weight] : config.maneuver_mix) {
    kinds.push_back(maneuver);
    weights.push_back(weight);
  }
  boost::random::discrete_distribution<int> pick_maneuver(weights.begin(), weights.end());

  Scenario scenario;
  scenario.scenario_id = fmt::format("syn_{:06d}", index);
  scenario.source_profile = SourceProfile::kSynthetic;
  scenario.step_count = config.step_count;

  const int agent_count = uniform_int(rng, config.agent_count_range.min, config.agent_count_range.max);
  Maneuver focal_maneuver = Maneuver::kConstantVelocity;
  for (int a = 0; a < agent_count; ++a) {
    MotionProfile profile;
    const bool is_ego = a == 0;
    const double extent = is_ego ? 5.0 : 60.0;
    profile.start.position = {uniform(rng, -extent, extent), uniform(rng, -extent, extent)};
    profile.start.heading = uniform_heading(rng);
    profile.start.speed = uniform(rng, config.speed_range.min, config.speed_range.max);

    Maneuver maneuver = Maneuver::kConstantVelocity;
    if (!is_ego) {
      maneuver = kinds[static_cast<std::size_t>(pick_maneuver(rng))];
      profile.segments = plan_maneuver(maneuver, profile.start.speed, config.maneuver_window, rng);
    }
    AgentKind kind = AgentKind::kVehicle;
    if (a > 1) {
      const double roll = uniform(rng, 0.0, 1.0);
      kind = roll < 0.8 ? AgentKind::kVehicle : roll < 0.9 ? AgentKind::kCyclist : AgentKind::kPedestrian;
    }
    std::string id = is_ego ? std::string("ego") : fmt::format("a{:03d}", a);
    if (a == 1) {
      focal_maneuver = maneuver;
      scenario.focal_agent_id = id;
    }
    scenario.tracks.push_back(sample_track(profile, std::move(id), kind, is_ego, config.step_count));
  }
  for (int m = 0; m < config.map_elements_per_scene; ++m) {
    scenario.map_elements.push_back(random_map_element(m, rng));
  }
  scenario.metadata.maneuver = std::string(to_string(focal_maneuver));
  scenario.metadata.noise_sigma = config.noise_sigma;

  if (config.noise_sigma > 0.0) {
    return add_noise(scenario, config.noise_sigma, derive_seed(scenario_seed, 1));
  }
  return scenario;
}

}  // namespace

std::vector<Scenario> generate_synthetic(const SyntheticConfig & config, int jobs)
{
  validate_config(config);
  std::vector<Scenario> scenarios(static_cast<std::size_t>(config.scenario_count));
  parallel_for(scenarios.size(), jobs, [&](std::size_t i) { scenarios[i] = generate_one(config, i); });
  return scenarios;
}

Scenario add_noise(const Scenario & scenario, double sigma, std::uint64_t seed)
{
  if (!std::isfinite(sigma) || sigma < 0.0) {
    throw Error(ErrorCode::kConfigError, "noise sigma must be finite and >= 0");
  }
  if (sigma == 0.0) {
    return scenario;
  }
  Engine rng(seed);
  boost::random::normal_distribution<double> noise(0.0, sigma);
  Scenario noisy = scenario;
  for (Track & track : noisy.tracks) {
    for (AgentState & s : track.states) {
      s.position.x += noise(rng);
      s.position.y += noise(rng);
    }
    const std::size_t n = track.states.size();
    if (n < 2) {
      continue;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t lo = k == 0 ? 0 : k - 1;
      const std::size_t hi = k + 1 == n ? n - 1 : k + 1;
      const Vec2 velocity =
        (track.states[hi].position - track.states[lo].position) / ((hi - lo) * kStepSeconds);
      track.states[k].velocity = velocity;
      if (velocity.x != 0.0 || velocity.y != 0.0) {
        track.states[k].heading = wrap_angle(std::atan2(velocity.y, velocity.x));
      }
    }
  }
  return noisy;
}

std::vector<Scenario> add_noise(std::span<const Scenario> scenarios, double sigma, std::uint64_t seed)
{
  std::vector<Scenario> out;
  out.reserve(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    out.push_back(add_noise(scenarios[i], sigma, derive_seed(seed, i)));
  }
  return out;
}

}  // namespace oodeval
