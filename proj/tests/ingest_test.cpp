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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "oodeval/scenario_io.hpp"
#include "oodeval/synthetic.hpp"
#include "test_support.hpp"

namespace oodeval
{
namespace
{

using testing::Rng;
using testing::uniform;

std::string to_text(std::span<const Scenario> scenarios)
{
  std::ostringstream out;
  write_scenarios(scenarios, out);
  return out.str();
}

// Random valid scenario with awkward float values.
Scenario random_scenario(Rng & rng, int index)
{
  Scenario s;
  s.scenario_id = "rnd_" + std::to_string(index) + "\"q\\";
  s.source_profile = static_cast<SourceProfile>(testing::uniform_int(rng, 0, 2));
  s.step_count = testing::uniform_int(rng, 1, 30);
  const int tracks = testing::uniform_int(rng, 0, 4);
  for (int t = 0; t < tracks; ++t) {
    Track track;
    track.agent_id = "agent/" + std::to_string(t);
    track.agent_kind = static_cast<AgentKind>(testing::uniform_int(rng, 0, 3));
    track.is_ego = t == 0;
    for (int k = 0; k < s.step_count; ++k) {
      AgentState st;
      st.position = {uniform(rng, -1e4, 1e4), uniform(rng, -1e4, 1e4)};
      st.heading = wrap_angle(uniform(rng, -4.0, 4.0));
      st.velocity = {uniform(rng, -40, 40) * 1e-3, uniform(rng, -1e-300, 1e-300)};
      st.observed = testing::uniform_int(rng, 0, 3) != 0;
      track.states.push_back(st);
    }
    s.tracks.push_back(std::move(track));
  }
  for (int m = 0; m < testing::uniform_int(rng, 0, 3); ++m) {
    MapElement e;
    e.element_id = "m" + std::to_string(m);
    e.kind = static_cast<MapElementKind>(testing::uniform_int(rng, 0, 3));
    for (int p = 0; p < testing::uniform_int(rng, 2, 6); ++p) {
      e.polyline.push_back({uniform(rng, -5e3, 5e3), 1.0 / 3.0 + p});
    }
    s.map_elements.push_back(std::move(e));
  }
  if (tracks > 1) {
    s.focal_agent_id = s.tracks[1].agent_id;
  }
  if (index % 2 == 0) {
    s.metadata.maneuver = "turn_left";
    s.metadata.noise_sigma = 0.1;
  }
  if (index % 3 == 0) {
    s.metadata.junction_lane_ids = {"j1", "j2"};
  }
  return s;
}

TEST(ScenarioIo, RoundTripProperty)
{
  Rng rng(11);
  std::vector<Scenario> scenarios;
  for (int i = 0; i < 250; ++i) {
    scenarios.push_back(random_scenario(rng, i));
  }
  const std::string text = to_text(scenarios);
  std::istringstream in(text);
  const std::vector<Scenario> parsed = parse_scenarios(in);
  ASSERT_EQ(parsed.size(), scenarios.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) {
    // Shortest round-trip formatting makes this exact, stronger than 1e-9.
    EXPECT_EQ(parsed[i], scenarios[i]) << "scenario " << i;
    EXPECT_TRUE(validate_scenario(parsed[i]).ok());
  }
  EXPECT_EQ(to_text(parsed), text);
}

TEST(ScenarioIo, WriteReturnsCountAndOneLinePerRecord)
{
  const std::vector<Scenario> scenarios{
    testing::simple_scenario("s1"), testing::simple_scenario("s2"), testing::simple_scenario("s3")};
  const auto dir = testing::scratch_dir("io_count");
  EXPECT_EQ(write_scenarios(scenarios, dir / "s.jsonl"), 3u);
  EXPECT_EQ(read_lines(dir / "s.jsonl").size(), 3u);
  EXPECT_EQ(parse_scenarios(dir / "s.jsonl"), scenarios);
}

TEST(ScenarioIo, EmptyFileIsEmptyList)
{
  const auto dir = testing::scratch_dir("io_empty");
  write_text_file(dir / "e.jsonl", "");
  EXPECT_TRUE(parse_scenarios(dir / "e.jsonl").empty());
}

TEST(ScenarioIo, MissingHeadingNamesFieldAndLine)
{
  const Scenario s = testing::simple_scenario("mh", 1);
  std::string bad = serialize_scenario(s);
  const auto pos = bad.find("\"heading\":");
  ASSERT_NE(pos, std::string::npos);
  const auto comma = bad.find(',', pos);
  bad.erase(pos, comma - pos + 1);
  std::istringstream in(serialize_scenario(s) + "\n" + bad + "\n");
  try {
    parse_scenarios(in);
    FAIL() << "expected PARSE_ERROR";
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    const std::string what = e.what();
    EXPECT_NE(what.find("line 2"), std::string::npos) << what;
    EXPECT_NE(what.find("heading"), std::string::npos) << what;
  }
}

TEST(ScenarioIo, MalformedJsonIsParseError)
{
  std::istringstream in("{\"schema_version\": 1,\n");
  try {
    parse_scenarios(in);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kParseError);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
}

TEST(ScenarioIo, InvariantViolationIsValidationErrorWithReport)
{
  Scenario s = testing::simple_scenario("bad", 2);
  std::string line = serialize_scenario(s);
  // Duplicate ego flag through the text form; the writer refuses invalid input.
  const auto pos = line.find("\"is_ego\":false");
  line.replace(pos, 14, "\"is_ego\":true");
  std::istringstream in(line + "\n");
  try {
    parse_scenarios(in);
    FAIL();
  } catch (const ScenarioValidationError & e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
    EXPECT_TRUE(e.report().contains(ViolationCode::kMultipleEgo));
  }
}

TEST(ScenarioIo, UnwritablePathIsIoError)
{
  const std::vector<Scenario> scenarios{testing::simple_scenario("s")};
  try {
    write_scenarios(scenarios, "/nonexistent_dir_oodeval/x.jsonl");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kIoError);
  }
}

TEST(ScenarioIo, PredictionRoundTrip)
{
  PredictionSet p;
  p.scenario_id = "s";
  p.agent_id = "a";
  Rng rng(3);
  for (int m = 0; m < 3; ++m) {
    Trajectory t;
    for (int k = 0; k < 41; ++k) {
      t.push_back({uniform(rng, -100, 100), uniform(rng, -100, 100)});
    }
    p.modes.push_back(t);
  }
  p.probabilities = {0.2, 0.3, 0.5};
  const PredictionSet back = parse_prediction_record(serialize_prediction(p), 1);
  EXPECT_EQ(back, p);
  p.probabilities.clear();
  EXPECT_EQ(parse_prediction_record(serialize_prediction(p), 1), p);
}

TEST(ScenarioIo, PredictionFileChecksContract)
{
  const auto dir = testing::scratch_dir("io_pred");
  PredictionSet p{"s", "a", {Trajectory(41, Vec2{1, 1})}, {0.9}};
  std::vector<PredictionSet> preds{p};
  write_text_file(dir / "p.jsonl", serialize_prediction(p) + "\n");
  try {
    parse_predictions(dir / "p.jsonl");
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kValidationError);
  }
  p.probabilities = {1.0};
  p.modes[0].pop_back();
  write_text_file(dir / "p.jsonl", serialize_prediction(p) + "\n");
  EXPECT_THROW(parse_predictions(dir / "p.jsonl"), Error);
}

// Closed-form noiseless constant velocity.
TEST(Synthetic, ConstantVelocityIsExact)
{
  SyntheticConfig cfg;
  cfg.scenario_count = 50;
  cfg.speed_range = {5.0, 5.0};
  cfg.seed = 99;
  const std::vector<Scenario> scenarios = generate_synthetic(cfg);
  ASSERT_EQ(scenarios.size(), 50u);
  for (const Scenario & s : scenarios) {
    ASSERT_TRUE(s.focal_agent_id.has_value());
    const Track * focal = s.find_track(*s.focal_agent_id);
    ASSERT_NE(focal, nullptr);
    EXPECT_FALSE(focal->is_ego);
    EXPECT_TRUE(focal->fully_observed());
    EXPECT_EQ(s.metadata.maneuver, "constant_velocity");
    EXPECT_EQ(s.metadata.noise_sigma, 0.0);
    const Vec2 p0 = focal->states[0].position;
    const double heading = focal->states[0].heading;
    for (int k = 0; k < s.step_count; ++k) {
      const Vec2 expected = p0 + (k * 0.1) * testing::cv_track("", {}, heading, 5.0, 1).states[0].velocity;
      EXPECT_NEAR(focal->states[k].position.x, expected.x, 1e-12);
      EXPECT_NEAR(focal->states[k].position.y, expected.y, 1e-12);
      EXPECT_NEAR(norm(focal->states[k].velocity), 5.0, 1e-12);
    }
  }
}

TEST(Synthetic, StructuralContract)
{
  SyntheticConfig cfg;
  cfg.scenario_count = 40;
  cfg.maneuver_mix = {{Maneuver::kAccelerate, 1}, {Maneuver::kTurnRight, 1}, {Maneuver::kStopAndGo, 1}};
  cfg.agent_count_range = {2, 6};
  cfg.seed = 5;
  for (const Scenario & s : generate_synthetic(cfg)) {
    EXPECT_TRUE(validate_scenario(s).ok());
    EXPECT_EQ(s.step_count, 91);
    int egos = 0;
    for (const Track & t : s.tracks) {
      egos += t.is_ego ? 1 : 0;
    }
    EXPECT_EQ(egos, 1);
    EXPECT_GE(s.tracks.size(), 2u);
    EXPECT_LE(s.tracks.size(), 6u);
    EXPECT_EQ(s.map_elements.size(), 8u);
    ASSERT_TRUE(s.metadata.maneuver.has_value());
    EXPECT_NE(*s.metadata.maneuver, "constant_velocity");
  }
}

TEST(Synthetic, SameSeedSameBytes)
{
  SyntheticConfig cfg;
  cfg.scenario_count = 30;
  cfg.maneuver_mix = {{Maneuver::kConstantVelocity, 1}, {Maneuver::kBrake, 2}, {Maneuver::kTurnLeft, 1}};
  cfg.noise_sigma = 0.2;
  cfg.seed = 1234;
  const std::string a = to_text(generate_synthetic(cfg));
  const std::string b = to_text(generate_synthetic(cfg, 4));
  EXPECT_EQ(a, b);
  cfg.seed = 1235;
  EXPECT_NE(to_text(generate_synthetic(cfg)), a);
}

TEST(Synthetic, InvalidConfigIsConfigError)
{
  auto expect_config_error = [](const SyntheticConfig & cfg) {
    try {
      generate_synthetic(cfg);
      ADD_FAILURE() << "expected CONFIG_ERROR";
    } catch (const Error & e) {
      EXPECT_EQ(e.code(), ErrorCode::kConfigError);
    }
  };
  SyntheticConfig cfg;
  cfg.noise_sigma = -0.1;
  expect_config_error(cfg);
  cfg = {};
  cfg.maneuver_mix = {{Maneuver::kBrake, -1.0}};
  expect_config_error(cfg);
  cfg = {};
  cfg.maneuver_mix = {{Maneuver::kBrake, 0.0}};
  expect_config_error(cfg);
  cfg = {};
  cfg.maneuver_window = {50, 91};
  expect_config_error(cfg);
  cfg = {};
  cfg.maneuver_window = {30, 20};
  expect_config_error(cfg);
}

// Fine RK4 integration of the unicycle model as an independent oracle.
// Steps never straddle a segment boundary, so the rates stay smooth.
KinematicState integrate_rk4(const MotionProfile & profile, double t_end)
{
  struct S
  {
    double x, y, th, v;
  };
  std::vector<double> cuts{0.0, t_end};
  for (const MotionSegment & seg : profile.segments) {
    cuts.push_back(std::clamp(seg.t_begin, 0.0, t_end));
    cuts.push_back(std::clamp(seg.t_end, 0.0, t_end));
  }
  std::sort(cuts.begin(), cuts.end());
  S s{profile.start.position.x, profile.start.position.y, profile.start.heading, profile.start.speed};
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double lo = cuts[c], hi = cuts[c + 1];
    if (hi <= lo) {
      continue;
    }
    double a = 0.0, w = 0.0;
    const double mid = 0.5 * (lo + hi);
    for (const MotionSegment & seg : profile.segments) {
      if (mid >= seg.t_begin && mid < seg.t_end) {
        a = seg.accel;
        w = seg.yaw_rate;
      }
    }
    auto rates = [&](const S & q) { return S{q.v * std::cos(q.th), q.v * std::sin(q.th), w, a}; };
    const int n = 20000;
    const double h = (hi - lo) / n;
    for (int i = 0; i < n; ++i) {
      const S k1 = rates(s);
      const S k2 = rates({s.x + h / 2 * k1.x, s.y + h / 2 * k1.y, s.th + h / 2 * k1.th, s.v + h / 2 * k1.v});
      const S k3 = rates({s.x + h / 2 * k2.x, s.y + h / 2 * k2.y, s.th + h / 2 * k2.th, s.v + h / 2 * k2.v});
      const S k4 = rates({s.x + h * k3.x, s.y + h * k3.y, s.th + h * k3.th, s.v + h * k3.v});
      s.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
      s.y += h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
      s.th += h / 6 * (k1.th + 2 * k2.th + 2 * k3.th + k4.th);
      s.v += h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v);
    }
  }
  return {{s.x, s.y}, wrap_angle(s.th), s.v};
}

TEST(Synthetic, KinematicsMatchNumericalIntegration)
{
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    MotionProfile profile;
    profile.start = {{uniform(rng, -50, 50), uniform(rng, -50, 50)}, uniform(rng, -3, 3), uniform(rng, 2, 15)};
    const double b1 = uniform(rng, 1.0, 2.0);
    const double e1 = b1 + uniform(rng, 0.5, 1.5);
    const double b2 = e1 + uniform(rng, 0.1, 0.5);
    const double e2 = b2 + uniform(rng, 0.5, 1.5);
    // Speed stays positive here; the stop clamp has its own test.
    const double v0 = profile.start.speed;
    profile.segments.push_back({b1, e1, uniform(rng, -std::min(4.0, (v0 - 0.5) / (e1 - b1)), 3), 0.0});
    profile.segments.push_back({b2, e2, 0.0, uniform(rng, -0.8, 0.8)});
    const double t_end = 9.0;
    const KinematicState closed = evaluate_motion(profile, t_end);
    const KinematicState numeric = integrate_rk4(profile, t_end);
    EXPECT_NEAR(closed.position.x, numeric.position.x, 1e-3) << trial;
    EXPECT_NEAR(closed.position.y, numeric.position.y, 1e-3) << trial;
    EXPECT_NEAR(closed.speed, numeric.speed, 1e-3) << trial;
    EXPECT_NEAR(std::remainder(closed.heading - numeric.heading, 2 * std::numbers::pi), 0.0, 1e-6) << trial;
  }
}

TEST(Synthetic, BrakeClampsAtZero)
{
  MotionProfile profile;
  profile.start = {{0, 0}, 0.0, 2.0};
  profile.segments.push_back({1.0, 3.0, -4.0, 0.0});
  const KinematicState s = evaluate_motion(profile, 5.0);
  EXPECT_EQ(s.speed, 0.0);
  // 2 m in the first second, then 2^2 / (2 * 4) = 0.5 m of braking.
  EXPECT_NEAR(s.position.x, 2.5, 1e-12);
}

TEST(Synthetic, QuarterTurnGeometry)
{
  MotionProfile profile;
  profile.start = {{0, 0}, 0.0, 10.0};
  const double w = std::numbers::pi / 2 / 2.0;
  profile.segments.push_back({0.0, 2.0, 0.0, w});
  const KinematicState s = evaluate_motion(profile, 2.0);
  const double r = 10.0 / w;
  EXPECT_NEAR(s.position.x, r, 1e-9);
  EXPECT_NEAR(s.position.y, r, 1e-9);
  EXPECT_NEAR(s.heading, std::numbers::pi / 2, 1e-12);
}

TEST(Noise, ZeroSigmaIsIdentity)
{
  const Scenario s = testing::simple_scenario("n0", 3);
  EXPECT_EQ(add_noise(s, 0.0, 7), s);
}

TEST(Noise, NegativeSigmaIsConfigError)
{
  try {
    add_noise(testing::simple_scenario("n"), -1.0, 7);
    FAIL();
  } catch (const Error & e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
  }
}

TEST(Noise, DeterministicUnderSeed)
{
  const Scenario s = testing::simple_scenario("nd", 3);
  EXPECT_EQ(add_noise(s, 0.3, 17), add_noise(s, 0.3, 17));
  EXPECT_NE(add_noise(s, 0.3, 17), add_noise(s, 0.3, 18));
}

// Empirical moments over roughly 10k points per coordinate.
TEST(Noise, EmpiricalStdAndMean)
{
  std::vector<Scenario> clean;
  for (int i = 0; i < 28; ++i) {
    clean.push_back(testing::simple_scenario("ns" + std::to_string(i), 3));
  }
  const double sigma = 0.5;
  const std::vector<Scenario> noisy = add_noise(clean, sigma, 2024);
  double sx = 0, sy = 0, sxx = 0, syy = 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    for (std::size_t t = 0; t < clean[i].tracks.size(); ++t) {
      for (std::size_t k = 0; k < clean[i].tracks[t].states.size(); ++k) {
        const Vec2 d = noisy[i].tracks[t].states[k].position - clean[i].tracks[t].states[k].position;
        sx += d.x;
        sy += d.y;
        sxx += d.x * d.x;
        syy += d.y * d.y;
        ++n;
      }
    }
  }
  ASSERT_GE(n, 10000u);
  const double mx = sx / n, my = sy / n;
  const double stdx = std::sqrt((sxx - n * mx * mx) / (n - 1));
  const double stdy = std::sqrt((syy - n * my * my) / (n - 1));
  EXPECT_GE(stdx, 0.49);
  EXPECT_LE(stdx, 0.51);
  EXPECT_GE(stdy, 0.49);
  EXPECT_LE(stdy, 0.51);
  EXPECT_LE(std::abs(mx), 3 * sigma / std::sqrt(static_cast<double>(n)));
  EXPECT_LE(std::abs(my), 3 * sigma / std::sqrt(static_cast<double>(n)));
}

TEST(Noise, VelocityAndHeadingFromCentralDifferences)
{
  const Scenario s = testing::simple_scenario("nv", 1);
  const Scenario noisy = add_noise(s, 0.2, 3);
  const auto & st = noisy.tracks[1].states;
  for (std::size_t k = 1; k + 1 < st.size(); ++k) {
    const Vec2 v = (st[k + 1].position - st[k - 1].position) / 0.2;
    EXPECT_NEAR(st[k].velocity.x, v.x, 1e-9);
    EXPECT_NEAR(st[k].velocity.y, v.y, 1e-9);
    EXPECT_NEAR(st[k].heading, std::atan2(v.y, v.x), 1e-12);
  }
  const Vec2 v0 = (st[1].position - st[0].position) / 0.1;
  EXPECT_NEAR(st[0].velocity.x, v0.x, 1e-9);
  const Vec2 vn = (st.back().position - st[st.size() - 2].position) / 0.1;
  EXPECT_NEAR(st.back().velocity.y, vn.y, 1e-9);
  EXPECT_EQ(noisy.tracks[1].states.size(), s.tracks[1].states.size());
}

}  // namespace
}  // namespace oodeval
