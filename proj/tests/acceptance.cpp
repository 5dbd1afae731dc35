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

// Acceptance runner: one PASS/FAIL line per criterion. Usage:
//   oodeval_acceptance <path-to-oodeval-cli> [scratch-dir]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <boost/random/normal_distribution.hpp>
#include <fmt/core.h>

#include "oodeval/complexity.hpp"
#include "oodeval/homogenize.hpp"
#include "oodeval/metrics.hpp"
#include "oodeval/report.hpp"
#include "oodeval/scenario_io.hpp"
#include "oodeval/synthetic.hpp"
#include "test_support.hpp"

namespace
{

using namespace oodeval;
using oodeval::testing::Rng;
using oodeval::testing::uniform;
using oodeval::testing::uniform_int;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome
{
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

DatasetMetrics table_run(const std::string & model, std::array<double, 4> v)
{
  DatasetMetrics m;
  m.sample_count = 1;
  m.tags = {model, "WO", "WO"};
  m.values = {{"minADE_1", v[0]}, {"minFDE_1", v[1]}, {"minADE_6", v[2]}, {"minFDE_6", v[3]}};
  return m;
}

Outcome criterion1()
{
  const auto t0 = Clock::now();
  const std::vector<DatasetMetrics> runs{
    table_run("QCNet", {0.820, 2.171, 0.344, 0.696}), table_run("FMAE", {0.889, 2.318, 0.374, 0.829}),
    table_run("EP-Q", {0.821, 2.155, 0.359, 0.802}), table_run("EP-F", {0.831, 2.171, 0.370, 0.825})};
  const std::map<std::string, std::array<double, 4>> quoted{
    {"FMAE", {108.4, 106.8, 108.7, 119.1}}, {"EP-Q", {100.1, 99.3, 104.4, 115.2}}, {"EP-F", {101.3, 100.0, 107.6, 118.5}}};
  const auto rows = relative_to_reference(runs, "QCNet");
  Outcome o;
  int checked = 0;
  double worst = 0.0;
  for (const PercentageRow & row : rows) {
    if (row.tags.model == "QCNet") {
      continue;
    }
    for (std::size_t c = 0; c < 4; ++c) {
      const double err = std::abs(row.percent[c].value - quoted.at(row.tags.model)[c]);
      worst = std::max(worst, err);
      ++checked;
      if (err > 0.1) {
        o.pass = false;
      }
    }
  }
  const double elapsed = seconds_since(t0);
  o.pass = o.pass && checked == 12 && elapsed < 1.0;
  o.detail = fmt::format("{} cells, max |error| {:.3f} pp, {:.4f}s", checked, worst, elapsed);
  return o;
}

Outcome criterion2()
{
  const auto t0 = Clock::now();
  struct Pair
  {
    double id, delta, quoted_pct;
  };
  const std::vector<Pair> pairs{{0.359, 0.252, 70.2},  {0.344, 0.351, 102.0}, {0.696, 0.516, 74.1},
                                {0.802, 0.394, 49.1},  {0.829, 0.540, 65.1},  {0.821, 0.643, 78.3},
                                {1.161, -0.022, 1.9},  {0.825, 0.508, 61.9}};
  Outcome o;
  double worst = 0.0;
  for (const Pair & p : pairs) {
    DatasetMetrics id, ood;
    id.tags = ood.tags = {"M", "T", "T"};
    id.values = {{"minADE_6", p.id}};
    ood.values = {{"minADE_6", p.id + p.delta}};
    const DeltaRecord d = delta_metrics(id, ood).front();
    // Quoted percentages are magnitudes; the sign lives in the delta.
    const double err = std::abs(std::abs(*d.relative_pct) - p.quoted_pct);
    worst = std::max(worst, err);
    const bool sign_ok = std::signbit(*d.relative_pct) == std::signbit(p.delta) &&
                         std::signbit(d.delta) == std::signbit(p.delta);
    if (err > 0.5 || !sign_ok) {
      o.pass = false;
    }
  }
  const double elapsed = seconds_since(t0);
  o.pass = o.pass && elapsed < 1.0;
  o.detail = fmt::format("{} pairs, max |error| {:.3f} pp, {:.4f}s", pairs.size(), worst, elapsed);
  return o;
}

Outcome criterion3()
{
  SyntheticConfig cfg;
  cfg.scenario_count = 1000;
  cfg.speed_range = {0.5, 30.0};
  cfg.agent_count_range = {2, 4};
  cfg.map_elements_per_scene = 0;
  cfg.seed = 2718;
  const std::vector<Scenario> corpus = generate_synthetic(cfg);
  double worst = 0.0;
  std::size_t count = 0;
  Rng rng(3);
  for (const Scenario & raw : corpus) {
    // Extra random rigid placement on top of the generator's own.
    const RigidTransform2 tf{uniform(rng, -3.2, 3.2), {uniform(rng, -2e3, 2e3), uniform(rng, -2e3, 2e3)}};
    Track focal = *raw.find_track(*raw.focal_agent_id);
    for (AgentState & s : focal.states) {
      s.position = tf.apply(s.position);
      s.velocity = tf.rotate(s.velocity);
      s.heading = tf.apply_heading(s.heading);
    }
    for (double t_start : {1.1, 5.0}) {
      const auto d = complexity_vector(focal, t_start);
      if (!d) {
        return {false, fmt::format("{} excluded as low speed", raw.scenario_id)};
      }
      worst = std::max({worst, std::abs(d->d_lon - 1.0), std::abs(d->d_lat)});
      ++count;
    }
  }
  return {count == 2000 && worst < 1e-9, fmt::format("{} vectors, max |error| {:.2e}", count, worst)};
}

Outcome criterion4()
{
  const auto t0 = Clock::now();
  SyntheticConfig cfg;
  cfg.scenario_count = 5000;
  cfg.maneuver_mix = {{Maneuver::kAccelerate, 1}, {Maneuver::kBrake, 1}, {Maneuver::kTurnLeft, 1},
                      {Maneuver::kTurnRight, 1}};
  cfg.maneuver_window = {step_for_start_time(1.1), step_for_start_time(5.0)};
  cfg.agent_count_range = {2, 2};
  cfg.map_elements_per_scene = 0;
  cfg.seed = 1;
  const std::vector<Scenario> corpus = generate_synthetic(cfg);
  const ComplexityDistribution early = complexity_distribution(corpus, 1.1);
  const ComplexityDistribution late = complexity_distribution(corpus, 5.0);
  const double a = sample_moments(early.samples).trace();
  const double b = sample_moments(late.samples).trace();
  const double elapsed = seconds_since(t0);
  const double ratio = a / b;
  return {ratio >= 2.0 && elapsed < 30.0,
          fmt::format(
            "trace(1.1s) {:.4g} over trace(5.0s) {:.4g} = {:.3g}x, samples {}/{}, {:.2f}s", a, b, ratio,
            early.samples.size(), late.samples.size(), elapsed)};
}

Outcome criterion5()
{
  Rng rng(55);
  std::size_t mismatches = 0, checks = 0;
  for (int i = 0; i < 1000; ++i) {
    Trajectory gt;
    Vec2 p{uniform(rng, -100, 100), uniform(rng, -100, 100)};
    for (int k = 0; k < 41; ++k) {
      p = p + Vec2{uniform(rng, -2, 2), uniform(rng, -2, 2)};
      gt.push_back(p);
    }
    const int modes = uniform_int(rng, 1, 8);
    PredictionSet pred{"s", "a", {}, {}};
    for (int m = 0; m < modes; ++m) {
      Trajectory t = gt;
      const double spread = uniform(rng, 0, 4);
      for (Vec2 & q : t) {
        q = q + Vec2{uniform(rng, -spread, spread), uniform(rng, -spread, spread)};
      }
      pred.modes.push_back(t);
    }
    if (i % 2 == 1) {
      double total = 0;
      for (int m = 0; m < modes; ++m) {
        pred.probabilities.push_back(uniform_int(rng, 1, 4));
        total += pred.probabilities.back();
      }
      for (double & w : pred.probabilities) {
        w /= total;
      }
    }
    // Enumerate: rank by (descending probability, index), keep the first K.
    std::vector<std::size_t> order(static_cast<std::size_t>(modes));
    for (std::size_t m = 0; m < order.size(); ++m) {
      order[m] = m;
    }
    if (!pred.probabilities.empty()) {
      for (std::size_t a = 0; a < order.size(); ++a) {
        for (std::size_t b = a + 1; b < order.size(); ++b) {
          const double pa = pred.probabilities[order[a]], pb = pred.probabilities[order[b]];
          if (pb > pa || (pb == pa && order[b] < order[a])) {
            std::swap(order[a], order[b]);
          }
        }
      }
    }
    for (int k = 1; k <= modes; ++k) {
      double best_ade = INFINITY, best_fde = INFINITY;
      for (int j = 0; j < k; ++j) {
        const Trajectory & t = pred.modes[order[static_cast<std::size_t>(j)]];
        double sum = 0;
        for (int s = 0; s < 41; ++s) {
          sum += std::hypot(t[s].x - gt[s].x, t[s].y - gt[s].y);
        }
        best_ade = std::min(best_ade, sum / 41.0);
        best_fde = std::min(best_fde, std::hypot(t[40].x - gt[40].x, t[40].y - gt[40].y));
      }
      ++checks;
      if (min_ade(pred, gt, k) != best_ade || min_fde(pred, gt, k) != best_fde) {
        ++mismatches;
      }
    }
  }
  return {mismatches == 0, fmt::format("{} (instance, K) checks, {} mismatches", checks, mismatches)};
}

Outcome criterion6()
{
  Rng rng(66);
  constexpr int kCases = 250;
  std::map<std::string, int> failures{
    {"metric rigid", 0}, {"complexity rigid", 0}, {"K monotone", 0}, {"aggregate order", 0}, {"delta antisym", 0}};
  for (int i = 0; i < kCases; ++i) {
    Trajectory gt;
    Vec2 p{uniform(rng, -50, 50), uniform(rng, -50, 50)};
    for (int k = 0; k < 41; ++k) {
      p = p + Vec2{uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5)};
      gt.push_back(p);
    }
    PredictionSet pred{"s", "a", {}, {}};
    const int modes = uniform_int(rng, 1, 8);
    for (int m = 0; m < modes; ++m) {
      Trajectory t = gt;
      for (Vec2 & q : t) {
        q = q + Vec2{uniform(rng, -3, 3), uniform(rng, -3, 3)};
      }
      pred.modes.push_back(t);
    }
    const RigidTransform2 tf{uniform(rng, -3.2, 3.2), {uniform(rng, -1e3, 1e3), uniform(rng, -1e3, 1e3)}};
    PredictionSet moved = pred;
    Trajectory gt_moved;
    for (const Vec2 & q : gt) {
      gt_moved.push_back(tf.apply(q));
    }
    for (Trajectory & t : moved.modes) {
      for (Vec2 & q : t) {
        q = tf.apply(q);
      }
    }
    if (std::abs(min_ade(pred, gt, modes) - min_ade(moved, gt_moved, modes)) > 1e-9 ||
        std::abs(min_fde(pred, gt, modes) - min_fde(moved, gt_moved, modes)) > 1e-9) {
      ++failures["metric rigid"];
    }
    for (int k = 1; k < modes; ++k) {
      if (min_ade(pred, gt, k + 1) > min_ade(pred, gt, k) || min_fde(pred, gt, k + 1) > min_fde(pred, gt, k)) {
        ++failures["K monotone"];
        break;
      }
    }
    PredictionSet extended = pred;
    extended.modes.push_back(gt_moved);  // an arbitrary extra mode
    if (min_ade(extended, gt, modes + 1) > min_ade(pred, gt, modes)) {
      ++failures["K monotone"];
    }

    MotionProfile profile;
    profile.start = {{uniform(rng, -100, 100), uniform(rng, -100, 100)}, uniform(rng, -3, 3), uniform(rng, 1, 20)};
    const double b = uniform(rng, 1, 4);
    profile.segments.push_back({b, b + uniform(rng, 0.5, 3), 0.0, uniform(rng, -0.7, 0.7)});
    const Track track = sample_track(profile, "a", AgentKind::kVehicle, false, 91);
    Track track_moved = track;
    for (AgentState & s : track_moved.states) {
      s.position = tf.apply(s.position);
      s.velocity = tf.rotate(s.velocity);
      s.heading = tf.apply_heading(s.heading);
    }
    const auto d0 = complexity_vector(track, 1.1);
    const auto d1 = complexity_vector(track_moved, 1.1);
    if (!d0 || !d1 || std::abs(d0->d_lon - d1->d_lon) > 1e-9 || std::abs(d0->d_lat - d1->d_lat) > 1e-9) {
      ++failures["complexity rigid"];
    }

    std::vector<MetricRecord> records;
    for (int r = 0; r < uniform_int(rng, 1, 500); ++r) {
      MetricRecord rec;
      rec.min_ade[1] = uniform(rng, 0, 10) * (r % 7 == 0 ? 1e5 : 1.0);
      rec.min_fde[1] = uniform(rng, 0, 20);
      records.push_back(rec);
    }
    const std::vector<int> ks{1};
    const DatasetMetrics before = aggregate(records, {}, ks);
    std::shuffle(records.begin(), records.end(), rng);
    const DatasetMetrics after = aggregate(records, {}, ks);
    for (std::size_t v = 0; v < before.values.size(); ++v) {
      if (std::abs(before.values[v].value - after.values[v].value) > 1e-9) {
        ++failures["aggregate order"];
        break;
      }
    }

    DatasetMetrics id, ood;
    id.tags = ood.tags = {"M", "A", "B"};
    id.values = {{"minADE_1", uniform(rng, 0.1, 3)}, {"minFDE_6", uniform(rng, 0.1, 3)}};
    ood.values = {{"minADE_1", uniform(rng, 0.1, 3)}, {"minFDE_6", uniform(rng, 0.1, 3)}};
    const auto fwd = delta_metrics(id, ood);
    const auto rev = delta_metrics(ood, id);
    for (std::size_t v = 0; v < fwd.size(); ++v) {
      if (fwd[v].delta != -rev[v].delta || std::signbit(fwd[v].delta) != std::signbit(*fwd[v].relative_pct)) {
        ++failures["delta antisym"];
      }
    }
  }
  int total = 0;
  std::string detail = fmt::format("{} cases per suite;", kCases);
  for (const auto & [name, n] : failures) {
    total += n;
    detail += fmt::format(" {}={}", name, n);
  }
  return {total == 0, detail};
}

Outcome criterion7()
{
  SyntheticConfig cfg;
  cfg.scenario_count = 100;
  cfg.agent_count_range = {2, 6};
  cfg.map_elements_per_scene = 10;
  cfg.seed = 77;
  std::vector<Scenario> batch = generate_synthetic(cfg);
  std::set<std::string> lacking;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    Scenario & s = batch[i];
    s.source_profile = SourceProfile::kWO;
    s.focal_agent_id.reset();
    if (i % 5 == 3) {
      for (Track & t : s.tracks) {
        if (!t.is_ego) {
          t.states[static_cast<std::size_t>(i % 91)].observed = false;
        }
      }
      lacking.insert(s.scenario_id);
    }
  }
  int samples = 0, no_focal = 0, bad = 0;
  for (const Scenario & s : batch) {
    const HomogenizeResult r = homogenize_scenario(s);
    if (const auto * sample = std::get_if<HomogenizedSample>(&r)) {
      ++samples;
      bool ok = sample->scenario.step_count == 91 && sample->focal().fully_observed() && !sample->focal().is_ego;
      for (const Track & t : sample->scenario.tracks) {
        ok = ok && t.states.size() == 91;
      }
      for (const MapElement & e : sample->scenario.map_elements) {
        ok = ok && (e.kind == MapElementKind::kLaneCenter || e.kind == MapElementKind::kCrosswalk);
      }
      ok = ok && check_sample(*sample).empty();
      bad += ok ? 0 : 1;
    } else if (std::get<RejectionReason>(r) == RejectionReason::kNoValidFocal && lacking.contains(s.scenario_id)) {
      ++no_focal;
    } else {
      ++bad;
    }
  }
  return {samples == 80 && no_focal == 20 && bad == 0,
          fmt::format("{} samples, {} NO_VALID_FOCAL, {} problems", samples, no_focal, bad)};
}

Outcome criterion8()
{
  Rng rng(88);
  int failures = 0;
  for (int scene = 0; scene < 100; ++scene) {
    Scenario s;
    s.scenario_id = fmt::format("cap_{:03d}", scene);
    s.step_count = 91;
    s.tracks.push_back(testing::cv_track("ego", {uniform(rng, -3, 3), uniform(rng, -3, 3)}, 0.2, 6.0, 91, true));
    for (int a = 1; a < 60; ++a) {
      s.tracks.push_back(testing::cv_track(
        fmt::format("a{:03d}", a), {uniform(rng, -90, 90), uniform(rng, -90, 90)}, uniform(rng, -3, 3),
        uniform(rng, 0, 12), 91));
    }
    // Integer grid distances so exact ties occur now and then.
    for (int m = 0; m < 120; ++m) {
      const Vec2 from{static_cast<double>(uniform_int(rng, -40, 40)), static_cast<double>(uniform_int(rng, -40, 40))};
      s.map_elements.push_back(testing::straight_element(
        fmt::format("m{:03d}", m), MapElementKind::kLaneCenter, from, from + Vec2{uniform(rng, -9, 9), uniform(rng, -9, 9)}));
    }
    // Focal is the farthest agent at the current step.
    s.tracks[1].states[49].position = {400, -400};
    const HomogenizedSample sample = std::get<HomogenizedSample>(homogenize_scenario(s));
    const HomogenizedSample capped = cap_complexity(sample);
    const HomogenizedSample twice = cap_complexity(capped);

    const Vec2 ego = sample.ego()->states[49].position;
    std::vector<std::pair<double, std::string>> agents;
    for (const Track & t : sample.scenario.tracks) {
      if (!t.is_ego && t.agent_id != sample.focal_agent_id) {
        agents.emplace_back(distance(t.states[49].position, ego), t.agent_id);
      }
    }
    std::sort(agents.begin(), agents.end());
    std::set<std::string> want{"ego", sample.focal_agent_id};
    for (std::size_t i = 0; want.size() < 50; ++i) {
      want.insert(agents[i].second);
    }
    std::vector<std::pair<double, std::string>> elements;
    for (const MapElement & e : sample.scenario.map_elements) {
      double best = INFINITY;
      for (const Vec2 & q : e.polyline) {
        best = std::min(best, distance(q, ego));
      }
      elements.emplace_back(best, e.element_id);
    }
    std::sort(elements.begin(), elements.end());
    std::set<std::string> want_map;
    for (std::size_t i = 0; i < 80; ++i) {
      want_map.insert(elements[i].second);
    }
    std::set<std::string> got, got_map;
    for (const Track & t : capped.scenario.tracks) {
      got.insert(t.agent_id);
    }
    for (const MapElement & e : capped.scenario.map_elements) {
      got_map.insert(e.element_id);
    }
    const bool ok = capped.scenario.tracks.size() == 50 && capped.scenario.map_elements.size() == 80 &&
                    got.contains("ego") && got.contains(sample.focal_agent_id) && got == want && got_map == want_map &&
                    twice.scenario == capped.scenario;
    failures += ok ? 0 : 1;
  }
  return {failures == 0, fmt::format("100 scenes of 60 agents / 120 elements, {} failures", failures)};
}

Outcome criterion9()
{
  Rng rng(99);
  boost::random::normal_distribution<double> z;
  std::vector<Vec2> pts(50000);
  for (Vec2 & p : pts) {
    p = {z(rng), z(rng)};
  }
  const DensityGrid grid = kde_2d(pts);
  const std::vector<double> masses{0.3, 0.6, 0.9};
  const std::vector<double> c = hdr_levels(grid, masses);
  const double f = enclosed_fraction(grid, c[2], pts);
  const bool decreasing = c[0] > c[1] && c[1] > c[2];
  return {decreasing && f >= 0.88 && f <= 0.92,
          fmt::format("90% region encloses {:.4f}; thresholds {:.4g} > {:.4g} > {:.4g}", f, c[0], c[1], c[2])};
}

int shell(const std::string & command)
{
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs the five-stage pipeline in `dir`; returns elapsed seconds or a
// negative value on failure.
double run_pipeline(const std::string & cli, const fs::path & dir, int jobs)
{
  fs::remove_all(dir);
  fs::create_directories(dir / "runs");
  const std::string d = dir.string();
  const std::string j = std::to_string(jobs);
  const std::vector<std::string> steps{
    fmt::format(
      "{} generate --out {}/s.jsonl --scenario-count 10000 --seed 2024 --noise-sigma 0.05 "
      "--maneuver-mix constant_velocity:2,accelerate:1,brake:1,turn_left:1,turn_right:1,stop_and_go:1 "
      "--agent-count-range 2,3 --map-elements-per-scene 2 --jobs {}",
      cli, d, j),
    fmt::format(
      "{} homogenize --in {}/s.jsonl --out {}/h.jsonl --rejects {}/rejects.csv --profile auto --jobs {}", cli, d,
      d, d, j),
    fmt::format("{} predict --in {}/h.jsonl --out {}/poly.jsonl --model poly --degrees 1,2,3,4,5,6 --jobs {}", cli, d,
                d, j),
    fmt::format(
      "{} eval --scenarios {}/h.jsonl --predictions {}/poly.jsonl --k 1,6 --out {}/runs/poly.csv "
      "--model-tag Poly --train-tag SYN --test-tag SYN --jobs {}",
      cli, d, d, d, j),
    fmt::format("{} report table --runs {}/runs --reference Poly --out {}/table", cli, d, d)};
  const auto t0 = Clock::now();
  for (const std::string & step : steps) {
    if (shell(step + " 2>>" + d + "/log.txt") != 0) {
      return -1.0;
    }
  }
  return seconds_since(t0);
}

Outcome criterion10(const std::string & cli, const fs::path & scratch)
{
  if (cli.empty()) {
    return {false, "no CLI path given"};
  }
  const double first = run_pipeline(cli, scratch / "run1", 1);
  const double second = run_pipeline(cli, scratch / "run2", 1);
  const double parallel = run_pipeline(cli, scratch / "run8", 8);
  if (first < 0 || second < 0 || parallel < 0) {
    return {false, fmt::format("pipeline step failed, see {}/run*/log.txt", scratch.string())};
  }
  bool identical = true;
  for (const char * name : {"s.jsonl", "h.jsonl", "poly.jsonl", "runs/poly.csv", "table.txt", "table.csv"}) {
    identical = identical && slurp(scratch / "run1" / name) == slurp(scratch / "run2" / name);
  }
  const DatasetMetrics a = read_metrics_csv(scratch / "run1" / "runs" / "poly.csv");
  const DatasetMetrics b = read_metrics_csv(scratch / "run8" / "runs" / "poly.csv");
  bool jobs_agree = a.values.size() == b.values.size() && a.sample_count == b.sample_count;
  double worst = 0.0;
  for (std::size_t i = 0; jobs_agree && i < a.values.size(); ++i) {
    worst = std::max(worst, std::abs(a.values[i].value - b.values[i].value));
  }
  jobs_agree = jobs_agree && worst <= 1e-9;
  const bool bytes8 = slurp(scratch / "run1" / "poly.jsonl") == slurp(scratch / "run8" / "poly.jsonl");
  std::string summary;
  for (const MetricValue & v : a.values) {
    summary += fmt::format(" {}={:.3f}", v.name, v.value);
  }
  const bool pass = identical && jobs_agree && first < 60.0;
  if (pass) {
    for (const char * run : {"run1", "run2", "run8"}) {
      fs::remove_all(scratch / run);
    }
  }
  return {pass, fmt::format(
                  "samples {}{}; run1 {:.1f}s, run2 {:.1f}s, jobs=8 {:.1f}s; byte-identical {}; jobs=8 max |diff| "
                  "{:.1e} (predictions byte-identical {})",
                  a.sample_count, summary, first, second, parallel, identical ? "yes" : "no", worst,
                  bytes8 ? "yes" : "no")};
}

}  // namespace

int main(int argc, char ** argv)
{
  const std::string cli = argc > 1 ? argv[1] : "";
  const fs::path scratch = argc > 2 ? fs::path(argv[2]) : fs::temp_directory_path() / "oodeval_acceptance";
  fs::create_directories(scratch);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
    {"1 table percentages", criterion1},
    {"2 delta percentages", criterion2},
    {"3 constant-velocity anchor", criterion3},
    {"4 history-length spread", criterion4},
    {"5 metric brute-force equivalence", criterion5},
    {"6 invariance suites", criterion6},
    {"7 homogenization bookkeeping", criterion7},
    {"8 complexity cap", criterion8},
    {"9 KDE/HDR oracle", criterion9},
    {"10 pipeline determinism and performance", [&] { return criterion10(cli, scratch); }},
  };
  int failed = 0;
  for (const auto & [name, check] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = check();
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << fmt::format("{} criterion {}: {} [{:.2f}s]", o.pass ? "PASS" : "FAIL", name, o.detail,
                             seconds_since(t0))
              << std::endl;
  }
  std::cout << fmt::format("{} of {} criteria passed", criteria.size() - failed, criteria.size()) << std::endl;
  return failed == 0 ? 0 : 1;
}
