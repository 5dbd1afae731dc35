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

#include "oodeval/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <unordered_map>

#include <CLI11.hpp>
#include <boost/algorithm/string/trim.hpp>
#include <fmt/core.h>

#include "oodeval/complexity.hpp"
#include "oodeval/homogenize.hpp"
#include "oodeval/metrics.hpp"
#include "oodeval/parallel.hpp"
#include "oodeval/predictors.hpp"
#include "oodeval/report.hpp"
#include "oodeval/scenario_io.hpp"
#include "oodeval/synthetic.hpp"

namespace oodeval
{

int exit_code_for(ErrorCode code)
{
  switch (code) {
    case ErrorCode::kIoError:
      return kExitIo;
    case ErrorCode::kFitError:
    case ErrorCode::kPredictionError:
    case ErrorCode::kDegenerateData:
      return kExitNumeric;
    default:
      return kExitValidation;
  }
}

std::vector<std::pair<std::string, std::string>> read_run_config(const std::string & path)
{
  std::vector<std::pair<std::string, std::string>> entries;
  const std::vector<std::string> lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i].substr(0, lines[i].find('#'));
    boost::algorithm::trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::kConfigError, fmt::format("{}:{}: expected 'key = value'", path, i + 1));
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    boost::algorithm::trim(key);
    boost::algorithm::trim(value);
    if (key.empty() || value.empty()) {
      throw Error(ErrorCode::kConfigError, fmt::format("{}:{}: empty key or value", path, i + 1));
    }
    std::replace(key.begin(), key.end(), '_', '-');
    entries.emplace_back(std::move(key), std::move(value));
  }
  return entries;
}

namespace
{

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_input_file(const std::string & path)
{
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw Error(ErrorCode::kIoError, fmt::format("input file '{}' does not exist", path));
  }
}

void require_input_dir(const std::string & path)
{
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    throw Error(ErrorCode::kIoError, fmt::format("input directory '{}' does not exist", path));
  }
}

void require_output_path(const std::string & path)
{
  const fs::path parent = fs::path(path).parent_path();
  std::error_code ec;
  if (!parent.empty() && !fs::is_directory(parent, ec)) {
    throw Error(ErrorCode::kIoError, fmt::format("output directory '{}' does not exist", parent.string()));
  }
}

std::vector<std::string> split_list(const std::string & text)
{
  std::vector<std::string> parts;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = std::min(text.find(',', begin), text.size());
    std::string part = text.substr(begin, end - begin);
    boost::algorithm::trim(part);
    parts.push_back(std::move(part));
    begin = end + 1;
  }
  return parts;
}

template <typename T>
T parse_number(const std::string & text, const std::string & what)
{
  T value{};
  const char * end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::kConfigError, fmt::format("{}: '{}' is not a valid number", what, text));
  }
  return value;
}

template <typename T>
std::vector<T> parse_number_list(const std::string & text, const std::string & what)
{
  std::vector<T> values;
  for (const std::string & part : split_list(text)) {
    values.push_back(parse_number<T>(part, what));
  }
  return values;
}

template <typename T>
std::pair<T, T> parse_pair(const std::string & text, const std::string & what)
{
  const std::vector<T> values = parse_number_list<T>(text, what);
  if (values.size() != 2) {
    throw Error(ErrorCode::kConfigError, fmt::format("{}: expected 'min,max', got '{}'", what, text));
  }
  return {values[0], values[1]};
}

std::map<Maneuver, double> parse_mix(const std::string & text)
{
  std::map<Maneuver, double> mix;
  for (const std::string & part : split_list(text)) {
    const auto colon = part.find(':');
    const std::string name = part.substr(0, colon);
    const auto maneuver = parse_maneuver(name);
    if (!maneuver) {
      throw Error(ErrorCode::kConfigError, fmt::format("maneuver-mix: unknown maneuver '{}'", name));
    }
    mix[*maneuver] = colon == std::string::npos ? 1.0 : parse_number<double>(part.substr(colon + 1), "maneuver-mix");
  }
  return mix;
}

// Strips a trailing .txt/.csv so "--out table.txt" and "--out table" agree.
fs::path output_stem(const std::string & out)
{
  fs::path stem(out);
  if (stem.extension() == ".txt" || stem.extension() == ".csv") {
    stem.replace_extension();
  }
  return stem;
}

std::string with_suffix(const fs::path & stem, const char * suffix) { return stem.string() + suffix; }

struct GenerateArgs
{
  std::string out;
  int scenario_count = 100;
  int step_count = 91;
  std::string maneuver_mix = "constant_velocity:1";
  std::string maneuver_window = "10,49";
  std::string speed_range = "2,15";
  double noise_sigma = 0.0;
  std::string agent_count_range = "2,8";
  int map_elements = 8;
  std::uint64_t seed = 0;
  int jobs = 1;
};

int run_generate(const GenerateArgs & a, std::ostream & err)
{
  SyntheticConfig config;
  config.scenario_count = a.scenario_count;
  config.step_count = a.step_count;
  config.maneuver_mix = parse_mix(a.maneuver_mix);
  const auto window = parse_pair<int>(a.maneuver_window, "maneuver-window");
  config.maneuver_window = {window.first, window.second};
  const auto speed = parse_pair<double>(a.speed_range, "speed-range");
  config.speed_range = {speed.first, speed.second};
  config.noise_sigma = a.noise_sigma;
  const auto agents = parse_pair<int>(a.agent_count_range, "agent-count-range");
  config.agent_count_range = {agents.first, agents.second};
  config.map_elements_per_scene = a.map_elements;
  config.seed = a.seed;
  validate_config(config);
  require_output_path(a.out);

  const auto start = Clock::now();
  const std::vector<Scenario> scenarios = generate_synthetic(config, a.jobs);
  const std::size_t written = write_scenarios(scenarios, a.out);
  err << fmt::format(
    "oodeval generate: scenarios={} seed={} noise_sigma={} out={} elapsed={:.2f}s\n", written, config.seed,
    config.noise_sigma, a.out, seconds_since(start));
  return kExitOk;
}

struct HomogenizeArgs
{
  std::string in;
  std::string out;
  std::string profile = "auto";
  std::optional<int> cap_agents;
  std::optional<int> cap_map;
  std::string rejects;
  int jobs = 1;
};

int run_homogenize(const HomogenizeArgs & a, std::ostream & err)
{
  require_input_file(a.in);
  require_output_path(a.out);
  require_output_path(a.rejects);
  HomogenizeOptions options;
  if (a.profile == "a2") {
    options.forced_profile = SourceProfile::kA2;
  } else if (a.profile == "wo") {
    options.forced_profile = SourceProfile::kWO;
  }
  const bool cap = a.cap_agents.has_value() || a.cap_map.has_value();
  const int max_agents = a.cap_agents.value_or(kDefaultMaxAgents);
  const int max_map = a.cap_map.value_or(kDefaultMaxMapElements);
  if (cap && (max_agents < 1 || max_map < 1)) {
    throw Error(ErrorCode::kConfigError, "--cap-agents and --cap-map must be >= 1");
  }

  const auto start = Clock::now();
  const std::vector<Scenario> raw = parse_scenarios(a.in, a.jobs);
  std::vector<HomogenizeResult> results(raw.size());
  parallel_for(raw.size(), a.jobs, [&](std::size_t i) {
    HomogenizeResult result = homogenize_scenario(raw[i], options);
    if (cap && std::holds_alternative<HomogenizedSample>(result)) {
      result = cap_complexity(std::get<HomogenizedSample>(result), max_agents, max_map);
    }
    results[i] = std::move(result);
  });

  std::vector<Scenario> emitted;
  std::string rejects = "scenario_id,reason\n";
  std::map<RejectionReason, std::size_t> counts;
  std::vector<std::string> fatal;  // rejections that signal a profile mismatch
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (auto * sample = std::get_if<HomogenizedSample>(&results[i])) {
      emitted.push_back(std::move(sample->scenario));
      continue;
    }
    const RejectionReason reason = std::get<RejectionReason>(results[i]);
    ++counts[reason];
    rejects += fmt::format("{},{}\n", raw[i].scenario_id, to_string(reason));
    if (reason != RejectionReason::kNoValidFocal) {
      fatal.push_back(fmt::format("{} ({})", raw[i].scenario_id, to_string(reason)));
    }
  }
  write_scenarios(emitted, a.out);
  write_text_file(a.rejects, rejects);
  err << fmt::format(
    "oodeval homogenize: read={} emitted={} no_valid_focal={} too_short={} invalid_source={} "
    "capped={} elapsed={:.2f}s\n",
    raw.size(), emitted.size(), counts[RejectionReason::kNoValidFocal], counts[RejectionReason::kTooShort],
    counts[RejectionReason::kInvalidSource], cap ? "yes" : "no", seconds_since(start));
  if (!fatal.empty()) {
    err << fmt::format(
      "oodeval homogenize: error: {} scenario(s) incompatible with profile '{}', first: {}\n", fatal.size(),
      a.profile, fatal.front());
    return kExitValidation;
  }
  return kExitOk;
}

struct PredictArgs
{
  std::string in;
  std::string out;
  std::string model = "cv";
  std::string degrees = "1,2,3,4,5,6";
  int jobs = 1;
};

int run_predict(const PredictArgs & a, std::ostream & err)
{
  require_input_file(a.in);
  require_output_path(a.out);
  const std::vector<int> degrees = parse_number_list<int>(a.degrees, "degrees");
  for (int d : degrees) {
    if (d < kMinPolyDegree || d > kMaxPolyDegree) {
      throw Error(
        ErrorCode::kConfigError, fmt::format("degree {} outside [{}, {}]", d, kMinPolyDegree, kMaxPolyDegree));
    }
  }

  const auto start = Clock::now();
  std::vector<Scenario> scenarios = parse_scenarios(a.in, a.jobs);
  std::vector<PredictionSet> predictions(scenarios.size());
  std::vector<std::size_t> failed_degrees(scenarios.size(), 0);
  parallel_for(scenarios.size(), a.jobs, [&](std::size_t i) {
    const HomogenizedSample sample = as_homogenized_sample(std::move(scenarios[i]));
    if (a.model == "cv") {
      predictions[i] = predict_constant_velocity(sample, sample.focal_agent_id);
    } else {
      PolynomialPrediction poly = predict_polynomial(sample, sample.focal_agent_id, degrees);
      failed_degrees[i] = poly.failures.size();
      predictions[i] = std::move(poly.prediction);
    }
  });
  write_predictions(predictions, a.out);
  std::size_t failures = 0;
  for (std::size_t f : failed_degrees) {
    failures += f;
  }
  err << fmt::format(
    "oodeval predict: model={} samples={} failed_fits={} out={} elapsed={:.2f}s\n", a.model,
    predictions.size(), failures, a.out, seconds_since(start));
  return kExitOk;
}

struct EvalArgs
{
  std::string scenarios;
  std::string predictions;
  std::string ks = "1,6";
  std::string out;
  std::string records;
  std::string model_tag = "model";
  std::string train_tag = "train";
  std::string test_tag = "test";
  int jobs = 1;
};

int run_eval(const EvalArgs & a, std::ostream & err)
{
  require_input_file(a.scenarios);
  require_input_file(a.predictions);
  require_output_path(a.out);
  if (!a.records.empty()) {
    require_output_path(a.records);
  }
  std::vector<int> ks = parse_number_list<int>(a.ks, "k");
  for (int k : ks) {
    if (k < 1) {
      throw Error(ErrorCode::kConfigError, fmt::format("K must be >= 1, got {}", k));
    }
  }

  const auto start = Clock::now();
  std::vector<Scenario> scenarios = parse_scenarios(a.scenarios, a.jobs);
  const std::vector<PredictionSet> predictions = parse_predictions(a.predictions, kFutureSteps);
  std::unordered_map<std::string, const PredictionSet *> by_key;
  for (const PredictionSet & p : predictions) {
    by_key.emplace(p.scenario_id + '\x1f' + p.agent_id, &p);
  }

  std::vector<MetricRecord> records(scenarios.size());
  parallel_for(scenarios.size(), a.jobs, [&](std::size_t i) {
    const HomogenizedSample sample = as_homogenized_sample(std::move(scenarios[i]));
    auto it = by_key.find(sample.scenario.scenario_id + '\x1f' + sample.focal_agent_id);
    if (it == by_key.end()) {
      throw Error(
        ErrorCode::kValidationError, fmt::format(
                                       "no prediction for scenario '{}' focal agent '{}'",
                                       sample.scenario.scenario_id, sample.focal_agent_id));
    }
    const Track & focal = sample.focal();
    Trajectory truth;
    truth.reserve(kFutureSteps);
    for (int step = kFirstFutureStep; step < kHomogenizedSteps; ++step) {
      truth.push_back(state_at(focal, step).position);
    }
    records[i] = evaluate_sample(*it->second, truth, ks);
  });

  std::vector<int> available;
  for (int k : ks) {
    const bool everywhere = std::all_of(records.begin(), records.end(), [k](const MetricRecord & r) {
      return r.min_ade.contains(k);
    });
    if (everywhere) {
      available.push_back(k);
    } else {
      err << fmt::format("oodeval eval: warning: K={} skipped, not every prediction has {} modes\n", k, k);
    }
  }
  if (available.empty() && !records.empty()) {
    throw Error(ErrorCode::kInsufficientModes, "no requested K is available for every sample");
  }
  const DatasetMetrics metrics = aggregate(records, {a.model_tag, a.train_tag, a.test_tag}, available);
  write_metrics_csv(metrics, a.out);
  if (!a.records.empty()) {
    write_records_csv(records, available, a.records);
  }
  std::string summary;
  for (const MetricValue & v : metrics.values) {
    summary += fmt::format(" {}={:.4f}", v.name, v.value);
  }
  err << fmt::format(
    "oodeval eval: samples={}{} out={} elapsed={:.2f}s\n", metrics.sample_count, summary, a.out,
    seconds_since(start));
  return kExitOk;
}

struct DeltaArgs
{
  std::string id;
  std::string ood;
  std::string out;
};

int run_delta(const DeltaArgs & a, std::ostream & err)
{
  require_input_file(a.id);
  require_input_file(a.ood);
  require_output_path(a.out);
  const DatasetMetrics id = read_metrics_csv(a.id);
  const DatasetMetrics ood = read_metrics_csv(a.ood);
  const std::vector<DeltaRecord> deltas = delta_metrics(id, ood);
  write_text_file(a.out, delta_csv(deltas));
  err << fmt::format("oodeval delta: model={} metrics={} out={}\n", id.tags.model, deltas.size(), a.out);
  return kExitOk;
}

struct ComplexityArgs
{
  std::string in;
  double t_start = 1.1;
  double horizon = kDefaultHorizonSeconds;
  double min_speed = kDefaultMinSpeed;
  std::string out;
  std::string kde;
  std::string masses = "0.3,0.6,0.9";
  int resolution = kDefaultGridResolution;
};

int run_complexity(const ComplexityArgs & a, std::ostream & err)
{
  require_input_file(a.in);
  require_output_path(a.out);
  const std::vector<double> masses = parse_number_list<double>(a.masses, "masses");
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] > 0.0 && masses[i] < 1.0) || (i > 0 && !(masses[i] > masses[i - 1]))) {
      throw Error(ErrorCode::kConfigError, fmt::format("masses must be strictly increasing in (0, 1): '{}'", a.masses));
    }
  }
  if (!a.kde.empty()) {
    require_output_path(a.kde);
  }

  const auto start = Clock::now();
  const std::vector<Scenario> scenarios = parse_scenarios(a.in);
  const ComplexityDistribution dist = complexity_distribution(scenarios, a.t_start, a.horizon, a.min_speed);
  std::string csv = "scenario_id,agent_id,d_lon,d_lat,speed\n";
  for (const ComplexityEntry & e : dist.samples) {
    csv += fmt::format("{},{},{},{},{}\n", e.scenario_id, e.agent_id, e.d.d_lon, e.d.d_lat, e.d.speed_at_start);
  }
  write_text_file(a.out, csv);
  const SampleMoments moments = sample_moments(dist.samples);
  err << fmt::format(
    "oodeval complexity: t_start={} evaluated={} samples={} excluded_low_speed={} excluded_other={} "
    "mean=[{:.4f}, {:.4f}] cov_trace={:.6f}\n",
    a.t_start, dist.evaluated(), dist.samples.size(), dist.excluded_low_speed, dist.excluded_other.size(),
    moments.mean.x, moments.mean.y, moments.trace());

  if (!a.kde.empty()) {
    std::vector<Vec2> points;
    points.reserve(dist.samples.size());
    for (const ComplexityEntry & e : dist.samples) {
      points.push_back({e.d.d_lon, e.d.d_lat});
    }
    const DensityGrid grid = kde_2d(points, a.resolution);
    const std::vector<double> levels = hdr_levels(grid, masses);
    std::string grid_csv = "x,y,density\n";
    for (int iy = 0; iy < grid.ny; ++iy) {
      for (int ix = 0; ix < grid.nx; ++ix) {
        const Vec2 c = grid.cell_center(ix, iy);
        grid_csv += fmt::format("{},{},{}\n", c.x, c.y, grid.at(ix, iy));
      }
    }
    write_text_file(a.kde, grid_csv);
    std::string hdr_csv = "mass,threshold,enclosed_fraction\n";
    for (std::size_t i = 0; i < masses.size(); ++i) {
      hdr_csv += fmt::format("{},{},{}\n", masses[i], levels[i], enclosed_fraction(grid, levels[i], points));
    }
    const std::string sidecar = with_suffix(output_stem(a.kde), ".hdr.csv");
    write_text_file(sidecar, hdr_csv);
    err << fmt::format(
      "oodeval complexity: kde grid={}x{} bandwidth=[{:.4f}, {:.4f}] out={} levels={}\n", grid.nx, grid.ny,
      grid.bandwidth_x, grid.bandwidth_y, a.kde, sidecar);
  }
  err << fmt::format("oodeval complexity: elapsed={:.2f}s\n", seconds_since(start));
  return kExitOk;
}

struct ReportTableArgs
{
  std::string runs;
  std::string reference = "QCNet";
  std::string out;
};

int run_report_table(const ReportTableArgs & a, std::ostream & err)
{
  require_input_dir(a.runs);
  require_output_path(a.out);
  const RunRegistry registry = load_registry(a.runs, a.reference);
  const Rendered rendered = render_table(registry);
  const fs::path stem = output_stem(a.out);
  write_text_file(with_suffix(stem, ".txt"), rendered.text);
  write_text_file(with_suffix(stem, ".csv"), rendered.csv);
  err << fmt::format("oodeval report table: runs={} out={}.{{txt,csv}}\n", registry.runs().size(), stem.string());
  return kExitOk;
}

struct ReportDeltaArgs
{
  std::string id;
  std::string ood;
  std::string out;
};

int run_report_delta(const ReportDeltaArgs & a, std::ostream & err)
{
  require_input_dir(a.id);
  require_input_dir(a.ood);
  require_output_path(a.out);
  const Rendered rendered = render_delta_summary(load_registry(a.id), load_registry(a.ood));
  const fs::path stem = output_stem(a.out);
  write_text_file(with_suffix(stem, ".txt"), rendered.text);
  write_text_file(with_suffix(stem, ".csv"), rendered.csv);
  err << fmt::format("oodeval report delta: out={}.{{txt,csv}}\n", stem.string());
  return kExitOk;
}

// Moves `--config <file>` settings into the argument list directly after the
// subcommand path, so explicit flags (which come later) take precedence.
std::vector<std::string> expand_config(
  const std::vector<std::string> & args, CLI::App & app)
{
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] == "--config") {
      config_path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config_path = args[i].substr(9);
    }
  }
  if (args.size() > 0 && args.back().rfind("--config=", 0) == 0) {
    config_path = args.back().substr(9);
  }
  if (!config_path) {
    return args;
  }

  std::size_t insert_at = 0;
  CLI::App * target = nullptr;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (CLI::App * sub = app.get_subcommand_no_throw(args[i]); sub != nullptr) {
      target = sub;
      insert_at = i + 1;
      if (i + 1 < args.size()) {
        if (CLI::App * nested = sub->get_subcommand_no_throw(args[i + 1]); nested != nullptr) {
          target = nested;
          insert_at = i + 2;
        }
      }
      break;
    }
  }
  if (target == nullptr) {
    throw Error(ErrorCode::kConfigError, "--config requires a subcommand");
  }
  require_input_file(*config_path);
  std::vector<std::string> injected;
  for (const auto & [key, value] : read_run_config(*config_path)) {
    if (key == "config" || target->get_option_no_throw("--" + key) == nullptr) {
      throw Error(
        ErrorCode::kConfigError,
        fmt::format("{}: unknown key '{}' for '{}'", *config_path, key, target->get_name()));
    }
    injected.push_back("--" + key);
    injected.push_back(value);
  }
  std::vector<std::string> expanded(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(insert_at));
  expanded.insert(expanded.end(), injected.begin(), injected.end());
  expanded.insert(expanded.end(), args.begin() + static_cast<std::ptrdiff_t>(insert_at), args.end());
  return expanded;
}

}  // namespace

int dispatch(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  CLI::App app{"Cross-dataset trajectory prediction evaluation toolkit", "oodeval"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag(
    "--version", fmt::format("oodeval {} (scenario schema {})", kToolVersion, kSchemaVersion));
  app.require_subcommand(1);
  std::string config_unused;

  GenerateArgs gen;
  auto * generate = app.add_subcommand("generate", "Write a deterministic synthetic scenario corpus");
  generate->add_option("--config", config_unused, "key = value settings file");
  generate->add_option("--out", gen.out, "Scenario file to write")->required();
  generate->add_option("--scenario-count", gen.scenario_count);
  generate->add_option("--step-count", gen.step_count);
  generate->add_option("--maneuver-mix", gen.maneuver_mix, "e.g. constant_velocity:1,turn_left:0.5");
  generate->add_option("--maneuver-window", gen.maneuver_window, "start,end steps");
  generate->add_option("--speed-range", gen.speed_range, "min,max m/s");
  generate->add_option("--noise-sigma", gen.noise_sigma, "Position noise std. dev. [m]");
  generate->add_option("--agent-count-range", gen.agent_count_range, "min,max tracks per scene");
  generate->add_option("--map-elements-per-scene", gen.map_elements);
  generate->add_option("--seed", gen.seed);
  generate->add_option("--jobs", gen.jobs)->check(CLI::PositiveNumber);

  HomogenizeArgs hom;
  auto * homogenize = app.add_subcommand("homogenize", "Re-slice scenarios into the common sample layout");
  homogenize->add_option("--config", config_unused, "key = value settings file");
  homogenize->add_option("--in", hom.in)->required();
  homogenize->add_option("--out", hom.out)->required();
  homogenize->add_option("--profile", hom.profile)->check(CLI::IsMember({"a2", "wo", "auto"}));
  homogenize->add_option("--cap-agents", hom.cap_agents);
  homogenize->add_option("--cap-map", hom.cap_map);
  homogenize->add_option("--rejects", hom.rejects)->required();
  homogenize->add_option("--jobs", hom.jobs)->check(CLI::PositiveNumber);

  PredictArgs pred;
  auto * predict = app.add_subcommand("predict", "Run a baseline predictor on homogenized samples");
  predict->add_option("--config", config_unused, "key = value settings file");
  predict->add_option("--in", pred.in)->required();
  predict->add_option("--out", pred.out)->required();
  predict->add_option("--model", pred.model)->check(CLI::IsMember({"cv", "poly"}));
  predict->add_option("--degrees", pred.degrees, "Comma-separated polynomial degrees");
  predict->add_option("--jobs", pred.jobs)->check(CLI::PositiveNumber);

  EvalArgs ev;
  auto * eval = app.add_subcommand("eval", "Score predictions with minADE_K / minFDE_K");
  eval->add_option("--config", config_unused, "key = value settings file");
  eval->add_option("--scenarios", ev.scenarios)->required();
  eval->add_option("--predictions", ev.predictions)->required();
  eval->add_option("--k", ev.ks, "Comma-separated K values");
  eval->add_option("--out", ev.out)->required();
  eval->add_option("--records", ev.records, "Optional per-sample CSV");
  eval->add_option("--model-tag", ev.model_tag);
  eval->add_option("--train-tag", ev.train_tag);
  eval->add_option("--test-tag", ev.test_tag);
  eval->add_option("--jobs", ev.jobs)->check(CLI::PositiveNumber);

  DeltaArgs dl;
  auto * delta = app.add_subcommand("delta", "OoD minus ID differences of two metric files");
  delta->add_option("--config", config_unused, "key = value settings file");
  delta->add_option("--id", dl.id)->required();
  delta->add_option("--ood", dl.ood)->required();
  delta->add_option("--out", dl.out)->required();

  ComplexityArgs cx;
  auto * complexity = app.add_subcommand("complexity", "Normalized deviation from constant velocity");
  complexity->add_option("--config", config_unused, "key = value settings file");
  complexity->add_option("--in", cx.in)->required();
  complexity->add_option("--t-start", cx.t_start);
  complexity->add_option("--horizon", cx.horizon);
  complexity->add_option("--min-speed", cx.min_speed);
  complexity->add_option("--out", cx.out)->required();
  complexity->add_option("--kde", cx.kde, "Optional density grid CSV");
  complexity->add_option("--masses", cx.masses, "HDR masses, e.g. 0.3,0.6,0.9");
  complexity->add_option("--resolution", cx.resolution);

  auto * report = app.add_subcommand("report", "Render tables and delta summaries");
  report->require_subcommand(1);
  ReportTableArgs rt;
  auto * table = report->add_subcommand("table", "Absolute values with reference-relative percentages");
  table->add_option("--config", config_unused, "key = value settings file");
  table->add_option("--runs", rt.runs)->required();
  table->add_option("--reference", rt.reference);
  table->add_option("--out", rt.out, "Output stem; writes <stem>.txt and <stem>.csv")->required();
  ReportDeltaArgs rd;
  auto * report_delta = report->add_subcommand("delta", "Per-model ID vs OoD deltas");
  report_delta->add_option("--config", config_unused, "key = value settings file");
  report_delta->add_option("--id", rd.id)->required();
  report_delta->add_option("--ood", rd.ood)->required();
  report_delta->add_option("--out", rd.out, "Output stem; writes <stem>.txt and <stem>.csv")->required();

  try {
    std::vector<std::string> expanded = expand_config(args, app);
    std::vector<const char *> argv{"oodeval"};
    for (const auto & arg : expanded) {
      argv.push_back(arg.c_str());
    }
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError & e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitValidation;
    }

    if (generate->parsed()) {
      return run_generate(gen, err);
    }
    if (homogenize->parsed()) {
      return run_homogenize(hom, err);
    }
    if (predict->parsed()) {
      return run_predict(pred, err);
    }
    if (eval->parsed()) {
      return run_eval(ev, err);
    }
    if (delta->parsed()) {
      return run_delta(dl, err);
    }
    if (complexity->parsed()) {
      return run_complexity(cx, err);
    }
    if (table->parsed()) {
      return run_report_table(rt, err);
    }
    if (report_delta->parsed()) {
      return run_report_delta(rd, err);
    }
    return kExitValidation;
  } catch (const Error & e) {
    err << "oodeval: error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception & e) {
    err << "oodeval: internal error: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace oodeval
