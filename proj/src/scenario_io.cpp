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

#include "oodeval/scenario_io.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "oodeval/parallel.hpp"

namespace oodeval
{
namespace
{

using nlohmann::json;
using Buffer = fmt::memory_buffer;

void append_string(Buffer & out, std::string_view text)
{
  // nlohmann handles JSON escaping of arbitrary identifiers.
  const std::string quoted = json(std::string(text)).dump();
  out.append(quoted.data(), quoted.data() + quoted.size());
}

// Shortest round-trip representation.
void append_double(Buffer & out, double value) { fmt::format_to(std::back_inserter(out), "{}", value); }

void append_point(Buffer & out, Vec2 p)
{
  out.push_back('[');
  append_double(out, p.x);
  out.push_back(',');
  append_double(out, p.y);
  out.push_back(']');
}

void append_literal(Buffer & out, std::string_view text) { out.append(text.data(), text.data() + text.size()); }

// Field access with line/path-aware PARSE_ERROR messages.
class RecordReader
{
public:
  explicit RecordReader(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string & what, const std::string & path) const
  {
    throw Error(ErrorCode::kParseError, fmt::format("line {}: {} at {}", line_, what, path));
  }

  const json & field(const json & object, const char * key, const std::string & path) const
  {
    if (!object.is_object()) {
      fail("expected object", path);
    }
    auto it = object.find(key);
    if (it == object.end()) {
      fail(fmt::format("missing field '{}'", key), path);
    }
    return *it;
  }

  double number(const json & object, const char * key, const std::string & path) const
  {
    const json & value = field(object, key, path);
    if (!value.is_number()) {
      fail(fmt::format("field '{}' must be a number", key), path);
    }
    return value.get<double>();
  }

  std::int64_t integer(const json & object, const char * key, const std::string & path) const
  {
    const json & value = field(object, key, path);
    if (!value.is_number_integer()) {
      fail(fmt::format("field '{}' must be an integer", key), path);
    }
    return value.get<std::int64_t>();
  }

  bool boolean(const json & object, const char * key, const std::string & path) const
  {
    const json & value = field(object, key, path);
    if (!value.is_boolean()) {
      fail(fmt::format("field '{}' must be a boolean", key), path);
    }
    return value.get<bool>();
  }

  std::string string(const json & object, const char * key, const std::string & path) const
  {
    const json & value = field(object, key, path);
    if (!value.is_string()) {
      fail(fmt::format("field '{}' must be a string", key), path);
    }
    return value.get<std::string>();
  }

  const json & array(const json & object, const char * key, const std::string & path) const
  {
    const json & value = field(object, key, path);
    if (!value.is_array()) {
      fail(fmt::format("field '{}' must be an array", key), path);
    }
    return value;
  }

  Vec2 point(const json & value, const std::string & path) const
  {
    if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
      fail("expected [x, y] pair", path);
    }
    return {value[0].get<double>(), value[1].get<double>()};
  }

private:
  std::size_t line_;
};

json parse_json_line(std::string_view line, std::size_t line_number)
{
  json record = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (record.is_discarded()) {
    throw Error(ErrorCode::kParseError, fmt::format("line {}: malformed JSON", line_number));
  }
  if (!record.is_object()) {
    throw Error(ErrorCode::kParseError, fmt::format("line {}: record must be an object", line_number));
  }
  return record;
}

bool is_blank(std::string_view line)
{
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::ofstream open_for_write(const std::filesystem::path & path)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}' for writing", path.string()));
  }
  return out;
}

void finish_write(std::ofstream & out, const std::filesystem::path & path)
{
  out.flush();
  if (!out) {
    throw Error(ErrorCode::kIoError, fmt::format("write to '{}' failed", path.string()));
  }
}

}  // namespace

std::string serialize_scenario(const Scenario & scenario)
{
  Buffer out;
  fmt::format_to(std::back_inserter(out), "{{\"schema_version\":{},\"scenario_id\":", kSchemaVersion);
  append_string(out, scenario.scenario_id);
  append_literal(out, ",\"source_profile\":");
  append_string(out, to_string(scenario.source_profile));
  fmt::format_to(std::back_inserter(out), ",\"step_count\":{},\"tracks\":[", scenario.step_count);
  for (std::size_t t = 0; t < scenario.tracks.size(); ++t) {
    const Track & track = scenario.tracks[t];
    if (t > 0) {
      out.push_back(',');
    }
    append_literal(out, "{\"agent_id\":");
    append_string(out, track.agent_id);
    append_literal(out, ",\"agent_kind\":");
    append_string(out, to_string(track.agent_kind));
    append_literal(out, track.is_ego ? ",\"is_ego\":true,\"states\":[" : ",\"is_ego\":false,\"states\":[");
    for (std::size_t k = 0; k < track.states.size(); ++k) {
      const AgentState & s = track.states[k];
      if (k > 0) {
        out.push_back(',');
      }
      append_literal(out, "{\"x\":");
      append_double(out, s.position.x);
      append_literal(out, ",\"y\":");
      append_double(out, s.position.y);
      append_literal(out, ",\"heading\":");
      append_double(out, s.heading);
      append_literal(out, ",\"vx\":");
      append_double(out, s.velocity.x);
      append_literal(out, ",\"vy\":");
      append_double(out, s.velocity.y);
      append_literal(out, s.observed ? ",\"observed\":true}" : ",\"observed\":false}");
    }
    append_literal(out, "]}");
  }
  append_literal(out, "],\"map_elements\":[");
  for (std::size_t m = 0; m < scenario.map_elements.size(); ++m) {
    const MapElement & element = scenario.map_elements[m];
    if (m > 0) {
      out.push_back(',');
    }
    append_literal(out, "{\"element_id\":");
    append_string(out, element.element_id);
    append_literal(out, ",\"kind\":");
    append_string(out, to_string(element.kind));
    append_literal(out, ",\"points\":[");
    for (std::size_t i = 0; i < element.polyline.size(); ++i) {
      if (i > 0) {
        out.push_back(',');
      }
      append_point(out, element.polyline[i]);
    }
    append_literal(out, "]}");
  }
  append_literal(out, "],\"focal_agent_id\":");
  if (scenario.focal_agent_id) {
    append_string(out, *scenario.focal_agent_id);
  } else {
    append_literal(out, "null");
  }
  append_literal(out, ",\"metadata\":{");
  bool first = true;
  auto separator = [&]() {
    if (!first) {
      out.push_back(',');
    }
    first = false;
  };
  if (scenario.metadata.maneuver) {
    separator();
    append_literal(out, "\"maneuver\":");
    append_string(out, *scenario.metadata.maneuver);
  }
  if (scenario.metadata.noise_sigma) {
    separator();
    append_literal(out, "\"noise_sigma\":");
    append_double(out, *scenario.metadata.noise_sigma);
  }
  if (!scenario.metadata.junction_lane_ids.empty()) {
    separator();
    append_literal(out, "\"junction_lane_ids\":[");
    for (std::size_t i = 0; i < scenario.metadata.junction_lane_ids.size(); ++i) {
      if (i > 0) {
        out.push_back(',');
      }
      append_string(out, scenario.metadata.junction_lane_ids[i]);
    }
    out.push_back(']');
  }
  append_literal(out, "}}");
  return fmt::to_string(out);
}

Scenario parse_scenario_record(std::string_view line, std::size_t line_number)
{
  const json record = parse_json_line(line, line_number);
  const RecordReader r(line_number);

  const auto version = r.integer(record, "schema_version", "record");
  if (version != kSchemaVersion) {
    r.fail(fmt::format("unsupported schema_version {}", version), "record");
  }

  Scenario scenario;
  scenario.scenario_id = r.string(record, "scenario_id", "record");
  const std::string profile = r.string(record, "source_profile", "record");
  const auto parsed_profile = parse_source_profile(profile);
  if (!parsed_profile) {
    r.fail(fmt::format("unknown source_profile '{}'", profile), "record");
  }
  scenario.source_profile = *parsed_profile;
  scenario.step_count = static_cast<int>(r.integer(record, "step_count", "record"));

  const json & tracks = r.array(record, "tracks", "record");
  scenario.tracks.reserve(tracks.size());
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    const std::string path = fmt::format("tracks[{}]", t);
    const json & jt = tracks[t];
    Track track;
    track.agent_id = r.string(jt, "agent_id", path);
    const std::string kind = r.string(jt, "agent_kind", path);
    const auto parsed_kind = parse_agent_kind(kind);
    if (!parsed_kind) {
      r.fail(fmt::format("unknown agent_kind '{}'", kind), path);
    }
    track.agent_kind = *parsed_kind;
    track.is_ego = r.boolean(jt, "is_ego", path);
    const json & states = r.array(jt, "states", path);
    track.states.reserve(states.size());
    for (std::size_t k = 0; k < states.size(); ++k) {
      const std::string state_path = fmt::format("{}.states[{}]", path, k);
      const json & js = states[k];
      AgentState s;
      s.position = {r.number(js, "x", state_path), r.number(js, "y", state_path)};
      s.heading = r.number(js, "heading", state_path);
      s.velocity = {r.number(js, "vx", state_path), r.number(js, "vy", state_path)};
      s.observed = r.boolean(js, "observed", state_path);
      track.states.push_back(s);
    }
    scenario.tracks.push_back(std::move(track));
  }

  const json & elements = r.array(record, "map_elements", "record");
  scenario.map_elements.reserve(elements.size());
  for (std::size_t m = 0; m < elements.size(); ++m) {
    const std::string path = fmt::format("map_elements[{}]", m);
    const json & je = elements[m];
    MapElement element;
    element.element_id = r.string(je, "element_id", path);
    const std::string kind = r.string(je, "kind", path);
    const auto parsed_kind = parse_map_element_kind(kind);
    if (!parsed_kind) {
      r.fail(fmt::format("unknown map element kind '{}'", kind), path);
    }
    element.kind = *parsed_kind;
    const json & points = r.array(je, "points", path);
    element.polyline.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      element.polyline.push_back(r.point(points[i], fmt::format("{}.points[{}]", path, i)));
    }
    scenario.map_elements.push_back(std::move(element));
  }

  const json & focal = r.field(record, "focal_agent_id", "record");
  if (focal.is_string()) {
    scenario.focal_agent_id = focal.get<std::string>();
  } else if (!focal.is_null()) {
    r.fail("field 'focal_agent_id' must be a string or null", "record");
  }

  const json & metadata = r.field(record, "metadata", "record");
  if (!metadata.is_object()) {
    r.fail("field 'metadata' must be an object", "record");
  }
  if (metadata.contains("maneuver")) {
    scenario.metadata.maneuver = r.string(metadata, "maneuver", "metadata");
  }
  if (metadata.contains("noise_sigma")) {
    scenario.metadata.noise_sigma = r.number(metadata, "noise_sigma", "metadata");
  }
  if (metadata.contains("junction_lane_ids")) {
    const json & ids = r.array(metadata, "junction_lane_ids", "metadata");
    for (const auto & id : ids) {
      if (!id.is_string()) {
        r.fail("junction_lane_ids entries must be strings", "metadata");
      }
      scenario.metadata.junction_lane_ids.push_back(id.get<std::string>());
    }
  }
  return scenario;
}

std::vector<std::string> read_lines(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, fmt::format("cannot open '{}' for reading", path.string()));
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(std::move(line));
  }
  if (in.bad()) {
    throw Error(ErrorCode::kIoError, fmt::format("read from '{}' failed", path.string()));
  }
  return lines;
}

void write_text_file(const std::filesystem::path & path, std::string_view content)
{
  std::ofstream out = open_for_write(path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  finish_write(out, path);
}

namespace
{

std::vector<Scenario> parse_scenario_lines(const std::vector<std::string> & lines, int jobs)
{
  std::vector<std::size_t> record_lines;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (!is_blank(lines[i])) {
      record_lines.push_back(i);
    }
  }
  std::vector<Scenario> scenarios(record_lines.size());
  parallel_for(record_lines.size(), jobs, [&](std::size_t i) {
    const std::size_t line = record_lines[i];
    Scenario scenario = parse_scenario_record(lines[line], line + 1);
    ValidationReport report = validate_scenario(scenario);
    if (!report.ok()) {
      throw ScenarioValidationError(scenario.scenario_id, std::move(report));
    }
    scenarios[i] = std::move(scenario);
  });
  return scenarios;
}

}  // namespace

std::vector<Scenario> parse_scenarios(const std::filesystem::path & path, int jobs)
{
  return parse_scenario_lines(read_lines(path), jobs);
}

std::vector<Scenario> parse_scenarios(std::istream & in, int jobs)
{
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    lines.push_back(std::move(line));
  }
  return parse_scenario_lines(lines, jobs);
}

std::size_t write_scenarios(std::span<const Scenario> scenarios, std::ostream & out)
{
  for (const Scenario & scenario : scenarios) {
    ValidationReport report = validate_scenario(scenario);
    if (!report.ok()) {
      throw ScenarioValidationError(scenario.scenario_id, std::move(report));
    }
  }
  for (const Scenario & scenario : scenarios) {
    out << serialize_scenario(scenario) << '\n';
  }
  return scenarios.size();
}

std::size_t write_scenarios(std::span<const Scenario> scenarios, const std::filesystem::path & path)
{
  for (const Scenario & scenario : scenarios) {
    ValidationReport report = validate_scenario(scenario);
    if (!report.ok()) {
      throw ScenarioValidationError(scenario.scenario_id, std::move(report));
    }
  }
  std::ofstream out = open_for_write(path);
  for (const Scenario & scenario : scenarios) {
    out << serialize_scenario(scenario) << '\n';
  }
  finish_write(out, path);
  return scenarios.size();
}

std::string serialize_prediction(const PredictionSet & prediction)
{
  Buffer out;
  append_literal(out, "{\"scenario_id\":");
  append_string(out, prediction.scenario_id);
  append_literal(out, ",\"agent_id\":");
  append_string(out, prediction.agent_id);
  append_literal(out, ",\"modes\":[");
  for (std::size_t m = 0; m < prediction.modes.size(); ++m) {
    if (m > 0) {
      out.push_back(',');
    }
    out.push_back('[');
    for (std::size_t i = 0; i < prediction.modes[m].size(); ++i) {
      if (i > 0) {
        out.push_back(',');
      }
      append_point(out, prediction.modes[m][i]);
    }
    out.push_back(']');
  }
  out.push_back(']');
  if (!prediction.probabilities.empty()) {
    append_literal(out, ",\"probabilities\":[");
    for (std::size_t m = 0; m < prediction.probabilities.size(); ++m) {
      if (m > 0) {
        out.push_back(',');
      }
      append_double(out, prediction.probabilities[m]);
    }
    out.push_back(']');
  }
  out.push_back('}');
  return fmt::to_string(out);
}

PredictionSet parse_prediction_record(std::string_view line, std::size_t line_number)
{
  const json record = parse_json_line(line, line_number);
  const RecordReader r(line_number);
  PredictionSet prediction;
  prediction.scenario_id = r.string(record, "scenario_id", "record");
  prediction.agent_id = r.string(record, "agent_id", "record");
  const json & modes = r.array(record, "modes", "record");
  prediction.modes.reserve(modes.size());
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const std::string path = fmt::format("modes[{}]", m);
    if (!modes[m].is_array()) {
      r.fail("mode must be an array of points", path);
    }
    Trajectory mode;
    mode.reserve(modes[m].size());
    for (std::size_t i = 0; i < modes[m].size(); ++i) {
      mode.push_back(r.point(modes[m][i], fmt::format("{}[{}]", path, i)));
    }
    prediction.modes.push_back(std::move(mode));
  }
  if (record.contains("probabilities")) {
    const json & probabilities = r.array(record, "probabilities", "record");
    for (const auto & p : probabilities) {
      if (!p.is_number()) {
        r.fail("probabilities must be numbers", "probabilities");
      }
      prediction.probabilities.push_back(p.get<double>());
    }
  }
  return prediction;
}

std::vector<PredictionSet> parse_predictions(const std::filesystem::path & path, std::size_t horizon_steps)
{
  const std::vector<std::string> lines = read_lines(path);
  std::vector<PredictionSet> predictions;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_blank(lines[i])) {
      continue;
    }
    PredictionSet prediction = parse_prediction_record(lines[i], i + 1);
    try {
      validate_prediction_set(prediction, horizon_steps);
    } catch (const Error & e) {
      throw Error(ErrorCode::kValidationError, fmt::format("line {}: {}", i + 1, e.what()));
    }
    predictions.push_back(std::move(prediction));
  }
  return predictions;
}

std::size_t write_predictions(std::span<const PredictionSet> predictions, const std::filesystem::path & path)
{
  std::ofstream out = open_for_write(path);
  for (const PredictionSet & prediction : predictions) {
    out << serialize_prediction(prediction) << '\n';
  }
  finish_write(out, path);
  return predictions.size();
}

}  // namespace oodeval
