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

#include "oodeval/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/algorithm/string/split.hpp>
#include <fmt/core.h>

#include "oodeval/scenario_io.hpp"

namespace oodeval
{

std::string metric_name(DisplacementKind kind, int k)
{
  return fmt::format("{}_{}", kind == DisplacementKind::kAverage ? "minADE" : "minFDE", k);
}

std::vector<std::size_t> select_modes(const PredictionSet & prediction, int k)
{
  if (k < 1 || static_cast<std::size_t>(k) > prediction.modes.size()) {
    throw Error(
      ErrorCode::kInsufficientModes,
      fmt::format(
        "({}, {}): K={} but {} modes available", prediction.scenario_id, prediction.agent_id, k,
        prediction.modes.size()));
  }
  std::vector<std::size_t> order(prediction.modes.size());
  std::iota(order.begin(), order.end(), 0);
  if (!prediction.probabilities.empty()) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return prediction.probabilities[a] > prediction.probabilities[b];
    });
  }
  order.resize(static_cast<std::size_t>(k));
  return order;
}

namespace
{

void check_lengths(std::span<const Vec2> mode, std::span<const Vec2> truth)
{
  if (mode.size() != truth.size() || truth.empty()) {
    throw Error(
      ErrorCode::kValidationError,
      fmt::format("mode has {} points, ground truth has {}", mode.size(), truth.size()));
  }
}

template <typename PerMode>
double best_of(const PredictionSet & prediction, int k, PerMode && per_mode)
{
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t index : select_modes(prediction, k)) {
    best = std::min(best, per_mode(prediction.modes[index]));
  }
  return best;
}

}  // namespace

double average_displacement(std::span<const Vec2> mode, std::span<const Vec2> truth)
{
  check_lengths(mode, truth);
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    sum += distance(mode[i], truth[i]);
  }
  return sum / static_cast<double>(truth.size());
}

double final_displacement(std::span<const Vec2> mode, std::span<const Vec2> truth)
{
  check_lengths(mode, truth);
  return distance(mode.back(), truth.back());
}

double min_ade(const PredictionSet & prediction, std::span<const Vec2> truth, int k)
{
  return best_of(prediction, k, [&](const Trajectory & mode) { return average_displacement(mode, truth); });
}

double min_fde(const PredictionSet & prediction, std::span<const Vec2> truth, int k)
{
  return best_of(prediction, k, [&](const Trajectory & mode) { return final_displacement(mode, truth); });
}

MetricRecord evaluate_sample(
  const PredictionSet & prediction, std::span<const Vec2> truth, std::span<const int> ks)
{
  MetricRecord record;
  record.scenario_id = prediction.scenario_id;
  record.agent_id = prediction.agent_id;
  for (int k : ks) {
    if (k >= 1 && static_cast<std::size_t>(k) <= prediction.modes.size()) {
      record.min_ade[k] = min_ade(prediction, truth, k);
      record.min_fde[k] = min_fde(prediction, truth, k);
    }
  }
  return record;
}

std::optional<double> DatasetMetrics::find(std::string_view name) const
{
  for (const auto & v : values) {
    if (v.name == name) {
      return v.value;
    }
  }
  return std::nullopt;
}

double compensated_sum(std::span<const double> values)
{
  double sum = 0.0;
  double compensation = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      compensation += (sum - t) + v;
    } else {
      compensation += (v - t) + sum;
    }
    sum = t;
  }
  return sum + compensation;
}

DatasetMetrics aggregate(std::span<const MetricRecord> records, const RunTags & tags, std::span<const int> ks)
{
  if (records.empty()) {
    throw Error(ErrorCode::kEmptySet, "cannot aggregate an empty record set");
  }
  std::vector<int> sorted_ks(ks.begin(), ks.end());
  std::sort(sorted_ks.begin(), sorted_ks.end());
  sorted_ks.erase(std::unique(sorted_ks.begin(), sorted_ks.end()), sorted_ks.end());

  DatasetMetrics metrics;
  metrics.sample_count = records.size();
  metrics.tags = tags;
  std::vector<double> column(records.size());
  const double n = static_cast<double>(records.size());
  for (int k : sorted_ks) {
    for (auto kind : {DisplacementKind::kAverage, DisplacementKind::kFinal}) {
      for (std::size_t i = 0; i < records.size(); ++i) {
        const auto & source = kind == DisplacementKind::kAverage ? records[i].min_ade : records[i].min_fde;
        auto it = source.find(k);
        if (it == source.end()) {
          throw Error(
            ErrorCode::kValidationError,
            fmt::format(
              "record ({}, {}) has no {}", records[i].scenario_id, records[i].agent_id,
              metric_name(kind, k)));
        }
        column[i] = it->second;
      }
      metrics.values.push_back({metric_name(kind, k), compensated_sum(column) / n});
    }
  }
  return metrics;
}

std::vector<DeltaRecord> delta_metrics(const DatasetMetrics & id, const DatasetMetrics & ood)
{
  if (id.tags.model != ood.tags.model) {
    throw Error(
      ErrorCode::kTagMismatch,
      fmt::format("ID model '{}' vs OoD model '{}'", id.tags.model, ood.tags.model));
  }
  std::vector<DeltaRecord> deltas;
  for (const MetricValue & v : id.values) {
    const std::optional<double> other = ood.find(v.name);
    if (!other) {
      throw Error(
        ErrorCode::kValidationError, fmt::format("metric {} missing from the OoD run", v.name));
    }
    DeltaRecord d;
    d.metric = v.name;
    d.id_value = v.value;
    d.ood_value = *other;
    d.delta = d.ood_value - d.id_value;
    if (d.id_value != 0.0) {
      d.relative_pct = 100.0 * d.delta / d.id_value;
    }
    deltas.push_back(d);
  }
  return deltas;
}

std::vector<PercentageRow> relative_to_reference(
  std::span<const DatasetMetrics> metrics, std::string_view reference_model)
{
  auto reference = std::find_if(metrics.begin(), metrics.end(), [&](const DatasetMetrics & m) {
    return m.tags.model == reference_model;
  });
  if (reference == metrics.end()) {
    throw Error(
      ErrorCode::kMissingReference, fmt::format("reference model '{}' not present", reference_model));
  }
  std::vector<PercentageRow> rows;
  for (const DatasetMetrics & m : metrics) {
    PercentageRow row;
    row.tags = m.tags;
    for (const MetricValue & v : m.values) {
      const std::optional<double> base = reference->find(v.name);
      if (!base || !(*base > 0.0)) {
        throw Error(
          ErrorCode::kValidationError,
          fmt::format("reference '{}' has no positive {}", reference_model, v.name));
      }
      row.percent.push_back({v.name, 100.0 * v.value / *base});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace
{

std::vector<std::string> split_csv(const std::string & line)
{
  std::vector<std::string> fields;
  boost::algorithm::split(fields, line, [](char c) { return c == ','; });
  return fields;
}

void check_tag(const std::string & tag)
{
  if (tag.find_first_of(",\"\n\r") != std::string::npos) {
    throw Error(ErrorCode::kConfigError, fmt::format("tag '{}' may not contain commas, quotes or newlines", tag));
  }
}

double parse_double(const std::string & text, const std::filesystem::path & path, std::size_t line)
{
  double value = 0.0;
  const char * end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(
      ErrorCode::kParseError, fmt::format("{}:{}: '{}' is not a number", path.string(), line, text));
  }
  return value;
}

}  // namespace

void write_metrics_csv(const DatasetMetrics & metrics, const std::filesystem::path & path)
{
  check_tag(metrics.tags.model);
  check_tag(metrics.tags.train_set);
  check_tag(metrics.tags.test_set);
  std::string out = "model,train_set,test_set,sample_count,metric,value\n";
  for (const MetricValue & v : metrics.values) {
    out += fmt::format(
      "{},{},{},{},{},{}\n", metrics.tags.model, metrics.tags.train_set, metrics.tags.test_set,
      metrics.sample_count, v.name, v.value);
  }
  write_text_file(path, out);
}

DatasetMetrics read_metrics_csv(const std::filesystem::path & path)
{
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty() || lines.front() != "model,train_set,test_set,sample_count,metric,value") {
    throw Error(ErrorCode::kParseError, fmt::format("{}: missing or unexpected metrics header", path.string()));
  }
  DatasetMetrics metrics;
  bool first = true;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) {
      continue;
    }
    const std::vector<std::string> f = split_csv(lines[i]);
    if (f.size() != 6) {
      throw Error(
        ErrorCode::kParseError, fmt::format("{}:{}: expected 6 columns, got {}", path.string(), i + 1, f.size()));
    }
    const RunTags tags{f[0], f[1], f[2]};
    const auto count = static_cast<std::size_t>(parse_double(f[3], path, i + 1));
    if (first) {
      metrics.tags = tags;
      metrics.sample_count = count;
      first = false;
    } else if (!(tags == metrics.tags) || count != metrics.sample_count) {
      throw Error(
        ErrorCode::kParseError, fmt::format("{}:{}: rows describe different runs", path.string(), i + 1));
    }
    metrics.values.push_back({f[4], parse_double(f[5], path, i + 1)});
  }
  if (first) {
    throw Error(ErrorCode::kEmptySet, fmt::format("{}: no metric rows", path.string()));
  }
  return metrics;
}

void write_records_csv(
  std::span<const MetricRecord> records, std::span<const int> ks, const std::filesystem::path & path)
{
  std::string out = "scenario_id,agent_id";
  for (int k : ks) {
    out += "," + metric_name(DisplacementKind::kAverage, k) + "," + metric_name(DisplacementKind::kFinal, k);
  }
  out += '\n';
  for (const MetricRecord & r : records) {
    out += r.scenario_id + "," + r.agent_id;
    for (int k : ks) {
      auto ade = r.min_ade.find(k);
      auto fde = r.min_fde.find(k);
      out += ade == r.min_ade.end() ? std::string(",") : fmt::format(",{}", ade->second);
      out += fde == r.min_fde.end() ? std::string(",") : fmt::format(",{}", fde->second);
    }
    out += '\n';
  }
  write_text_file(path, out);
}

std::string delta_csv(std::span<const DeltaRecord> deltas)
{
  std::string out = "metric,id_value,ood_value,delta,relative_pct\n";
  for (const DeltaRecord & d : deltas) {
    out += fmt::format("{},{},{},{},", d.metric, d.id_value, d.ood_value, d.delta);
    out += d.relative_pct ? fmt::format("{}", *d.relative_pct) : std::string("NA");
    out += '\n';
  }
  return out;
}

}  // namespace oodeval
