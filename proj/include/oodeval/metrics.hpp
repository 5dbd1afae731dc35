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

// Best-of-K displacement errors, dataset aggregates, ID/OoD deltas and
// reference-relative percentages.

#ifndef OODEVAL_METRICS_HPP_
#define OODEVAL_METRICS_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodeval/prediction.hpp"

namespace oodeval
{

enum class DisplacementKind { kAverage, kFinal };

/// "minADE_6", "minFDE_1", ...
std::string metric_name(DisplacementKind kind, int k);

/// Indices of the K modes scored as "first K": descending probability, ties
/// (and missing probabilities) by mode index. Throws INSUFFICIENT_MODES.
std::vector<std::size_t> select_modes(const PredictionSet & prediction, int k);

/// Mean over steps of the Euclidean distance, summed in step order.
double average_displacement(std::span<const Vec2> mode, std::span<const Vec2> truth);
/// Euclidean distance at the last step.
double final_displacement(std::span<const Vec2> mode, std::span<const Vec2> truth);

double min_ade(const PredictionSet & prediction, std::span<const Vec2> truth, int k);
double min_fde(const PredictionSet & prediction, std::span<const Vec2> truth, int k);

struct MetricRecord
{
  std::string scenario_id;
  std::string agent_id;
  // Keyed by K; an entry exists only when the prediction had >= K modes.
  std::map<int, double> min_ade;
  std::map<int, double> min_fde;
};

MetricRecord evaluate_sample(
  const PredictionSet & prediction, std::span<const Vec2> truth, std::span<const int> ks);

struct RunTags
{
  std::string model;
  std::string train_set;
  std::string test_set;

  friend bool operator==(const RunTags &, const RunTags &) = default;
};

struct MetricValue
{
  std::string name;
  double value = 0.0;
};

struct DatasetMetrics
{
  std::size_t sample_count = 0;
  RunTags tags;
  // minADE_K then minFDE_K for each K, ascending K.
  std::vector<MetricValue> values;

  std::optional<double> find(std::string_view name) const;
};

/// Neumaier-compensated sum; reordering the input changes the result by far
/// less than 1e-9 for metric-scale values.
double compensated_sum(std::span<const double> values);

/// Arithmetic means over all records for every K in `ks`. Throws EMPTY_SET
/// for no records and VALIDATION_ERROR if a record lacks a requested K.
DatasetMetrics aggregate(std::span<const MetricRecord> records, const RunTags & tags, std::span<const int> ks);

struct DeltaRecord
{
  std::string metric;
  double id_value = 0.0;
  double ood_value = 0.0;
  double delta = 0.0;                 // ood - id, meters
  std::optional<double> relative_pct;  // 100 * delta / id; absent when id == 0
};

/// Per-metric OoD minus ID, in the ID metric order. Throws TAG_MISMATCH when
/// the model tags differ and VALIDATION_ERROR when a metric is missing from
/// the OoD side.
std::vector<DeltaRecord> delta_metrics(const DatasetMetrics & id, const DatasetMetrics & ood);

struct PercentageRow
{
  RunTags tags;
  std::vector<MetricValue> percent;  // 100 * value / reference value
};

/// Percentages against the first run tagged `reference_model`. Throws
/// MISSING_REFERENCE, or VALIDATION_ERROR for a non-positive reference value.
std::vector<PercentageRow> relative_to_reference(
  std::span<const DatasetMetrics> metrics, std::string_view reference_model);

// CSV exchange. Numbers are written in shortest round-trip form.

/// Columns: model,train_set,test_set,sample_count,metric,value
void write_metrics_csv(const DatasetMetrics & metrics, const std::filesystem::path & path);
DatasetMetrics read_metrics_csv(const std::filesystem::path & path);

/// Columns: scenario_id,agent_id,<metric names...>
void write_records_csv(
  std::span<const MetricRecord> records, std::span<const int> ks, const std::filesystem::path & path);

/// Columns: metric,id_value,ood_value,delta,relative_pct ("NA" when undefined)
std::string delta_csv(std::span<const DeltaRecord> deltas);

}  // namespace oodeval

#endif  // OODEVAL_METRICS_HPP_
