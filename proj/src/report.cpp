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

#include "oodeval/report.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

#include <fmt/core.h>

#include "oodeval/error.hpp"

namespace oodeval
{

void RunRegistry::add(DatasetMetrics run)
{
  for (const DatasetMetrics & existing : runs_) {
    if (existing.tags == run.tags) {
      throw Error(
        ErrorCode::kDuplicateRun, fmt::format(
                                    "run (model={}, train={}, test={}) registered twice", run.tags.model,
                                    run.tags.train_set, run.tags.test_set));
    }
  }
  runs_.push_back(std::move(run));
}

RunRegistry load_registry(const std::filesystem::path & dir, std::string reference_model)
{
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw Error(ErrorCode::kIoError, fmt::format("'{}' is not a readable directory", dir.string()));
  }
  std::vector<std::filesystem::path> files;
  for (const auto & entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  RunRegistry registry(std::move(reference_model));
  for (const auto & file : files) {
    registry.add(read_metrics_csv(file));
  }
  return registry;
}

std::string format_fixed(double value, int decimals)
{
  // printf rounds the exact binary value; exact ties go to even under the
  // default rounding mode.
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  std::string text(buffer);
  if (text.front() == '-' && text.find_first_not_of("-0.") == std::string::npos) {
    text.erase(0, 1);
  }
  return text;
}

namespace
{

std::string format_signed(double value, int decimals)
{
  std::string text = format_fixed(value, decimals);
  return text.front() == '-' ? text : "+" + text;
}

std::string pad(const std::string & text, std::size_t width)
{
  return text.size() >= width ? text + " " : text + std::string(width - text.size(), ' ');
}

struct Group
{
  std::string train_set;
  std::string test_set;
  std::vector<const DatasetMetrics *> runs;
};

}  // namespace

Rendered render_table(const RunRegistry & registry)
{
  std::vector<Group> groups;
  for (const DatasetMetrics & run : registry.runs()) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group & g) {
      return g.train_set == run.tags.train_set && g.test_set == run.tags.test_set;
    });
    if (it == groups.end()) {
      groups.push_back({run.tags.train_set, run.tags.test_set, {}});
      it = std::prev(groups.end());
    }
    it->runs.push_back(&run);
  }

  Rendered out;
  out.csv = "train_set,test_set,model,metric,value,relative_pct\n";
  for (const Group & group : groups) {
    auto reference = std::find_if(group.runs.begin(), group.runs.end(), [&](const DatasetMetrics * r) {
      return r->tags.model == registry.reference_model();
    });
    if (reference == group.runs.end()) {
      throw Error(
        ErrorCode::kMissingReference, fmt::format(
                                        "reference model '{}' missing for train={} test={}",
                                        registry.reference_model(), group.train_set, group.test_set));
    }
    std::vector<DatasetMetrics> ordered{**reference};
    for (const DatasetMetrics * run : group.runs) {
      if (run != *reference) {
        ordered.push_back(*run);
      }
    }
    const std::vector<PercentageRow> rows = relative_to_reference(ordered, registry.reference_model());

    std::size_t model_width = 7;
    for (const auto & run : ordered) {
      model_width = std::max(model_width, run.tags.model.size() + 2);
    }
    constexpr std::size_t kCellWidth = 18;
    out.text += fmt::format(
      "train={} test={} reference={}\n", group.train_set, group.test_set, registry.reference_model());
    out.text += pad("model", model_width);
    for (const MetricValue & v : ordered.front().values) {
      out.text += pad(v.name + " [m]", kCellWidth);
    }
    out.text += '\n';
    for (std::size_t r = 0; r < ordered.size(); ++r) {
      out.text += pad(ordered[r].tags.model, model_width);
      for (std::size_t c = 0; c < ordered[r].values.size(); ++c) {
        const std::string value = format_fixed(ordered[r].values[c].value, 3);
        const std::string pct = format_fixed(rows[r].percent[c].value, 1);
        out.text += pad(fmt::format("{} ({}%)", value, pct), kCellWidth);
        out.csv += fmt::format(
          "{},{},{},{},{},{}\n", group.train_set, group.test_set, ordered[r].tags.model,
          ordered[r].values[c].name, value, pct);
      }
      out.text += '\n';
    }
    out.text += '\n';
  }
  return out;
}

Rendered render_delta_summary(const RunRegistry & id_registry, const RunRegistry & ood_registry)
{
  auto find_match = [](const RunRegistry & registry, const DatasetMetrics & run) -> const DatasetMetrics * {
    for (const DatasetMetrics & other : registry.runs()) {
      if (other.tags.model == run.tags.model && other.tags.train_set == run.tags.train_set) {
        return &other;
      }
    }
    return nullptr;
  };
  for (const DatasetMetrics & ood : ood_registry.runs()) {
    if (find_match(id_registry, ood) == nullptr) {
      throw Error(
        ErrorCode::kTagMismatch,
        fmt::format("model '{}' (train={}) has no ID run", ood.tags.model, ood.tags.train_set));
    }
  }

  Rendered out;
  out.csv = "model,metric,id_value,delta,relative_pct\n";
  out.text = fmt::format("{}{}{}{}{}\n", pad("model", 12), pad("metric", 11), pad("ID [m]", 9),
                         pad("OoD [m]", 9), "delta [m] (relative)");
  for (const DatasetMetrics & id : id_registry.runs()) {
    const DatasetMetrics * ood = find_match(ood_registry, id);
    if (ood == nullptr) {
      throw Error(
        ErrorCode::kTagMismatch,
        fmt::format("model '{}' (train={}) has no OoD run", id.tags.model, id.tags.train_set));
    }
    for (const DeltaRecord & d : delta_metrics(id, *ood)) {
      const std::string id_value = format_fixed(d.id_value, 3);
      const std::string delta = format_signed(d.delta, 3);
      const std::string pct = d.relative_pct ? format_fixed(*d.relative_pct, 1) : std::string("NA");
      out.csv += fmt::format("{},{},{},{},{}\n", id.tags.model, d.metric, id_value, delta, pct);
      out.text += fmt::format(
        "{}{}{}{}{} ({}%)\n", pad(id.tags.model, 12), pad(d.metric, 11), pad(id_value, 9),
        pad(format_fixed(d.ood_value, 3), 9), delta, pct);
    }
  }
  return out;
}

}  // namespace oodeval
