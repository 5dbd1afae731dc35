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

#ifndef OODEVAL_REPORT_HPP_
#define OODEVAL_REPORT_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "oodeval/metrics.hpp"

namespace oodeval
{

/// Evaluated runs, unique by (model, train_set, test_set).
class RunRegistry
{
public:
  explicit RunRegistry(std::string reference_model = {}) : reference_model_(std::move(reference_model)) {}

  /// Throws DUPLICATE_RUN.
  void add(DatasetMetrics run);

  const std::vector<DatasetMetrics> & runs() const { return runs_; }
  const std::string & reference_model() const { return reference_model_; }

private:
  std::vector<DatasetMetrics> runs_;
  std::string reference_model_;
};

/// Loads every *.csv metrics file in `dir`, in file-name order.
RunRegistry load_registry(const std::filesystem::path & dir, std::string reference_model = {});

struct Rendered
{
  std::string text;
  std::string csv;
};

/// Round-half-even to `decimals` places; -0.000 prints as 0.000.
std::string format_fixed(double value, int decimals);

/// One block per (train_set, test_set) group: absolute values to three
/// decimals and percentages of the reference model to one decimal, the
/// reference row first. CSV columns:
/// train_set,test_set,model,metric,value,relative_pct.
/// Throws MISSING_REFERENCE naming a group without the reference model.
Rendered render_table(const RunRegistry & registry);

/// Figure-style delta summary per model and metric. Runs are matched by
/// (model, train_set). CSV columns: model,metric,id_value,delta,relative_pct.
/// Throws TAG_MISMATCH naming any model present on only one side.
Rendered render_delta_summary(const RunRegistry & id_registry, const RunRegistry & ood_registry);

}  // namespace oodeval

#endif  // OODEVAL_REPORT_HPP_
