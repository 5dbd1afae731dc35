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

#include "oodeval/prediction.hpp"

#include <cmath>

#include <fmt/core.h>

#include "oodeval/error.hpp"

namespace oodeval
{

void validate_prediction_set(const PredictionSet & prediction, std::size_t horizon_steps)
{
  auto fail = [&](const std::string & what) {
    throw Error(
      ErrorCode::kValidationError,
      fmt::format("prediction for ({}, {}): {}", prediction.scenario_id, prediction.agent_id, what));
  };
  if (prediction.modes.empty()) {
    fail("no modes");
  }
  for (std::size_t m = 0; m < prediction.modes.size(); ++m) {
    if (prediction.modes[m].size() != horizon_steps) {
      fail(fmt::format("mode {} has {} points, expected {}", m, prediction.modes[m].size(), horizon_steps));
    }
    for (const Vec2 & p : prediction.modes[m]) {
      if (!is_finite(p)) {
        fail(fmt::format("mode {} has a non-finite point", m));
      }
    }
  }
  if (prediction.probabilities.empty()) {
    return;
  }
  if (prediction.probabilities.size() != prediction.modes.size()) {
    fail("probability count differs from mode count");
  }
  double total = 0.0;
  for (double p : prediction.probabilities) {
    if (!std::isfinite(p) || p < 0.0) {
      fail("probabilities must be finite and non-negative");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    fail(fmt::format("probabilities sum to {}, expected 1", total));
  }
}

}  // namespace oodeval
