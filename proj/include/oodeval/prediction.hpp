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

#ifndef OODEVAL_PREDICTION_HPP_
#define OODEVAL_PREDICTION_HPP_

#include <string>
#include <vector>

#include "oodeval/geometry.hpp"

namespace oodeval
{

using Trajectory = std::vector<Vec2>;

/// K candidate futures for one agent, aligned to the 41 future steps.
struct PredictionSet
{
  std::string scenario_id;
  std::string agent_id;
  std::vector<Trajectory> modes;
  // Empty when the producer emitted no probabilities.
  std::vector<double> probabilities;

  std::size_t mode_count() const { return modes.size(); }

  friend bool operator==(const PredictionSet &, const PredictionSet &) = default;
};

/// Throws VALIDATION_ERROR unless K >= 1, every mode has `horizon_steps`
/// finite points, and probabilities (if any) are K non-negative weights
/// summing to 1 within 1e-6.
void validate_prediction_set(const PredictionSet & prediction, std::size_t horizon_steps);

}  // namespace oodeval

#endif  // OODEVAL_PREDICTION_HPP_
