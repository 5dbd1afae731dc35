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

#ifndef OODEVAL_PREDICTORS_HPP_
#define OODEVAL_PREDICTORS_HPP_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodeval/homogenize.hpp"
#include "oodeval/prediction.hpp"

namespace oodeval
{

inline constexpr int kMinPolyDegree = 1;
inline constexpr int kMaxPolyDegree = 7;

/// Per-axis polynomial in normalized time tau = (step - time_center) /
/// time_half_span, where `step` counts from the first fitted sample. The
/// fitted samples span tau in [-1, 1].
struct PolyCoeffs
{
  int degree = 0;
  std::vector<double> x_coeffs;  // ascending powers of tau, degree + 1 entries
  std::vector<double> y_coeffs;
  double time_center = 0.0;
  double time_half_span = 1.0;
  double condition_estimate = 1.0;  // |R_00| / |R_nn| of the pivoted QR
  double max_residual = 0.0;        // meters, over the fitted samples

  double normalized_time(double step) const { return (step - time_center) / time_half_span; }
  Vec2 evaluate(double step) const;
};

/// Least-squares fit of `history` (one sample per step) per axis. Solved by
/// column-pivoted Householder QR on the normalized-time Vandermonde matrix.
/// Throws CONFIG_ERROR for degree outside [1, 7] and FIT_ERROR (with the
/// condition estimate) when there are too few samples or the system is
/// rank deficient.
PolyCoeffs fit_polynomial(std::span<const Vec2> history, int degree);

/// Single mode: position(current) + (step - current) * 0.1 s * v(current).
PredictionSet predict_constant_velocity(const HomogenizedSample & sample, std::string_view agent_id);

struct DegreeFailure
{
  int degree = 0;
  std::string message;
};

struct PolynomialPrediction
{
  PredictionSet prediction;  // one mode per successful degree, uniform probabilities
  std::vector<DegreeFailure> failures;
};

/// Fits the 50-step history once per degree and extrapolates over the 41
/// future steps. Throws PREDICTION_ERROR if every degree fails.
PolynomialPrediction predict_polynomial(
  const HomogenizedSample & sample, std::string_view agent_id, std::span<const int> degrees);

}  // namespace oodeval

#endif  // OODEVAL_PREDICTORS_HPP_
