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

#include "oodeval/predictors.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <fmt/core.h>

namespace oodeval
{
namespace
{

// Beyond this the fit is numerically meaningless at double precision.
constexpr double kMaxCondition = 1e12;

double horner(const std::vector<double> & coeffs, double tau)
{
  double value = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    value = value * tau + *it;
  }
  return value;
}

const Track & require_track(const HomogenizedSample & sample, std::string_view agent_id)
{
  const Track * track = sample.scenario.find_track(agent_id);
  if (track == nullptr) {
    throw Error(
      ErrorCode::kUnknownAgent,
      fmt::format("scenario '{}' has no agent '{}'", sample.scenario.scenario_id, agent_id));
  }
  return *track;
}

}  // namespace

Vec2 PolyCoeffs::evaluate(double step) const
{
  const double tau = normalized_time(step);
  return {horner(x_coeffs, tau), horner(y_coeffs, tau)};
}

PolyCoeffs fit_polynomial(std::span<const Vec2> history, int degree)
{
  if (degree < kMinPolyDegree || degree > kMaxPolyDegree) {
    throw Error(
      ErrorCode::kConfigError,
      fmt::format("polynomial degree {} outside [{}, {}]", degree, kMinPolyDegree, kMaxPolyDegree));
  }
  const auto n = static_cast<Eigen::Index>(history.size());
  const Eigen::Index terms = degree + 1;
  if (n < terms) {
    throw Error(
      ErrorCode::kFitError,
      fmt::format("degree {} needs at least {} samples, got {}", degree, terms, n));
  }

  PolyCoeffs fit;
  fit.degree = degree;
  fit.time_center = 0.5 * static_cast<double>(n - 1);
  fit.time_half_span = fit.time_center;

  Eigen::MatrixXd design(n, terms);
  Eigen::MatrixXd targets(n, 2);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double tau = fit.normalized_time(static_cast<double>(k));
    double power = 1.0;
    for (Eigen::Index j = 0; j < terms; ++j) {
      design(k, j) = power;
      power *= tau;
    }
    targets(k, 0) = history[static_cast<std::size_t>(k)].x;
    targets(k, 1) = history[static_cast<std::size_t>(k)].y;
  }

  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  const auto diagonal = qr.matrixQR().diagonal().cwiseAbs();
  const double largest = diagonal(0);
  const double smallest = diagonal(terms - 1);
  fit.condition_estimate = smallest > 0.0 ? largest / smallest : std::numeric_limits<double>::infinity();
  if (qr.rank() < terms || fit.condition_estimate > kMaxCondition) {
    throw Error(
      ErrorCode::kFitError,
      fmt::format(
        "rank-deficient fit (rank {} of {}, condition estimate {:.3e})", qr.rank(), terms,
        fit.condition_estimate));
  }

  const Eigen::MatrixXd solution = qr.solve(targets);
  fit.x_coeffs.assign(solution.col(0).data(), solution.col(0).data() + terms);
  fit.y_coeffs.assign(solution.col(1).data(), solution.col(1).data() + terms);

  const Eigen::MatrixXd residual = design * solution - targets;
  fit.max_residual = residual.rowwise().norm().maxCoeff();
  return fit;
}

PredictionSet predict_constant_velocity(const HomogenizedSample & sample, std::string_view agent_id)
{
  const Track & track = require_track(sample, agent_id);
  const AgentState & current = state_at(track, sample.current_step);
  if (!current.observed) {
    throw Error(
      ErrorCode::kNotObserved, fmt::format(
                                 "scenario '{}': agent '{}' unobserved at step {}",
                                 sample.scenario.scenario_id, agent_id, sample.current_step));
  }

  PredictionSet prediction;
  prediction.scenario_id = sample.scenario.scenario_id;
  prediction.agent_id = std::string(agent_id);
  Trajectory mode;
  mode.reserve(kFutureSteps);
  for (int ahead = 1; ahead <= kFutureSteps; ++ahead) {
    mode.push_back(current.position + (ahead * kStepSeconds) * current.velocity);
  }
  prediction.modes.push_back(std::move(mode));
  prediction.probabilities = {1.0};
  return prediction;
}

PolynomialPrediction predict_polynomial(
  const HomogenizedSample & sample, std::string_view agent_id, std::span<const int> degrees)
{
  if (degrees.empty()) {
    throw Error(ErrorCode::kConfigError, "at least one polynomial degree is required");
  }
  const Track & track = require_track(sample, agent_id);
  std::vector<Vec2> history;
  history.reserve(static_cast<std::size_t>(sample.current_step + 1));
  for (int step = 0; step <= sample.current_step; ++step) {
    const AgentState & s = state_at(track, step);
    if (!s.observed) {
      throw Error(
        ErrorCode::kNotObserved, fmt::format(
                                   "scenario '{}': agent '{}' unobserved at history step {}",
                                   sample.scenario.scenario_id, agent_id, step));
    }
    history.push_back(s.position);
  }

  PolynomialPrediction result;
  result.prediction.scenario_id = sample.scenario.scenario_id;
  result.prediction.agent_id = std::string(agent_id);
  for (int degree : degrees) {
    try {
      const PolyCoeffs fit = fit_polynomial(history, degree);
      Trajectory mode;
      mode.reserve(kFutureSteps);
      for (int ahead = 1; ahead <= kFutureSteps; ++ahead) {
        mode.push_back(fit.evaluate(static_cast<double>(sample.current_step + ahead)));
      }
      result.prediction.modes.push_back(std::move(mode));
    } catch (const Error & e) {
      if (e.code() != ErrorCode::kFitError) {
        throw;
      }
      result.failures.push_back({degree, e.what()});
    }
  }
  if (result.prediction.modes.empty()) {
    throw Error(
      ErrorCode::kPredictionError,
      fmt::format(
        "scenario '{}': every polynomial degree failed for agent '{}'", sample.scenario.scenario_id,
        agent_id));
  }
  const std::size_t k = result.prediction.modes.size();
  result.prediction.probabilities.assign(k, 1.0 / static_cast<double>(k));
  return result;
}

}  // namespace oodeval
