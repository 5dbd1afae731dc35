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

// Prediction-task complexity: how far an agent's ground-truth displacement
// over the horizon departs from constant-velocity travel, expressed in the
// agent frame at the start time, plus 2D density estimates of that quantity.

#ifndef OODEVAL_COMPLEXITY_HPP_
#define OODEVAL_COMPLEXITY_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oodeval/scenario.hpp"

namespace oodeval
{

inline constexpr double kDefaultHorizonSeconds = 4.1;
inline constexpr double kDefaultMinSpeed = 0.1;  // m/s
inline constexpr int kDefaultGridResolution = 200;

/// Step index whose state is "the state at t seconds": a history of t
/// seconds holds round(10 t) samples, the last being current. 1.1 s -> 10,
/// 5.0 s -> 49.
int step_for_start_time(double t_start);
/// Number of steps covered by `horizon` seconds (4.1 s -> 41).
int steps_for_horizon(double horizon);

/// Displacement over the horizon, rotated into the start heading frame and
/// divided by the constant-velocity travel distance |v_start| * horizon.
/// [1, 0] is exact constant-velocity motion.
struct ComplexityVector
{
  double d_lon = 0.0;
  double d_lat = 0.0;
  double t_start = 0.0;
  double speed_at_start = 0.0;
};

/// std::nullopt when |v_start| < min_speed. Throws OUT_OF_RANGE when the
/// window leaves the recording and NOT_OBSERVED when either end state is
/// unobserved.
std::optional<ComplexityVector> complexity_vector(
  const Track & track, double t_start, double horizon = kDefaultHorizonSeconds,
  double min_speed = kDefaultMinSpeed);

struct ComplexityEntry
{
  std::string scenario_id;
  std::string agent_id;
  ComplexityVector d;
};

struct ComplexityExclusion
{
  std::string scenario_id;
  std::string reason;
};

struct ComplexityDistribution
{
  std::vector<ComplexityEntry> samples;
  std::size_t excluded_low_speed = 0;
  std::vector<ComplexityExclusion> excluded_other;
  double t_start = 0.0;
  double horizon = kDefaultHorizonSeconds;

  std::size_t evaluated() const { return samples.size() + excluded_low_speed + excluded_other.size(); }
};

/// complexity_vector of every scenario's focal agent, in input order.
ComplexityDistribution complexity_distribution(
  std::span<const Scenario> scenarios, double t_start, double horizon = kDefaultHorizonSeconds,
  double min_speed = kDefaultMinSpeed);

struct SampleMoments
{
  Vec2 mean{};
  double var_lon = 0.0;  // unbiased
  double var_lat = 0.0;
  double cov = 0.0;

  double trace() const { return var_lon + var_lat; }
};

SampleMoments sample_moments(std::span<const ComplexityEntry> samples);

/// Densities at cell centers of a regular grid; row-major, y outer.
struct DensityGrid
{
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;
  int nx = 0;
  int ny = 0;
  double bandwidth_x = 0.0;
  double bandwidth_y = 0.0;
  // Raw kernel mass that fell on the grid before renormalization.
  double captured_mass = 0.0;
  std::vector<double> density;

  double cell_width() const { return (x_max - x_min) / nx; }
  double cell_height() const { return (y_max - y_min) / ny; }
  double cell_area() const { return cell_width() * cell_height(); }
  double at(int ix, int iy) const { return density[static_cast<std::size_t>(iy) * nx + ix]; }
  Vec2 cell_center(int ix, int iy) const;
  /// Cell containing p, if inside the grid.
  std::optional<std::pair<int, int>> cell_of(Vec2 p) const;
  double total_mass() const;
};

/// Gaussian product-kernel KDE with Scott's bandwidth h_j = sigma_j n^(-1/6)
/// on a resolution x resolution grid spanning the data range plus a 5%
/// margin per side; renormalized to unit mass on the grid. Throws
/// DEGENERATE_DATA for fewer than two points or zero spread on an axis.
DensityGrid kde_2d(std::span<const Vec2> points, int grid_resolution = kDefaultGridResolution);

/// Highest-density-region thresholds: for each mass m, the largest c such
/// that cells with density >= c hold mass >= m. `masses` must be strictly
/// increasing in (0, 1).
std::vector<double> hdr_levels(const DensityGrid & grid, std::span<const double> masses);

/// Fraction of `points` whose grid cell has density >= threshold.
double enclosed_fraction(const DensityGrid & grid, double threshold, std::span<const Vec2> points);

}  // namespace oodeval

#endif  // OODEVAL_COMPLEXITY_HPP_
