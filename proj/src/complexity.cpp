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

#include "oodeval/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <fmt/core.h>

namespace oodeval
{

int step_for_start_time(double t_start)
{
  return static_cast<int>(std::lround(t_start / kStepSeconds)) - 1;
}

int steps_for_horizon(double horizon) { return static_cast<int>(std::lround(horizon / kStepSeconds)); }

std::optional<ComplexityVector> complexity_vector(
  const Track & track, double t_start, double horizon, double min_speed)
{
  if (!(horizon > 0.0)) {
    throw Error(ErrorCode::kConfigError, "horizon must be positive");
  }
  const int start = step_for_start_time(t_start);
  const int end = start + steps_for_horizon(horizon);
  const int last = static_cast<int>(track.states.size()) - 1;
  if (start < 0 || end > last) {
    throw Error(
      ErrorCode::kOutOfRange, fmt::format(
                                "agent '{}': window [{}, {}] outside recorded steps [0, {}]",
                                track.agent_id, start, end, last));
  }
  const AgentState & s0 = track.states[static_cast<std::size_t>(start)];
  const AgentState & s1 = track.states[static_cast<std::size_t>(end)];
  if (!s0.observed || !s1.observed) {
    throw Error(
      ErrorCode::kNotObserved,
      fmt::format("agent '{}' unobserved at step {} or {}", track.agent_id, start, end));
  }

  const double speed = norm(s0.velocity);
  if (speed < min_speed) {
    return std::nullopt;
  }
  const Vec2 displacement = s1.position - s0.position;
  const Vec2 longitudinal = unit_from_heading(s0.heading);
  const Vec2 lateral{-longitudinal.y, longitudinal.x};
  const double cv_distance = speed * horizon;

  ComplexityVector d;
  d.d_lon = dot(displacement, longitudinal) / cv_distance;
  d.d_lat = dot(displacement, lateral) / cv_distance;
  d.t_start = t_start;
  d.speed_at_start = speed;
  return d;
}

ComplexityDistribution complexity_distribution(
  std::span<const Scenario> scenarios, double t_start, double horizon, double min_speed)
{
  ComplexityDistribution out;
  out.t_start = t_start;
  out.horizon = horizon;
  for (const Scenario & scenario : scenarios) {
    if (!scenario.focal_agent_id) {
      out.excluded_other.push_back({scenario.scenario_id, "no focal agent designated"});
      continue;
    }
    const Track * focal = scenario.find_track(*scenario.focal_agent_id);
    if (focal == nullptr) {
      out.excluded_other.push_back({scenario.scenario_id, "focal agent track missing"});
      continue;
    }
    try {
      const std::optional<ComplexityVector> d = complexity_vector(*focal, t_start, horizon, min_speed);
      if (!d) {
        ++out.excluded_low_speed;
        continue;
      }
      out.samples.push_back({scenario.scenario_id, focal->agent_id, *d});
    } catch (const Error & e) {
      if (e.code() != ErrorCode::kOutOfRange && e.code() != ErrorCode::kNotObserved) {
        throw;
      }
      out.excluded_other.push_back({scenario.scenario_id, e.what()});
    }
  }
  return out;
}

SampleMoments sample_moments(std::span<const ComplexityEntry> samples)
{
  SampleMoments m;
  if (samples.empty()) {
    return m;
  }
  const double n = static_cast<double>(samples.size());
  for (const auto & s : samples) {
    m.mean.x += s.d.d_lon / n;
    m.mean.y += s.d.d_lat / n;
  }
  if (samples.size() < 2) {
    return m;
  }
  for (const auto & s : samples) {
    const double a = s.d.d_lon - m.mean.x;
    const double b = s.d.d_lat - m.mean.y;
    m.var_lon += a * a;
    m.var_lat += b * b;
    m.cov += a * b;
  }
  m.var_lon /= n - 1.0;
  m.var_lat /= n - 1.0;
  m.cov /= n - 1.0;
  return m;
}

Vec2 DensityGrid::cell_center(int ix, int iy) const
{
  return {x_min + (ix + 0.5) * cell_width(), y_min + (iy + 0.5) * cell_height()};
}

std::optional<std::pair<int, int>> DensityGrid::cell_of(Vec2 p) const
{
  if (p.x < x_min || p.x > x_max || p.y < y_min || p.y > y_max) {
    return std::nullopt;
  }
  const int ix = std::min(nx - 1, static_cast<int>((p.x - x_min) / cell_width()));
  const int iy = std::min(ny - 1, static_cast<int>((p.y - y_min) / cell_height()));
  return std::make_pair(ix, iy);
}

double DensityGrid::total_mass() const
{
  double sum = 0.0;
  for (double v : density) {
    sum += v;
  }
  return sum * cell_area();
}

namespace
{

double sample_std(std::span<const Vec2> points, double Vec2::*axis)
{
  const double n = static_cast<double>(points.size());
  double mean = 0.0;
  for (const Vec2 & p : points) {
    mean += p.*axis;
  }
  mean /= n;
  double ss = 0.0;
  for (const Vec2 & p : points) {
    const double d = p.*axis - mean;
    ss += d * d;
  }
  return std::sqrt(ss / (n - 1.0));
}

}  // namespace

DensityGrid kde_2d(std::span<const Vec2> points, int grid_resolution)
{
  if (grid_resolution < 2) {
    throw Error(ErrorCode::kConfigError, "grid resolution must be >= 2");
  }
  if (points.size() < 2) {
    throw Error(ErrorCode::kDegenerateData, fmt::format("KDE needs >= 2 points, got {}", points.size()));
  }
  const double sx = sample_std(points, &Vec2::x);
  const double sy = sample_std(points, &Vec2::y);
  // Spread at round-off level (e.g. a noiseless constant-velocity corpus)
  // counts as none.
  double scale_x = 1.0, scale_y = 1.0;
  for (const Vec2 & p : points) {
    scale_x = std::max(scale_x, std::abs(p.x));
    scale_y = std::max(scale_y, std::abs(p.y));
  }
  if (!(sx > 1e-9 * scale_x) || !(sy > 1e-9 * scale_y)) {
    throw Error(ErrorCode::kDegenerateData, "KDE input has zero spread on at least one axis");
  }

  const double n = static_cast<double>(points.size());
  DensityGrid grid;
  grid.nx = grid_resolution;
  grid.ny = grid_resolution;
  grid.bandwidth_x = sx * std::pow(n, -1.0 / 6.0);
  grid.bandwidth_y = sy * std::pow(n, -1.0 / 6.0);
  auto [min_x, max_x] = std::minmax_element(
    points.begin(), points.end(), [](Vec2 a, Vec2 b) { return a.x < b.x; });
  auto [min_y, max_y] = std::minmax_element(
    points.begin(), points.end(), [](Vec2 a, Vec2 b) { return a.y < b.y; });
  const double margin_x = 0.05 * (max_x->x - min_x->x);
  const double margin_y = 0.05 * (max_y->y - min_y->y);
  grid.x_min = min_x->x - margin_x;
  grid.x_max = max_x->x + margin_x;
  grid.y_min = min_y->y - margin_y;
  grid.y_max = max_y->y + margin_y;

  // density(ix, iy) = 1/n sum_p Kx(ix, p) Ky(iy, p): a product of two
  // kernel matrices, accumulated over blocks of points to bound memory.
  const double norm_x = 1.0 / (grid.bandwidth_x * std::sqrt(2.0 * std::numbers::pi));
  const double norm_y = 1.0 / (grid.bandwidth_y * std::sqrt(2.0 * std::numbers::pi));
  Eigen::MatrixXd accum = Eigen::MatrixXd::Zero(grid.ny, grid.nx);
  constexpr std::size_t kBlock = 2048;
  for (std::size_t begin = 0; begin < points.size(); begin += kBlock) {
    const std::size_t count = std::min(kBlock, points.size() - begin);
    Eigen::MatrixXd kx(static_cast<Eigen::Index>(count), grid.nx);
    Eigen::MatrixXd ky(grid.ny, static_cast<Eigen::Index>(count));
    for (std::size_t j = 0; j < count; ++j) {
      const Vec2 p = points[begin + j];
      const auto col = static_cast<Eigen::Index>(j);
      for (int ix = 0; ix < grid.nx; ++ix) {
        const double u = (grid.cell_center(ix, 0).x - p.x) / grid.bandwidth_x;
        kx(col, ix) = norm_x * std::exp(-0.5 * u * u);
      }
      for (int iy = 0; iy < grid.ny; ++iy) {
        const double u = (grid.cell_center(0, iy).y - p.y) / grid.bandwidth_y;
        ky(iy, col) = norm_y * std::exp(-0.5 * u * u);
      }
    }
    accum.noalias() += ky * kx;
  }
  accum /= n;

  grid.density.resize(static_cast<std::size_t>(grid.nx) * grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      grid.density[static_cast<std::size_t>(iy) * grid.nx + ix] = accum(iy, ix);
    }
  }
  grid.captured_mass = grid.total_mass();
  if (!(grid.captured_mass > 0.0)) {
    throw Error(ErrorCode::kDegenerateData, "KDE placed no mass on the grid");
  }
  for (double & v : grid.density) {
    v /= grid.captured_mass;
  }
  return grid;
}

std::vector<double> hdr_levels(const DensityGrid & grid, std::span<const double> masses)
{
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] > 0.0 && masses[i] < 1.0) || (i > 0 && !(masses[i] > masses[i - 1]))) {
      throw Error(ErrorCode::kConfigError, "HDR masses must be strictly increasing within (0, 1)");
    }
  }
  std::vector<double> sorted = grid.density;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double area = grid.cell_area();

  std::vector<double> levels;
  levels.reserve(masses.size());
  double cumulative = 0.0;
  std::size_t index = 0;
  for (double m : masses) {
    while (index < sorted.size() && cumulative < m) {
      cumulative += sorted[index] * area;
      ++index;
    }
    // Rounding can leave the running total a hair below m near 1: fall back
    // to the smallest positive density.
    std::size_t pick = index == 0 ? 0 : index - 1;
    while (pick > 0 && !(sorted[pick] > 0.0)) {
      --pick;
    }
    levels.push_back(sorted[pick]);
  }
  return levels;
}

double enclosed_fraction(const DensityGrid & grid, double threshold, std::span<const Vec2> points)
{
  if (points.empty()) {
    return 0.0;
  }
  std::size_t inside = 0;
  for (const Vec2 & p : points) {
    const auto cell = grid.cell_of(p);
    if (cell && grid.at(cell->first, cell->second) >= threshold) {
      ++inside;
    }
  }
  return static_cast<double>(inside) / static_cast<double>(points.size());
}

}  // namespace oodeval
