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

#ifndef OODEVAL_GEOMETRY_HPP_
#define OODEVAL_GEOMETRY_HPP_

#include <cmath>
#include <numbers>

namespace oodeval
{

/// Planar point or vector in a global Cartesian frame, meters (or m/s).
struct Vec2
{
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2 &, const Vec2 &) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
inline Vec2 operator/(Vec2 v, double s) { return {v.x / s, v.y / s}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double squared_norm(Vec2 v) { return v.x * v.x + v.y * v.y; }
inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline bool is_finite(Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); }

/// Unit vector along `heading` (radians, CCW from +x).
inline Vec2 unit_from_heading(double heading) { return {std::cos(heading), std::sin(heading)}; }

/// Maps any finite angle to (-pi, pi].
inline double wrap_angle(double angle)
{
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) {
    wrapped += 2.0 * std::numbers::pi;
  }
  return wrapped;
}

/// Proper rigid motion: rotate by `angle` about the origin, then translate.
struct RigidTransform2
{
  double angle = 0.0;
  Vec2 translation{};

  Vec2 rotate(Vec2 v) const
  {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
  }
  Vec2 apply(Vec2 p) const { return rotate(p) + translation; }
  double apply_heading(double heading) const { return wrap_angle(heading + angle); }
};

}  // namespace oodeval

#endif  // OODEVAL_GEOMETRY_HPP_
