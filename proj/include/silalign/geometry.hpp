// Copyright 2026 The silalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>

namespace silalign {

// Image coordinates: x grows rightward (columns), y grows downward (rows),
// origin at the center of the top-left pixel.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Rotation angle in radians. Positive angles turn +x toward +y, which is
/// clockwise on screen under the y-down convention.
struct RotationAngle {
  double radians = 0.0;

  friend bool operator==(const RotationAngle&, const RotationAngle&) = default;
};

struct GeometryConfig {
  /// Guard added to the vertical spine extent before dividing.
  double epsilon = 1e-6;
};

/// 2x3 affine map [R | T]: p' = R p + T.
struct AffineMap {
  double r00 = 1.0, r01 = 0.0;
  double r10 = 0.0, r11 = 1.0;
  double tx = 0.0, ty = 0.0;

  static AffineMap identity() { return {}; }
  static AffineMap translation(double dx, double dy) { return {1.0, 0.0, 0.0, 1.0, dx, dy}; }
  /// Uniform scale by `s` keeping `center` fixed.
  static AffineMap scaling_about(Point2 center, double s) {
    return {s, 0.0, 0.0, s, (1.0 - s) * center.x, (1.0 - s) * center.y};
  }

  double determinant() const { return r00 * r11 - r01 * r10; }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// Spine tilt: atan((neck.x - hip.x) / (neck.y - hip.y + epsilon)).
/// Rotating about the neck by the result brings the hip directly below or
/// above the neck.
RotationAngle rotation_angle(Point2 neck, Point2 hip, const GeometryConfig& cfg = {});

/// Rotation by `theta` that keeps `center` fixed:
/// R = [[cos, -sin], [sin, cos]],
/// T = [(1 - cos) cx + sin cy, (1 - cos) cy - sin cx].
AffineMap rotation_about(Point2 center, RotationAngle theta);

Point2 apply(const AffineMap& map, Point2 p);

/// apply(compose(outer, inner), p) == apply(outer, apply(inner, p)).
AffineMap compose(const AffineMap& outer, const AffineMap& inner);

/// Throws Error(kSingularMap) when |det R| <= 1e-12.
AffineMap invert(const AffineMap& map);

inline constexpr double kSingularDeterminant = 1e-12;

double degrees_to_radians(double deg);
double radians_to_degrees(double rad);

}  // namespace silalign
