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

#include "silalign/geometry.hpp"

#include <numbers>

#include "silalign/error.hpp"

namespace silalign {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSingularMap: return "SingularMap";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kEmptyMask: return "EmptyMask";
    case ErrorCode::kAllFramesEmpty: return "AllFramesEmpty";
    case ErrorCode::kMissingSkeletons: return "MissingSkeletons";
    case ErrorCode::kEmptyList: return "EmptyList";
    case ErrorCode::kMixedDims: return "MixedDims";
    case ErrorCode::kSpecOutOfBounds: return "SpecOutOfBounds";
    case ErrorCode::kResultOutOfBounds: return "ResultOutOfBounds";
    case ErrorCode::kMalformedTree: return "MalformedTree";
    case ErrorCode::kDuplicateSequence: return "DuplicateSequence";
    case ErrorCode::kUnsupportedSchema: return "UnsupportedSchema";
    case ErrorCode::kMalformedFrame: return "MalformedFrame";
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kEmptyDataset: return "EmptyDataset";
    case ErrorCode::kConfig: return "Config";
  }
  return "Unknown";
}

RotationAngle rotation_angle(Point2 neck, Point2 hip, const GeometryConfig& cfg) {
  return {std::atan((neck.x - hip.x) / (neck.y - hip.y + cfg.epsilon))};
}

AffineMap rotation_about(Point2 center, RotationAngle theta) {
  const double c = std::cos(theta.radians);
  const double s = std::sin(theta.radians);
  AffineMap m;
  m.r00 = c;
  m.r01 = -s;
  m.r10 = s;
  m.r11 = c;
  m.tx = (1.0 - c) * center.x + s * center.y;
  m.ty = (1.0 - c) * center.y - s * center.x;
  return m;
}

Point2 apply(const AffineMap& m, Point2 p) {
  return {m.r00 * p.x + m.r01 * p.y + m.tx, m.r10 * p.x + m.r11 * p.y + m.ty};
}

AffineMap compose(const AffineMap& a, const AffineMap& b) {
  AffineMap m;
  m.r00 = a.r00 * b.r00 + a.r01 * b.r10;
  m.r01 = a.r00 * b.r01 + a.r01 * b.r11;
  m.r10 = a.r10 * b.r00 + a.r11 * b.r10;
  m.r11 = a.r10 * b.r01 + a.r11 * b.r11;
  m.tx = a.r00 * b.tx + a.r01 * b.ty + a.tx;
  m.ty = a.r10 * b.tx + a.r11 * b.ty + a.ty;
  return m;
}

AffineMap invert(const AffineMap& m) {
  const double det = m.determinant();
  if (!(std::abs(det) > kSingularDeterminant)) {
    throw Error(ErrorCode::kSingularMap, "determinant " + std::to_string(det));
  }
  AffineMap inv;
  inv.r00 = m.r11 / det;
  inv.r01 = -m.r01 / det;
  inv.r10 = -m.r10 / det;
  inv.r11 = m.r00 / det;
  inv.tx = -(inv.r00 * m.tx + inv.r01 * m.ty);
  inv.ty = -(inv.r10 * m.tx + inv.r11 * m.ty);
  return inv;
}

double degrees_to_radians(double deg) { return deg * std::numbers::pi / 180.0; }
double radians_to_degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

}  // namespace silalign
