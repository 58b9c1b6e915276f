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

#include "silalign/skeleton.hpp"

#include "silalign/error.hpp"

namespace silalign {

namespace {

Point2 midpoint(Point2 a, Point2 b) { return {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5}; }

}  // namespace

SpineEndpoints spine_endpoints(const SkeletonFrame& frame, double min_conf) {
  const Keypoint& ls = frame[CocoJoint::kLeftShoulder];
  const Keypoint& rs = frame[CocoJoint::kRightShoulder];
  const Keypoint& lh = frame[CocoJoint::kLeftHip];
  const Keypoint& rh = frame[CocoJoint::kRightHip];

  SpineEndpoints out;
  out.neck = midpoint(ls.position, rs.position);
  out.hip = midpoint(lh.position, rh.position);
  const bool confident = ls.confidence >= min_conf && rs.confidence >= min_conf &&
                         lh.confidence >= min_conf && rh.confidence >= min_conf;
  out.valid = confident && is_finite(out.neck) && is_finite(out.hip) && !(out.neck == out.hip);
  return out;
}

std::optional<RotationAngle> frame_spine_angle(const SkeletonFrame& frame, const GeometryConfig& cfg,
                                               double min_conf) {
  const SpineEndpoints spine = spine_endpoints(frame, min_conf);
  if (!spine.valid) return std::nullopt;
  return rotation_angle(spine.neck, spine.hip, cfg);
}

SkeletonFrame transform_skeleton(const SkeletonFrame& frame, const AffineMap& map) {
  if (!(std::abs(map.determinant()) > kSingularDeterminant)) {
    throw Error(ErrorCode::kSingularMap, "cannot transform skeleton");
  }
  SkeletonFrame out = frame;
  for (Keypoint& kp : out.joints) kp.position = apply(map, kp.position);
  return out;
}

}  // namespace silalign
