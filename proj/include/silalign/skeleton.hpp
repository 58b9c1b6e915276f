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

#include <array>
#include <cstddef>
#include <optional>

#include "silalign/geometry.hpp"

namespace silalign {

// COCO-17 keypoint layout.
enum class CocoJoint : std::size_t {
  kNose = 0,
  kLeftEye = 1,
  kRightEye = 2,
  kLeftEar = 3,
  kRightEar = 4,
  kLeftShoulder = 5,
  kRightShoulder = 6,
  kLeftElbow = 7,
  kRightElbow = 8,
  kLeftWrist = 9,
  kRightWrist = 10,
  kLeftHip = 11,
  kRightHip = 12,
  kLeftKnee = 13,
  kRightKnee = 14,
  kLeftAnkle = 15,
  kRightAnkle = 16,
};

inline constexpr std::size_t kCocoJointCount = 17;
inline constexpr const char* kCocoSchemaName = "coco17";
inline constexpr double kDefaultMinConfidence = 0.3;

struct Keypoint {
  Point2 position;
  double confidence = 0.0;

  friend bool operator==(const Keypoint&, const Keypoint&) = default;
};

struct SkeletonFrame {
  std::array<Keypoint, kCocoJointCount> joints{};
  int frame_index = 0;

  const Keypoint& operator[](CocoJoint j) const { return joints[static_cast<std::size_t>(j)]; }
  Keypoint& operator[](CocoJoint j) { return joints[static_cast<std::size_t>(j)]; }

  friend bool operator==(const SkeletonFrame&, const SkeletonFrame&) = default;
};

/// Neck = shoulder midpoint, hip = hip midpoint. `valid` is false when any of
/// the four joints is under the confidence threshold or the two midpoints
/// coincide.
struct SpineEndpoints {
  Point2 neck;
  Point2 hip;
  bool valid = false;
};

SpineEndpoints spine_endpoints(const SkeletonFrame& frame, double min_conf = kDefaultMinConfidence);

/// Spine rotation angle for one frame; nullopt marks a degenerate frame.
std::optional<RotationAngle> frame_spine_angle(const SkeletonFrame& frame, const GeometryConfig& cfg,
                                               double min_conf = kDefaultMinConfidence);

/// Maps every joint position through `map`. Confidences and frame_index are
/// untouched. Throws Error(kSingularMap) for non-invertible maps.
SkeletonFrame transform_skeleton(const SkeletonFrame& frame, const AffineMap& map);

}  // namespace silalign
