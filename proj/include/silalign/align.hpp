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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "silalign/geometry.hpp"
#include "silalign/raster.hpp"
#include "silalign/rng.hpp"
#include "silalign/skeleton.hpp"

namespace silalign {

enum class Strategy {
  kNone,
  kSkeletonGuided,
  kMinBBox,
  kRestrictedRandom,
};

inline constexpr Strategy kAllStrategies[] = {Strategy::kNone, Strategy::kSkeletonGuided, Strategy::kMinBBox,
                                              Strategy::kRestrictedRandom};

/// Short config name: "none", "skeleton", "minbbox", "random".
const char* config_name(Strategy s);
/// Display name: "None", "SkeletonGuided", "MinBBox", "RestrictedRandom".
const char* display_name(Strategy s);
/// Accepts either spelling, case-insensitive.
std::optional<Strategy> parse_strategy(const std::string& text);

struct AlignmentConfig {
  Strategy strategy = Strategy::kSkeletonGuided;
  int target_h = 64;
  int target_w = 44;
  /// Foreground bbox height after scaling, as a fraction of target_h.
  double body_height_ratio = 0.9;
  /// Neck destination as fractions of (target_w, target_h).
  Point2 neck_anchor{0.5, 0.18};
  double rand_max_deg = 10.0;
  std::uint64_t seed = 0;
  double min_conf = kDefaultMinConfidence;
  double epsilon = 1e-6;
  Interpolation interpolation = Interpolation::kNearest;

  void validate() const;
  Point2 anchor_pixel() const { return {neck_anchor.x * target_w, neck_anchor.y * target_h}; }
  GeometryConfig geometry() const { return {epsilon}; }
};

struct AlignedFrame {
  SilhouetteMask mask;
  std::optional<SkeletonFrame> skeleton;
  /// Input pixel coordinates -> output pixel coordinates.
  AffineMap applied_map;
  double theta = 0.0;
  bool degenerate = false;
};

struct AlignmentReportRow {
  int frame_index = 0;
  double theta_applied = 0.0;
  /// Image of the skeleton neck when the frame has a valid spine, otherwise
  /// of the surrogate anchor.
  Point2 neck_out;
  int fg_height_out = 0;
  bool degenerate = false;
  /// Frame had an empty mask and produced no output.
  bool dropped = false;
  /// Spine angle of the transformed skeleton, when one is available.
  std::optional<double> spine_angle_out;
};

struct FrameInput {
  int frame_index = 0;
  SilhouetteMask mask;
  std::optional<SkeletonFrame> skeleton;
};

struct SequenceAlignment {
  std::vector<AlignedFrame> frames;
  std::vector<AlignmentReportRow> rows;
};

/// Rotates about the neck so the spine is vertical, scales the foreground to
/// body_height_ratio * target_h and moves the neck to the anchor, all in one
/// warp. Frames without a usable spine keep theta = 0 and are anchored on a
/// surrogate point derived from the foreground bbox.
AlignedFrame align_frame_skeleton(const SilhouetteMask& mask, const std::optional<SkeletonFrame>& skel,
                                  const AlignmentConfig& cfg);

/// Rotates about the minimum-area rectangle's center so its long side is
/// vertical, using the smaller of the two candidate rotations.
AlignedFrame align_frame_minbbox(const SilhouetteMask& mask, const AlignmentConfig& cfg,
                                 const std::optional<SkeletonFrame>& skel = std::nullopt);

/// Rotation of random magnitude in [0, rand_max_deg] about the foreground
/// centroid. Left-heavy (or balanced) masks get a positive angle, which moves
/// the upper body rightward on screen.
AlignedFrame align_frame_random(const SilhouetteMask& mask, const AlignmentConfig& cfg, Rng& rng,
                                const std::optional<SkeletonFrame>& skel = std::nullopt);

/// Scale and anchor normalization only.
AlignedFrame align_frame_none(const SilhouetteMask& mask, const AlignmentConfig& cfg,
                              const std::optional<SkeletonFrame>& skel = std::nullopt);

/// Per-frame RNG used by the restricted-random strategy.
Rng frame_rng(std::uint64_t seed, int frame_index);

/// Builds the report row for one aligned frame.
AlignmentReportRow make_report_row(int frame_index, const AlignedFrame& frame, const AlignmentConfig& cfg);

/// Dispatches every frame to cfg.strategy. Empty masks are dropped and
/// reported. Throws Error(kAllFramesEmpty) if nothing survives and
/// Error(kMissingSkeletons) when SkeletonGuided has no skeleton at all.
SequenceAlignment align_sequence(const std::vector<FrameInput>& frames, const AlignmentConfig& cfg);

}  // namespace silalign
