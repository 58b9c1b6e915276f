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

#include "silalign/align.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

#include "silalign/error.hpp"

namespace silalign {

namespace {

struct Extents {
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();
};

// Extents of linear images are attained on the hull.
Extents extents_under(const std::vector<Point2>& hull, const AffineMap& map) {
  Extents e;
  for (const Point2& p : hull) {
    const Point2 q = apply(map, p);
    e.min_x = std::min(e.min_x, q.x);
    e.max_x = std::max(e.max_x, q.x);
    e.min_y = std::min(e.min_y, q.y);
    e.max_y = std::max(e.max_y, q.y);
  }
  return e;
}

std::vector<Point2> nonempty_hull(const SilhouetteMask& mask) {
  std::vector<Point2> hull = foreground_hull(mask);
  if (hull.empty()) throw Error(ErrorCode::kEmptyMask, "cannot align an empty mask");
  return hull;
}

// Where the anchored point comes from. A neck is used as-is; otherwise the
// x coordinate comes from `x_ref` (or the rotated bbox center) and the y
// coordinate is chosen so the scaled foreground sits between equal top and
// bottom margins.
struct AnchorSource {
  std::optional<Point2> neck;
  std::optional<Point2> x_ref;
};

// Rotate about `rot_center`, scale to the target body height, translate the
// anchor source onto the configured anchor. One composed map, one warp.
AlignedFrame normalize(const SilhouetteMask& mask, const std::vector<Point2>& hull,
                       const std::optional<SkeletonFrame>& skel, double theta, Point2 rot_center,
                       const AnchorSource& source, bool degenerate, const AlignmentConfig& cfg) {
  const AffineMap rotation = rotation_about(rot_center, {theta});
  const Extents ext = extents_under(hull, rotation);
  const double scale = cfg.body_height_ratio * cfg.target_h / (ext.max_y - ext.min_y + 1.0);
  const Point2 anchor = cfg.anchor_pixel();

  Point2 src;
  if (source.neck) {
    src = apply(rotation, *source.neck);
  } else {
    const double margin = 0.5 * (1.0 - cfg.body_height_ratio) * cfg.target_h;
    src.x = source.x_ref ? apply(rotation, *source.x_ref).x : 0.5 * (ext.min_x + ext.max_x);
    src.y = (ext.min_y - 0.5) + (anchor.y - margin + 0.5) / scale;
  }

  const AffineMap map = compose(AffineMap::translation(anchor.x - src.x, anchor.y - src.y),
                                compose(AffineMap::scaling_about(src, scale), rotation));

  AlignedFrame out{warp(mask, map, cfg.target_w, cfg.target_h, cfg.interpolation), std::nullopt, map, theta,
                   degenerate};
  if (skel) out.skeleton = transform_skeleton(*skel, map);
  return out;
}

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

const char* config_name(Strategy s) {
  switch (s) {
    case Strategy::kNone: return "none";
    case Strategy::kSkeletonGuided: return "skeleton";
    case Strategy::kMinBBox: return "minbbox";
    case Strategy::kRestrictedRandom: return "random";
  }
  return "none";
}

const char* display_name(Strategy s) {
  switch (s) {
    case Strategy::kNone: return "None";
    case Strategy::kSkeletonGuided: return "SkeletonGuided";
    case Strategy::kMinBBox: return "MinBBox";
    case Strategy::kRestrictedRandom: return "RestrictedRandom";
  }
  return "None";
}

std::optional<Strategy> parse_strategy(const std::string& text) {
  const std::string t = lowercase(text);
  for (Strategy s : kAllStrategies) {
    if (t == config_name(s) || t == lowercase(display_name(s))) return s;
  }
  return std::nullopt;
}

void AlignmentConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kConfig, what); };
  if (target_h < 1 || target_w < 1) fail("alignment target dims must be >= 1");
  if (!(body_height_ratio > 0.0 && body_height_ratio <= 1.0)) fail("body_height_ratio must be in (0, 1]");
  if (!(neck_anchor.x >= 0.0 && neck_anchor.x <= 1.0 && neck_anchor.y >= 0.0 && neck_anchor.y <= 1.0)) {
    fail("neck_anchor fractions must be in [0, 1]");
  }
  if (!(rand_max_deg >= 0.0)) fail("rand_max_deg must be >= 0");
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
  if (!(min_conf >= 0.0 && min_conf <= 1.0)) fail("min_conf must be in [0, 1]");
}

AlignedFrame align_frame_skeleton(const SilhouetteMask& mask, const std::optional<SkeletonFrame>& skel,
                                  const AlignmentConfig& cfg) {
  const std::vector<Point2> hull = nonempty_hull(mask);
  std::optional<SpineEndpoints> spine;
  if (skel) {
    const SpineEndpoints s = spine_endpoints(*skel, cfg.min_conf);
    // A spine with under a pixel of vertical extent means the pose is unusable.
    if (s.valid && std::abs(s.neck.y - s.hip.y) >= 1.0) spine = s;
  }
  if (!spine) {
    return normalize(mask, hull, skel, 0.0, Point2{}, AnchorSource{}, true, cfg);
  }
  const RotationAngle theta = rotation_angle(spine->neck, spine->hip, cfg.geometry());
  return normalize(mask, hull, skel, theta.radians, spine->neck, AnchorSource{spine->neck, std::nullopt}, false,
                   cfg);
}

AlignedFrame align_frame_minbbox(const SilhouetteMask& mask, const AlignmentConfig& cfg,
                                 const std::optional<SkeletonFrame>& skel) {
  const std::vector<Point2> hull = nonempty_hull(mask);
  const RotatedRect rect = *min_area_rect(std::span<const Point2>(hull));
  double theta = 0.0;
  if (rect.half_h >= rect.half_w) {
    // The normal side is already the long one; undo the tilt.
    theta = -rect.angle;
  } else {
    // The long side runs along `angle`; a quarter turn either way makes it
    // vertical. rect.angle is in (-pi/4, pi/4] so the sign picks the smaller.
    theta = rect.angle > 0.0 ? std::numbers::pi / 2 - rect.angle : -std::numbers::pi / 2 - rect.angle;
    if (rect.angle == 0.0) theta = std::numbers::pi / 2;
  }
  theta += 0.0;
  return normalize(mask, hull, skel, theta, rect.center, AnchorSource{std::nullopt, rect.center}, false, cfg);
}

AlignedFrame align_frame_random(const SilhouetteMask& mask, const AlignmentConfig& cfg, Rng& rng,
                                const std::optional<SkeletonFrame>& skel) {
  const std::vector<Point2> hull = nonempty_hull(mask);
  const ForegroundStats stats = foreground_stats(mask);
  const double direction = stats.left_count >= stats.right_count ? 1.0 : -1.0;
  const double magnitude = degrees_to_radians(uniform(rng, 0.0, cfg.rand_max_deg));
  // + 0.0 folds a negative zero so a zero cap reproduces the None strategy.
  const double theta = direction * magnitude + 0.0;
  return normalize(mask, hull, skel, theta, stats.centroid, AnchorSource{std::nullopt, stats.centroid}, false, cfg);
}

AlignedFrame align_frame_none(const SilhouetteMask& mask, const AlignmentConfig& cfg,
                              const std::optional<SkeletonFrame>& skel) {
  const std::vector<Point2> hull = nonempty_hull(mask);
  const Point2 centroid = foreground_stats(mask).centroid;
  return normalize(mask, hull, skel, 0.0, centroid, AnchorSource{std::nullopt, centroid}, false, cfg);
}

Rng frame_rng(std::uint64_t seed, int frame_index) {
  return Rng(derive_seed(seed, static_cast<std::uint64_t>(frame_index)));
}

AlignmentReportRow make_report_row(int frame_index, const AlignedFrame& frame, const AlignmentConfig& cfg) {
  AlignmentReportRow row;
  row.frame_index = frame_index;
  row.theta_applied = frame.theta;
  row.degenerate = frame.degenerate;
  row.neck_out = cfg.anchor_pixel();
  if (frame.skeleton) {
    const SpineEndpoints spine = spine_endpoints(*frame.skeleton, cfg.min_conf);
    if (spine.valid) row.neck_out = spine.neck;
    if (const auto angle = frame_spine_angle(*frame.skeleton, cfg.geometry(), cfg.min_conf)) {
      row.spine_angle_out = angle->radians;
    }
  }
  if (const auto box = foreground_bbox(frame.mask)) row.fg_height_out = box->height();
  return row;
}

SequenceAlignment align_sequence(const std::vector<FrameInput>& frames, const AlignmentConfig& cfg) {
  cfg.validate();
  if (frames.empty()) throw Error(ErrorCode::kEmptyList, "sequence has no frames");
  if (cfg.strategy == Strategy::kSkeletonGuided &&
      std::none_of(frames.begin(), frames.end(), [](const FrameInput& f) { return f.skeleton.has_value(); })) {
    throw Error(ErrorCode::kMissingSkeletons, "SkeletonGuided alignment needs skeletons on at least one frame");
  }

  SequenceAlignment result;
  for (const FrameInput& in : frames) {
    if (in.mask.count() == 0) {
      AlignmentReportRow row;
      row.frame_index = in.frame_index;
      row.dropped = true;
      result.rows.push_back(row);
      continue;
    }
    AlignedFrame out = [&] {
      switch (cfg.strategy) {
        case Strategy::kSkeletonGuided: return align_frame_skeleton(in.mask, in.skeleton, cfg);
        case Strategy::kMinBBox: return align_frame_minbbox(in.mask, cfg, in.skeleton);
        case Strategy::kRestrictedRandom: {
          Rng rng = frame_rng(cfg.seed, in.frame_index);
          return align_frame_random(in.mask, cfg, rng, in.skeleton);
        }
        case Strategy::kNone: break;
      }
      return align_frame_none(in.mask, cfg, in.skeleton);
    }();
    result.rows.push_back(make_report_row(in.frame_index, out, cfg));
    result.frames.push_back(std::move(out));
  }
  if (result.frames.empty()) throw Error(ErrorCode::kAllFramesEmpty, "every frame in the sequence is empty");
  return result;
}

}  // namespace silalign
