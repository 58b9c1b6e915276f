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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "silalign/geometry.hpp"

namespace silalign {

/// Binary foreground raster, row-major, values in {0, 1}.
class SilhouetteMask {
 public:
  SilhouetteMask() : SilhouetteMask(1, 1) {}
  /// All-background mask. Throws Error(kInvalidArgument) unless both dims >= 1.
  SilhouetteMask(int width, int height);
  /// Takes ownership of `pixels` (size width*height, each 0 or 1).
  SilhouetteMask(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  std::uint8_t at(int x, int y) const { return pixels_[index(x, y)]; }
  void set(int x, int y, bool on) { pixels_[index(x, y)] = on ? 1 : 0; }
  /// Out-of-bounds reads return background.
  std::uint8_t at_or_zero(int x, int y) const { return contains(x, y) ? at(x, y) : 0; }

  std::span<const std::uint8_t> pixels() const { return pixels_; }
  std::size_t count() const;

  friend bool operator==(const SilhouetteMask&, const SilhouetteMask&) = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Inclusive pixel bounds.
struct BBox {
  int min_x = 0, min_y = 0, max_x = 0, max_y = 0;

  int width() const { return max_x - min_x + 1; }
  int height() const { return max_y - min_y + 1; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

/// Rectangle of size (2 half_w) x (2 half_h); the half_w side runs along
/// (cos angle, sin angle). min_area_rect reports angle in (-pi/4, pi/4].
struct RotatedRect {
  Point2 center;
  double half_w = 0.0;
  double half_h = 0.0;
  double angle = 0.0;

  double area() const { return 4.0 * half_w * half_h; }
};

struct ForegroundStats {
  std::size_t count = 0;
  Point2 centroid;  // (0, 0) when count == 0
  std::size_t left_count = 0;
  std::size_t right_count = 0;
};

enum class Interpolation {
  kNearest,
  /// Bilinear sample, foreground where the weight reaches 0.5.
  kBilinearThreshold,
};

/// Inverse-mapped resampling: output (u, v) reads the input at
/// invert(map)(u, v). Samples outside the input are background.
/// Throws Error(kSingularMap) or Error(kInvalidArgument) for bad dims.
SilhouetteMask warp(const SilhouetteMask& mask, const AffineMap& map, int out_w, int out_h,
                    Interpolation interp = Interpolation::kNearest);

std::optional<BBox> foreground_bbox(const SilhouetteMask& mask);

/// Convex hull of foreground pixel centers, positively oriented in (x, y)
/// (counter-clockwise when drawn with y up), collinear points removed.
std::vector<Point2> foreground_hull(const SilhouetteMask& mask);

/// Andrew's monotone chain.
std::vector<Point2> convex_hull(std::vector<Point2> points);

/// Minimum-area enclosing rectangle of a convex polygon by rotating calipers.
/// `hull` must be the output of convex_hull. Empty input gives nullopt.
std::optional<RotatedRect> min_area_rect(std::span<const Point2> hull);
std::optional<RotatedRect> min_area_rect(const SilhouetteMask& mask);

/// Left/right split is at the image center line; a pixel whose center lies
/// exactly on it (odd widths) counts as left.
ForegroundStats foreground_stats(const SilhouetteMask& mask);

/// Nearest-neighbor resampling. Output pixel u reads input
/// floor((u + 0.5) * in_w / out_w), likewise for rows.
SilhouetteMask resize(const SilhouetteMask& mask, int out_w, int out_h);

/// Throws Error(kOutOfBounds) unless `box` lies inside the mask.
SilhouetteMask crop(const SilhouetteMask& mask, const BBox& box);

/// Places `mask` on a fresh canvas so that `anchor_src` lands on `anchor_dst`
/// (offset rounded to whole pixels). Clipped pixels are dropped.
SilhouetteMask paste_centered(const SilhouetteMask& mask, int canvas_w, int canvas_h, Point2 anchor_src,
                              Point2 anchor_dst);

/// floor(v + 0.5); the rounding rule used for every pixel snap.
inline int round_half_up(double v) { return static_cast<int>(std::floor(v + 0.5)); }

}  // namespace silalign
