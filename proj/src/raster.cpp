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

#include "silalign/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "silalign/error.hpp"

namespace silalign {

namespace {

void require_dims(int w, int h) {
  if (w < 1 || h < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "mask dimensions must be >= 1, got " + std::to_string(w) + "x" + std::to_string(h));
  }
}

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

// Folds the rectangle orientation into (-pi/4, pi/4], swapping the
// half-extents whenever a quarter turn is removed.
RotatedRect canonicalize(RotatedRect r) {
  constexpr double kPi = std::numbers::pi;
  while (r.angle > kPi / 2) r.angle -= kPi;
  while (r.angle <= -kPi / 2) r.angle += kPi;
  if (r.angle > kPi / 4) {
    r.angle -= kPi / 2;
    std::swap(r.half_w, r.half_h);
  } else if (r.angle <= -kPi / 4) {
    r.angle += kPi / 2;
    std::swap(r.half_w, r.half_h);
  }
  return r;
}

// Rectangle flush with edge (hull[i], hull[i+1]) given the caliper extents.
RotatedRect rect_for_edge(Point2 origin, Point2 e, double a_min, double a_max, double b_far) {
  const Point2 n{-e.y, e.x};
  RotatedRect r;
  r.center = origin + (0.5 * (a_min + a_max)) * e + (0.5 * b_far) * n;
  r.half_w = 0.5 * (a_max - a_min);
  r.half_h = 0.5 * std::abs(b_far);
  r.angle = std::atan2(e.y, e.x);
  return r;
}

}  // namespace

SilhouetteMask::SilhouetteMask(int width, int height) : width_(width), height_(height) {
  require_dims(width, height);
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

SilhouetteMask::SilhouetteMask(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  require_dims(width, height);
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw Error(ErrorCode::kInvalidArgument, "pixel buffer size does not match dimensions");
  }
  if (std::any_of(pixels_.begin(), pixels_.end(), [](std::uint8_t v) { return v > 1; })) {
    throw Error(ErrorCode::kInvalidArgument, "mask pixels must be 0 or 1");
  }
}

std::size_t SilhouetteMask::count() const {
  return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), std::uint8_t{1}));
}

SilhouetteMask warp(const SilhouetteMask& mask, const AffineMap& map, int out_w, int out_h, Interpolation interp) {
  require_dims(out_w, out_h);
  const AffineMap inv = invert(map);
  SilhouetteMask out(out_w, out_h);
  for (int v = 0; v < out_h; ++v) {
    for (int u = 0; u < out_w; ++u) {
      const double sx = inv.r00 * u + inv.r01 * v + inv.tx;
      const double sy = inv.r10 * u + inv.r11 * v + inv.ty;
      bool on = false;
      if (interp == Interpolation::kNearest) {
        on = mask.at_or_zero(round_half_up(sx), round_half_up(sy)) != 0;
      } else {
        const double fx0 = std::floor(sx);
        const double fy0 = std::floor(sy);
        const int x0 = static_cast<int>(fx0);
        const int y0 = static_cast<int>(fy0);
        const double ax = sx - fx0;
        const double ay = sy - fy0;
        const double value = (1 - ax) * (1 - ay) * mask.at_or_zero(x0, y0) + ax * (1 - ay) * mask.at_or_zero(x0 + 1, y0) +
                             (1 - ax) * ay * mask.at_or_zero(x0, y0 + 1) + ax * ay * mask.at_or_zero(x0 + 1, y0 + 1);
        on = value >= 0.5;
      }
      if (on) out.set(u, v, true);
    }
  }
  return out;
}

std::optional<BBox> foreground_bbox(const SilhouetteMask& mask) {
  BBox box{mask.width(), mask.height(), -1, -1};
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      box.min_x = std::min(box.min_x, x);
      box.min_y = std::min(box.min_y, y);
      box.max_x = std::max(box.max_x, x);
      box.max_y = std::max(box.max_y, y);
    }
  }
  if (box.max_x < 0) return std::nullopt;
  return box;
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  std::sort(points.begin(), points.end(),
            [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;

  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const Point2& p : points) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    const Point2& p = points[i];
    while (k >= lower && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<Point2> foreground_hull(const SilhouetteMask& mask) {
  // Row extremes are sufficient: interior pixels of a row never lie on the hull.
  std::vector<Point2> extremes;
  for (int y = 0; y < mask.height(); ++y) {
    int first = -1;
    int last = -1;
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      if (first < 0) first = x;
      last = x;
    }
    if (first < 0) continue;
    extremes.push_back({static_cast<double>(first), static_cast<double>(y)});
    if (last != first) extremes.push_back({static_cast<double>(last), static_cast<double>(y)});
  }
  return convex_hull(std::move(extremes));
}

std::optional<RotatedRect> min_area_rect(std::span<const Point2> hull) {
  const std::size_t n = hull.size();
  if (n == 0) return std::nullopt;
  if (n == 1) return RotatedRect{hull[0], 0.0, 0.0, 0.0};
  if (n == 2) {
    const Point2 d = hull[1] - hull[0];
    return canonicalize(RotatedRect{0.5 * (hull[0] + hull[1]), 0.5 * std::hypot(d.x, d.y), 0.0, std::atan2(d.y, d.x)});
  }

  auto next = [n](std::size_t i) { return (i + 1) % n; };

  // Caliper pointers: farthest along the edge, farthest from the edge line,
  // and least along the edge. Each advances monotonically around the hull.
  std::size_t far_a = 0;
  std::size_t far_b = 0;
  std::size_t near_a = 0;
  std::optional<RotatedRect> best;
  double best_area = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    const Point2 origin = hull[i];
    const Point2 d = hull[next(i)] - origin;
    const double len = std::hypot(d.x, d.y);
    const Point2 e{d.x / len, d.y / len};
    const Point2 nrm{-e.y, e.x};
    auto along = [&](std::size_t k) { return dot(hull[k] - origin, e); };
    auto across = [&](std::size_t k) { return std::abs(dot(hull[k] - origin, nrm)); };

    if (i == 0) {
      for (std::size_t k = 0; k < n; ++k) {
        if (along(k) > along(far_a)) far_a = k;
        if (across(k) > across(far_b)) far_b = k;
        if (along(k) < along(near_a)) near_a = k;
      }
    } else {
      for (std::size_t step = 0; step < n && along(next(far_a)) >= along(far_a); ++step) far_a = next(far_a);
      for (std::size_t step = 0; step < n && across(next(far_b)) >= across(far_b); ++step) far_b = next(far_b);
      for (std::size_t step = 0; step < n && along(next(near_a)) <= along(near_a); ++step) near_a = next(near_a);
    }

    const double b_far = dot(hull[far_b] - origin, nrm);
    const RotatedRect r = rect_for_edge(origin, e, along(near_a), along(far_a), b_far);
    const double area = r.area();
    if (!best || area < best_area) {
      best = r;
      best_area = area;
    }
  }
  return canonicalize(*best);
}

std::optional<RotatedRect> min_area_rect(const SilhouetteMask& mask) {
  const std::vector<Point2> hull = foreground_hull(mask);
  return min_area_rect(std::span<const Point2>(hull));
}

ForegroundStats foreground_stats(const SilhouetteMask& mask) {
  ForegroundStats stats;
  double sx = 0.0;
  double sy = 0.0;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(x, y)) continue;
      ++stats.count;
      sx += x;
      sy += y;
      // Pixel x covers [x, x+1); its center x+0.5 is compared to width/2.
      if (2 * x + 1 <= mask.width()) {
        ++stats.left_count;
      } else {
        ++stats.right_count;
      }
    }
  }
  if (stats.count > 0) {
    stats.centroid = {sx / static_cast<double>(stats.count), sy / static_cast<double>(stats.count)};
  }
  return stats;
}

SilhouetteMask resize(const SilhouetteMask& mask, int out_w, int out_h) {
  require_dims(out_w, out_h);
  const long in_w = mask.width();
  const long in_h = mask.height();
  SilhouetteMask out(out_w, out_h);
  for (int v = 0; v < out_h; ++v) {
    const int sy = static_cast<int>(std::min(in_h - 1, ((2L * v + 1) * in_h) / (2L * out_h)));
    for (int u = 0; u < out_w; ++u) {
      const int sx = static_cast<int>(std::min(in_w - 1, ((2L * u + 1) * in_w) / (2L * out_w)));
      if (mask.at(sx, sy)) out.set(u, v, true);
    }
  }
  return out;
}

SilhouetteMask crop(const SilhouetteMask& mask, const BBox& box) {
  if (box.min_x < 0 || box.min_y < 0 || box.max_x >= mask.width() || box.max_y >= mask.height() ||
      box.min_x > box.max_x || box.min_y > box.max_y) {
    throw Error(ErrorCode::kOutOfBounds, "crop box [" + std::to_string(box.min_x) + "," + std::to_string(box.min_y) +
                                             "," + std::to_string(box.max_x) + "," + std::to_string(box.max_y) +
                                             "] outside " + std::to_string(mask.width()) + "x" +
                                             std::to_string(mask.height()));
  }
  SilhouetteMask out(box.width(), box.height());
  for (int y = 0; y < box.height(); ++y) {
    for (int x = 0; x < box.width(); ++x) {
      if (mask.at(box.min_x + x, box.min_y + y)) out.set(x, y, true);
    }
  }
  return out;
}

SilhouetteMask paste_centered(const SilhouetteMask& mask, int canvas_w, int canvas_h, Point2 anchor_src,
                              Point2 anchor_dst) {
  SilhouetteMask out(canvas_w, canvas_h);
  const int dx = round_half_up(anchor_dst.x - anchor_src.x);
  const int dy = round_half_up(anchor_dst.y - anchor_src.y);
  for (int y = 0; y < mask.height(); ++y) {
    const int ty = y + dy;
    if (ty < 0 || ty >= canvas_h) continue;
    for (int x = 0; x < mask.width(); ++x) {
      const int tx = x + dx;
      if (tx < 0 || tx >= canvas_w || !mask.at(x, y)) continue;
      out.set(tx, ty, true);
    }
  }
  return out;
}

}  // namespace silalign
