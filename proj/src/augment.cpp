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

#include "silalign/augment.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "silalign/error.hpp"

namespace silalign {

void AugmentConfig::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob(p_flip) || !prob(p_affine) || !prob(p_erase)) {
    throw Error(ErrorCode::kConfig, "augmentation probabilities must be in [0, 1]");
  }
  if (!(max_rot_deg >= 0.0)) throw Error(ErrorCode::kConfig, "max_rot_deg must be >= 0");
  if (!(max_persp_frac >= 0.0 && max_persp_frac <= 0.2)) {
    throw Error(ErrorCode::kConfig, "max_persp_frac must be in [0, 0.2]");
  }
  if (!(erase_area_lo >= 0.0 && erase_area_lo <= erase_area_hi && erase_area_hi <= 1.0)) {
    throw Error(ErrorCode::kConfig, "erase area range must satisfy 0 <= lo <= hi <= 1");
  }
}

Homography identity_homography() { return {1, 0, 0, 0, 1, 0, 0, 0, 1}; }

Homography homography_from_quads(const std::array<Point2, 4>& src, const std::array<Point2, 4>& dst) {
  // h22 = 1; two equations per correspondence.
  Eigen::Matrix<double, 8, 8> a;
  Eigen::Matrix<double, 8, 1> b;
  for (int i = 0; i < 4; ++i) {
    const double x = src[i].x, y = src[i].y, u = dst[i].x, v = dst[i].y;
    a.row(2 * i) << x, y, 1, 0, 0, 0, -u * x, -u * y;
    a.row(2 * i + 1) << 0, 0, 0, x, y, 1, -v * x, -v * y;
    b(2 * i) = u;
    b(2 * i + 1) = v;
  }
  Eigen::FullPivLU<Eigen::Matrix<double, 8, 8>> lu(a);
  if (!lu.isInvertible()) throw Error(ErrorCode::kSingularMap, "degenerate quad correspondence");
  const Eigen::Matrix<double, 8, 1> h = lu.solve(b);
  return {h(0), h(1), h(2), h(3), h(4), h(5), h(6), h(7), 1.0};
}

SilhouetteMask warp_projective(const SilhouetteMask& mask, const Homography& h) {
  const Eigen::Matrix3d fwd = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(h.data());
  Eigen::FullPivLU<Eigen::Matrix3d> lu(fwd);
  if (!lu.isInvertible()) throw Error(ErrorCode::kSingularMap, "projective map is singular");
  const Eigen::Matrix3d inv = lu.inverse();
  SilhouetteMask out(mask.width(), mask.height());
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      const Eigen::Vector3d s = inv * Eigen::Vector3d(u, v, 1.0);
      if (!(std::abs(s.z()) > 1e-12)) continue;
      const double sx = s.x() / s.z();
      const double sy = s.y() / s.z();
      if (!std::isfinite(sx) || !std::isfinite(sy)) continue;
      if (std::abs(sx) > 1e9 || std::abs(sy) > 1e9) continue;
      if (mask.at_or_zero(round_half_up(sx), round_half_up(sy))) out.set(u, v, true);
    }
  }
  return out;
}

SilhouetteMask horizontal_flip(const SilhouetteMask& mask) {
  SilhouetteMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (mask.at(x, y)) out.set(mask.width() - 1 - x, y, true);
    }
  }
  return out;
}

AffineDraw sample_affine(int width, int height, const AugmentConfig& cfg, Rng& rng) {
  AffineDraw d;
  d.triggered = uniform01(rng) < cfg.p_affine;
  d.rotation_rad = degrees_to_radians(uniform(rng, -cfg.max_rot_deg, cfg.max_rot_deg)) + 0.0;
  const double jx = cfg.max_persp_frac * width;
  const double jy = cfg.max_persp_frac * height;
  for (Point2& c : d.corner_jitter) {
    c.x = uniform(rng, -jx, jx) + 0.0;
    c.y = uniform(rng, -jy, jy) + 0.0;
  }
  return d;
}

SilhouetteMask apply_affine(const SilhouetteMask& mask, const AffineDraw& draw) {
  const bool no_jitter = std::all_of(draw.corner_jitter.begin(), draw.corner_jitter.end(),
                                     [](Point2 c) { return c.x == 0.0 && c.y == 0.0; });
  if (!draw.triggered || (draw.rotation_rad == 0.0 && no_jitter)) return mask;

  const double w = mask.width() - 1.0;
  const double h = mask.height() - 1.0;
  const AffineMap rot = rotation_about({0.5 * w, 0.5 * h}, {draw.rotation_rad});
  const std::array<Point2, 4> corners{Point2{0, 0}, Point2{w, 0}, Point2{w, h}, Point2{0, h}};
  std::array<Point2, 4> moved{};
  for (int i = 0; i < 4; ++i) moved[i] = apply(rot, corners[i]) + draw.corner_jitter[i];
  return warp_projective(mask, homography_from_quads(corners, moved));
}

EraseDraw sample_erase(int width, int height, const AugmentConfig& cfg, Rng& rng) {
  EraseDraw d;
  d.triggered = uniform01(rng) < cfg.p_erase;
  const double total = static_cast<double>(width) * height;
  const double frac = uniform(rng, cfg.erase_area_lo, cfg.erase_area_hi);
  const double aspect = std::exp(uniform(rng, std::log(0.3), std::log(1.0 / 0.3)));
  const double u_x = uniform01(rng);
  const double u_y = uniform01(rng);

  const double target = frac * total;
  const int min_rows = std::max(1, static_cast<int>(std::ceil(target / width)));
  const int rows = std::clamp(round_half_up(std::sqrt(target / aspect)), min_rows, height);
  int cols = std::clamp(round_half_up(target / rows), 1, width);
  // Rounding can step outside the configured area range; nudge back in.
  while (cols < width && cols * rows < cfg.erase_area_lo * total) ++cols;
  while (cols > 1 && cols * rows > cfg.erase_area_hi * total) --cols;

  const int x0 = std::min(width - cols, static_cast<int>(u_x * (width - cols + 1)));
  const int y0 = std::min(height - rows, static_cast<int>(u_y * (height - rows + 1)));
  d.rect = BBox{x0, y0, x0 + cols - 1, y0 + rows - 1};
  return d;
}

SilhouetteMask apply_erase(const SilhouetteMask& mask, const EraseDraw& draw) {
  if (!draw.triggered) return mask;
  SilhouetteMask out = mask;
  for (int y = std::max(0, draw.rect.min_y); y <= std::min(mask.height() - 1, draw.rect.max_y); ++y) {
    for (int x = std::max(0, draw.rect.min_x); x <= std::min(mask.width() - 1, draw.rect.max_x); ++x) {
      out.set(x, y, false);
    }
  }
  return out;
}

SilhouetteMask random_affine_perspective(const SilhouetteMask& mask, const AugmentConfig& cfg, Rng& rng) {
  return apply_affine(mask, sample_affine(mask.width(), mask.height(), cfg, rng));
}

SilhouetteMask random_erase(const SilhouetteMask& mask, const AugmentConfig& cfg, Rng& rng) {
  return apply_erase(mask, sample_erase(mask.width(), mask.height(), cfg, rng));
}

Rng sequence_rng(std::uint64_t seed, std::int64_t epoch, const std::string& sequence_id) {
  return Rng(derive_seed(derive_seed(seed, static_cast<std::uint64_t>(epoch)), hash_string(sequence_id)));
}

AugmentedSequence augment_sequence(const std::vector<SilhouetteMask>& frames, const AugmentConfig& cfg,
                                   std::int64_t epoch, const std::string& sequence_id) {
  cfg.validate();
  AugmentedSequence out;
  Rng rng = sequence_rng(cfg.seed, epoch, sequence_id);
  const int w = frames.empty() ? 1 : frames.front().width();
  const int h = frames.empty() ? 1 : frames.front().height();
  for (const SilhouetteMask& f : frames) {
    if (f.width() != w || f.height() != h) throw Error(ErrorCode::kMixedDims, "sequence frames differ in size");
  }

  out.flipped = uniform01(rng) < cfg.p_flip;
  const AffineDraw affine = sample_affine(w, h, cfg, rng);
  const EraseDraw erase = sample_erase(w, h, cfg, rng);
  out.affined = affine.triggered;
  out.erased = erase.triggered;

  out.frames.reserve(frames.size());
  for (const SilhouetteMask& f : frames) {
    SilhouetteMask m = out.flipped ? horizontal_flip(f) : f;
    m = apply_affine(m, affine);
    out.frames.push_back(apply_erase(m, erase));
  }
  return out;
}

}  // namespace silalign
