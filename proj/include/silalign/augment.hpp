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
#include <cstdint>
#include <string>
#include <vector>

#include "silalign/raster.hpp"
#include "silalign/rng.hpp"

namespace silalign {

struct AugmentConfig {
  double p_flip = 0.2;
  double p_affine = 0.2;
  double p_erase = 0.2;
  double max_rot_deg = 10.0;
  /// Corner jitter bound as a fraction of each image dimension, in [0, 0.2].
  double max_persp_frac = 0.1;
  double erase_area_lo = 0.02;
  double erase_area_hi = 0.33;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Row-major 3x3 projective map acting on pixel centers.
using Homography = std::array<double, 9>;

Homography identity_homography();

/// Solves for the projective map taking each src[i] to dst[i].
/// Throws Error(kSingularMap) for degenerate quads.
Homography homography_from_quads(const std::array<Point2, 4>& src, const std::array<Point2, 4>& dst);

/// Nearest-neighbor inverse-mapped warp into a same-size canvas.
SilhouetteMask warp_projective(const SilhouetteMask& mask, const Homography& h);

SilhouetteMask horizontal_flip(const SilhouetteMask& mask);

/// Concrete parameters of one affine/perspective draw.
struct AffineDraw {
  bool triggered = false;
  double rotation_rad = 0.0;
  /// Destination offsets of the corners (top-left, top-right, bottom-right,
  /// bottom-left) in pixels.
  std::array<Point2, 4> corner_jitter{};
};

struct EraseDraw {
  bool triggered = false;
  BBox rect;
};

/// Draw order is fixed: trigger, angle, then eight corner offsets, so the
/// stream stays aligned whether or not the draw triggers.
AffineDraw sample_affine(int width, int height, const AugmentConfig& cfg, Rng& rng);
/// Trigger, area fraction, log-aspect, then position.
EraseDraw sample_erase(int width, int height, const AugmentConfig& cfg, Rng& rng);

SilhouetteMask apply_affine(const SilhouetteMask& mask, const AffineDraw& draw);
SilhouetteMask apply_erase(const SilhouetteMask& mask, const EraseDraw& draw);

SilhouetteMask random_affine_perspective(const SilhouetteMask& mask, const AugmentConfig& cfg, Rng& rng);
SilhouetteMask random_erase(const SilhouetteMask& mask, const AugmentConfig& cfg, Rng& rng);

struct AugmentedSequence {
  std::vector<SilhouetteMask> frames;
  bool flipped = false;
  bool affined = false;
  bool erased = false;
};

/// RNG for one (seed, epoch, sequence) triple.
Rng sequence_rng(std::uint64_t seed, std::int64_t epoch, const std::string& sequence_id);

/// One decision per augmentation for the whole sequence; every frame gets
/// the same flip, the same warp and the same erased rectangle. Frames must
/// share dimensions.
AugmentedSequence augment_sequence(const std::vector<SilhouetteMask>& frames, const AugmentConfig& cfg,
                                   std::int64_t epoch, const std::string& sequence_id);

}  // namespace silalign
