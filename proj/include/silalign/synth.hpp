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
#include <string>
#include <utility>
#include <vector>

#include "silalign/align.hpp"
#include "silalign/geometry.hpp"
#include "silalign/raster.hpp"
#include "silalign/rng.hpp"
#include "silalign/skeleton.hpp"

namespace silalign {

/// Side-view stick figure built from capsules. Lengths in pixels, angles in
/// radians. Shoulders share the neck point and hips share the pelvis point,
/// so the rendered spine is exactly vertical.
struct FigureSpec {
  int canvas_w = 192;
  int canvas_h = 192;
  Point2 neck{96.0, 70.0};
  double spine_len = 26.0;
  double neck_len = 3.0;
  double head_radius = 7.0;
  double torso_radius = 6.0;
  double limb_radius = 3.0;
  double upper_arm = 12.0;
  double forearm = 11.0;
  double thigh = 16.0;
  double shin = 16.0;
  double arm_swing = 0.3;
  double leg_swing = 0.35;
  /// Walking-cycle phase in [0, 2 pi).
  double phase = 0.0;
};

/// Thick segment: every point within `radius` of [a, b].
struct Capsule {
  Point2 a;
  Point2 b;
  double radius = 0.0;

  double area() const;
};

struct Perturbation {
  double phi = 0.0;  // radians, rotation about the neck
  Point2 shift;
  double scale = 1.0;

  friend bool operator==(const Perturbation&, const Perturbation&) = default;
};

struct PerturbationRanges {
  double max_phi = 0.0;  // radians
  double scale_lo = 1.0;
  double scale_hi = 1.0;
  double max_shift = 0.0;  // px, per axis
};

struct SyntheticSequence {
  std::string subject_id;
  std::string sequence_id;
  std::vector<FrameInput> frames;
  std::vector<Perturbation> truth;
};

SkeletonFrame figure_skeleton(const FigureSpec& spec);
std::vector<Capsule> figure_capsules(const FigureSpec& spec);

/// Pixel centers inside any capsule are foreground.
SilhouetteMask render_capsules(int width, int height, const std::vector<Capsule>& capsules);

/// Throws Error(kSpecOutOfBounds) unless the figure keeps a 2 px margin.
std::pair<SilhouetteMask, SkeletonFrame> render(const FigureSpec& spec);

/// rotate by phi about the neck, scale about the neck, then shift.
AffineMap perturbation_map(Point2 neck, const Perturbation& p);

/// Applies the same map to mask and skeleton. Throws Error(kInvalidArgument)
/// for |phi| >= pi/2 or scale outside [0.5, 2], Error(kResultOutOfBounds)
/// when the figure would leave the canvas.
std::pair<SilhouetteMask, SkeletonFrame> perturb(const SilhouetteMask& mask, const SkeletonFrame& skel,
                                                 const Perturbation& p);

std::vector<Perturbation> random_perturbations(std::size_t count, const PerturbationRanges& ranges, Rng& rng);

/// One frame per perturbation; the phase advances by `phase_step` per frame
/// from spec.phase plus a seed-derived offset. Throws Error(kEmptyList) for
/// an empty perturbation list.
SyntheticSequence make_sequence(const FigureSpec& spec, const std::vector<Perturbation>& perturbations,
                                std::uint64_t seed, double phase_step = 0.25);

}  // namespace silalign
