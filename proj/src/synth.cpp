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

#include "silalign/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "silalign/error.hpp"

namespace silalign {

namespace {

constexpr double kMargin = 2.0;

struct Limbs {
  Point2 head;
  Point2 neck;
  Point2 pelvis;
  Point2 elbow[2];
  Point2 wrist[2];
  Point2 knee[2];
  Point2 ankle[2];
};

Point2 step(Point2 from, double len, double angle) { return {from.x + len * std::sin(angle), from.y + len * std::cos(angle)}; }

// Index 0 is the left side. Swing angles are odd in cos(phase) so that
// advancing the phase by pi mirrors the figure about the spine.
Limbs pose(const FigureSpec& s) {
  Limbs l;
  l.neck = s.neck;
  l.pelvis = {s.neck.x, s.neck.y + s.spine_len};
  l.head = {s.neck.x, s.neck.y - s.neck_len - s.head_radius};
  const double arm = s.arm_swing * std::cos(s.phase);
  const double leg = -s.leg_swing * std::cos(s.phase);
  for (int side = 0; side < 2; ++side) {
    const double sign = side == 0 ? 1.0 : -1.0;
    l.elbow[side] = step(l.neck, s.upper_arm, sign * arm);
    l.wrist[side] = step(l.elbow[side], s.forearm, sign * 1.5 * arm);
    l.knee[side] = step(l.pelvis, s.thigh, sign * leg);
    l.ankle[side] = step(l.knee[side], s.shin, sign * 0.5 * leg);
  }
  return l;
}

double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = ab.x * ab.x + ab.y * ab.y;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * ab.x + (p.y - a.y) * ab.y) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

}  // namespace

double Capsule::area() const { return 2.0 * radius * distance(a, b) + std::numbers::pi * radius * radius; }

SkeletonFrame figure_skeleton(const FigureSpec& spec) {
  const Limbs l = pose(spec);
  SkeletonFrame f;
  auto put = [&f](CocoJoint j, Point2 p) { f[j] = Keypoint{p, 1.0}; };
  put(CocoJoint::kNose, l.head);
  put(CocoJoint::kLeftEye, {l.head.x, l.head.y - 0.3 * spec.head_radius});
  put(CocoJoint::kRightEye, {l.head.x, l.head.y - 0.3 * spec.head_radius});
  put(CocoJoint::kLeftEar, l.head);
  put(CocoJoint::kRightEar, l.head);
  put(CocoJoint::kLeftShoulder, l.neck);
  put(CocoJoint::kRightShoulder, l.neck);
  put(CocoJoint::kLeftHip, l.pelvis);
  put(CocoJoint::kRightHip, l.pelvis);
  put(CocoJoint::kLeftElbow, l.elbow[0]);
  put(CocoJoint::kRightElbow, l.elbow[1]);
  put(CocoJoint::kLeftWrist, l.wrist[0]);
  put(CocoJoint::kRightWrist, l.wrist[1]);
  put(CocoJoint::kLeftKnee, l.knee[0]);
  put(CocoJoint::kRightKnee, l.knee[1]);
  put(CocoJoint::kLeftAnkle, l.ankle[0]);
  put(CocoJoint::kRightAnkle, l.ankle[1]);
  return f;
}

std::vector<Capsule> figure_capsules(const FigureSpec& spec) {
  const Limbs l = pose(spec);
  std::vector<Capsule> caps;
  caps.push_back({l.head, l.head, spec.head_radius});
  caps.push_back({l.head, l.neck, spec.limb_radius});
  caps.push_back({l.neck, l.pelvis, spec.torso_radius});
  for (int side = 0; side < 2; ++side) {
    caps.push_back({l.neck, l.elbow[side], spec.limb_radius});
    caps.push_back({l.elbow[side], l.wrist[side], spec.limb_radius});
    caps.push_back({l.pelvis, l.knee[side], spec.limb_radius + 1.0});
    caps.push_back({l.knee[side], l.ankle[side], spec.limb_radius});
  }
  return caps;
}

SilhouetteMask render_capsules(int width, int height, const std::vector<Capsule>& capsules) {
  SilhouetteMask mask(width, height);
  for (const Capsule& c : capsules) {
    const int x0 = std::max(0, static_cast<int>(std::floor(std::min(c.a.x, c.b.x) - c.radius)));
    const int x1 = std::min(width - 1, static_cast<int>(std::ceil(std::max(c.a.x, c.b.x) + c.radius)));
    const int y0 = std::max(0, static_cast<int>(std::floor(std::min(c.a.y, c.b.y) - c.radius)));
    const int y1 = std::min(height - 1, static_cast<int>(std::ceil(std::max(c.a.y, c.b.y) + c.radius)));
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (segment_distance({static_cast<double>(x), static_cast<double>(y)}, c.a, c.b) <= c.radius) {
          mask.set(x, y, true);
        }
      }
    }
  }
  return mask;
}

std::pair<SilhouetteMask, SkeletonFrame> render(const FigureSpec& spec) {
  const std::vector<Capsule> caps = figure_capsules(spec);
  for (const Capsule& c : caps) {
    const double lo_x = std::min(c.a.x, c.b.x) - c.radius;
    const double hi_x = std::max(c.a.x, c.b.x) + c.radius;
    const double lo_y = std::min(c.a.y, c.b.y) - c.radius;
    const double hi_y = std::max(c.a.y, c.b.y) + c.radius;
    if (lo_x < kMargin || lo_y < kMargin || hi_x > spec.canvas_w - 1 - kMargin || hi_y > spec.canvas_h - 1 - kMargin) {
      throw Error(ErrorCode::kSpecOutOfBounds, "figure does not fit the canvas with a 2 px margin");
    }
  }
  return {render_capsules(spec.canvas_w, spec.canvas_h, caps), figure_skeleton(spec)};
}

AffineMap perturbation_map(Point2 neck, const Perturbation& p) {
  return compose(AffineMap::translation(p.shift.x, p.shift.y),
                 compose(AffineMap::scaling_about(neck, p.scale), rotation_about(neck, {p.phi})));
}

std::pair<SilhouetteMask, SkeletonFrame> perturb(const SilhouetteMask& mask, const SkeletonFrame& skel,
                                                 const Perturbation& p) {
  if (!(std::abs(p.phi) < std::numbers::pi / 2) || !(p.scale >= 0.5 && p.scale <= 2.0) || !is_finite(p.shift)) {
    throw Error(ErrorCode::kInvalidArgument, "perturbation outside |phi| < pi/2, scale in [0.5, 2]");
  }
  const Point2 neck = spine_endpoints(skel, 0.0).neck;
  const AffineMap map = perturbation_map(neck, p);
  if (const auto box = foreground_bbox(mask)) {
    const double x0 = box->min_x - 0.5, x1 = box->max_x + 0.5;
    const double y0 = box->min_y - 0.5, y1 = box->max_y + 0.5;
    for (Point2 corner : {Point2{x0, y0}, Point2{x1, y0}, Point2{x1, y1}, Point2{x0, y1}}) {
      const Point2 q = apply(map, corner);
      if (q.x < -0.5 || q.y < -0.5 || q.x > mask.width() - 0.5 || q.y > mask.height() - 0.5) {
        throw Error(ErrorCode::kResultOutOfBounds, "perturbed figure leaves the canvas");
      }
    }
  }
  return {warp(mask, map, mask.width(), mask.height()), transform_skeleton(skel, map)};
}

std::vector<Perturbation> random_perturbations(std::size_t count, const PerturbationRanges& ranges, Rng& rng) {
  std::vector<Perturbation> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Perturbation p;
    p.phi = uniform(rng, -ranges.max_phi, ranges.max_phi);
    p.scale = uniform(rng, ranges.scale_lo, ranges.scale_hi);
    p.shift.x = uniform(rng, -ranges.max_shift, ranges.max_shift);
    p.shift.y = uniform(rng, -ranges.max_shift, ranges.max_shift);
    out.push_back(p);
  }
  return out;
}

SyntheticSequence make_sequence(const FigureSpec& spec, const std::vector<Perturbation>& perturbations,
                                std::uint64_t seed, double phase_step) {
  if (perturbations.empty()) throw Error(ErrorCode::kEmptyList, "no perturbations given");
  Rng rng(derive_seed(seed, 0x5eedULL));
  const double start = spec.phase + 2.0 * std::numbers::pi * uniform01(rng);

  SyntheticSequence seq;
  seq.truth = perturbations;
  for (std::size_t t = 0; t < perturbations.size(); ++t) {
    FigureSpec frame_spec = spec;
    frame_spec.phase = std::fmod(start + phase_step * static_cast<double>(t), 2.0 * std::numbers::pi);
    auto [mask, skel] = render(frame_spec);
    auto [moved_mask, moved_skel] = perturb(mask, skel, perturbations[t]);
    moved_skel.frame_index = static_cast<int>(t);
    seq.frames.push_back(FrameInput{static_cast<int>(t), std::move(moved_mask), std::move(moved_skel)});
  }
  return seq;
}

}  // namespace silalign
