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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "silalign/error.hpp"

namespace silalign {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Independent distance test used by the supersampled oracle.
bool InsideCapsule(double px, double py, const Capsule& c) {
  const double dx = c.b.x - c.a.x, dy = c.b.y - c.a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - c.a.x) * dx + (py - c.a.y) * dy) / len2 : 0.0;
  t = std::fmin(1.0, std::fmax(0.0, t));
  return std::hypot(px - c.a.x - t * dx, py - c.a.y - t * dy) <= c.radius;
}

// Area of the capsule union by 8x8 supersampling of each pixel.
double UnionArea(const std::vector<Capsule>& caps, int w, int h) {
  double area = 0.0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int sy = 0; sy < 8; ++sy)
        for (int sx = 0; sx < 8; ++sx) {
          const double px = x - 0.5 + (sx + 0.5) / 8, py = y - 0.5 + (sy + 0.5) / 8;
          for (const Capsule& c : caps)
            if (InsideCapsule(px, py, c)) {
              area += 1.0 / 64;
              break;
            }
        }
  return area;
}

TEST(RenderTest, SpineIsExactlyVertical) {
  for (double phase = 0.0; phase < 2 * kPi; phase += 0.37) {
    FigureSpec spec;
    spec.phase = phase;
    const auto [mask, skel] = render(spec);
    const SpineEndpoints spine = spine_endpoints(skel, 0.3);
    ASSERT_TRUE(spine.valid);
    ASSERT_EQ(spine.neck.x - spine.hip.x, 0.0);
    ASSERT_GT(mask.count(), 0u);
    for (const Keypoint& k : skel.joints) ASSERT_EQ(k.confidence, 1.0);
  }
}

TEST(RenderTest, HalfCycleMirrorsAboutSpine) {
  FigureSpec a, b;
  a.phase = 0.4;
  b.phase = 0.4 + kPi;
  const auto [ma, sa] = render(a);
  const auto [mb, sb] = render(b);
  for (int y = 0; y < ma.height(); ++y)
    for (int x = 1; x < ma.width(); ++x) ASSERT_EQ(mb.at(x, y), ma.at(192 - x, y)) << x << "," << y;
  // Left joints at phase + pi sit where the mirrored left joints were.
  for (CocoJoint j : {CocoJoint::kLeftKnee, CocoJoint::kLeftAnkle, CocoJoint::kLeftWrist}) {
    EXPECT_NEAR(sb[j].position.x - 96.0, -(sa[j].position.x - 96.0), 1e-9);
    EXPECT_NEAR(sb[j].position.y, sa[j].position.y, 1e-9);
  }
}

TEST(RenderTest, SingleCapsuleMatchesAnalyticArea) {
  for (double r : {3.0, 6.0, 9.5}) {
    const Capsule c{{40.3, 30.1}, {70.8, 85.6}, r};
    const double count = static_cast<double>(render_capsules(120, 120, {c}).count());
    EXPECT_NEAR(count, c.area(), 0.05 * c.area()) << r;
  }
}

TEST(RenderTest, FigureMatchesSupersampledUnion) {
  for (double phase : {0.0, 1.1, 2.5}) {
    FigureSpec spec;
    spec.phase = phase;
    const std::vector<Capsule> caps = figure_capsules(spec);
    const double count = static_cast<double>(render(spec).first.count());
    const double area = UnionArea(caps, spec.canvas_w, spec.canvas_h);
    EXPECT_NEAR(count, area, 0.05 * area);
    double sum = 0.0;
    for (const Capsule& c : caps) sum += c.area();
    EXPECT_LE(count, sum * 1.05);
  }
}

TEST(RenderTest, OutOfBoundsSpecThrows) {
  FigureSpec spec;
  spec.neck = {8.0, 70.0};
  try {
    render(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSpecOutOfBounds);
  }
}

TEST(PerturbTest, IdentityIsUnchanged) {
  const auto [mask, skel] = render(FigureSpec{});
  const auto [m, s] = perturb(mask, skel, Perturbation{});
  EXPECT_EQ(m, mask);
  for (std::size_t j = 0; j < kCocoJointCount; ++j) EXPECT_EQ(s.joints[j].position, skel.joints[j].position);
}

TEST(PerturbTest, KnownRotation) {
  const auto [mask, skel] = render(FigureSpec{});
  const auto [m, s] = perturb(mask, skel, Perturbation{12 * kDeg, {4, -3}, 1.0});
  const auto angle = frame_spine_angle(s, GeometryConfig{}, 0.3);
  ASSERT_TRUE(angle.has_value());
  // neck - hip = (26 sin phi, -26 cos phi) after rotating about the neck.
  const double phi = 12 * kDeg;
  const double expected = std::atan(26 * std::sin(phi) / (-26 * std::cos(phi) + 1e-6));
  EXPECT_NEAR(angle->radians, expected, 1e-9);
  EXPECT_NEAR(angle->radians, -phi, 1e-7);
}

TEST(PerturbTest, ScaleStretchesSpine) {
  const auto [mask, skel] = render(FigureSpec{});
  const auto [m, s] = perturb(mask, skel, Perturbation{0.2, {0, 0}, 1.3});
  const SpineEndpoints a = spine_endpoints(skel, 0.3), b = spine_endpoints(s, 0.3);
  EXPECT_NEAR(distance(b.neck, b.hip), 1.3 * distance(a.neck, a.hip), 1e-9);
  EXPECT_NEAR(static_cast<double>(m.count()), 1.69 * mask.count(), 0.03 * 1.69 * mask.count());
}

TEST(PerturbTest, Errors) {
  const auto [mask, skel] = render(FigureSpec{});
  EXPECT_THROW(perturb(mask, skel, Perturbation{kPi / 2, {}, 1.0}), Error);
  EXPECT_THROW(perturb(mask, skel, Perturbation{0.0, {}, 2.5}), Error);
  try {
    perturb(mask, skel, Perturbation{0.0, {150, 0}, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResultOutOfBounds);
  }
}

TEST(RandomPerturbationsTest, WithinRanges) {
  Rng rng(6);
  const PerturbationRanges ranges{0.5, 0.7, 1.4, 10};
  for (const Perturbation& p : random_perturbations(500, ranges, rng)) {
    ASSERT_LE(std::abs(p.phi), 0.5);
    ASSERT_GE(p.scale, 0.7);
    ASSERT_LE(p.scale, 1.4);
    ASSERT_LE(std::abs(p.shift.x), 10.0);
    ASSERT_LE(std::abs(p.shift.y), 10.0);
  }
}

TEST(MakeSequenceTest, EmptyListThrows) {
  try {
    make_sequence(FigureSpec{}, {}, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyList);
  }
}

TEST(MakeSequenceTest, IdentityPerturbationsKeepNeckFixed) {
  const SyntheticSequence seq = make_sequence(FigureSpec{}, std::vector<Perturbation>(10), 3);
  ASSERT_EQ(seq.frames.size(), 10u);
  for (std::size_t t = 0; t < seq.frames.size(); ++t) {
    const SpineEndpoints spine = spine_endpoints(*seq.frames[t].skeleton, 0.3);
    ASSERT_EQ(spine.neck, (Point2{96, 70}));
    ASSERT_EQ(seq.frames[t].frame_index, static_cast<int>(t));
  }
  // Phase advances, so frames differ.
  EXPECT_NE(seq.frames[0].mask, seq.frames[4].mask);
}

TEST(MakeSequenceTest, DeterministicAndRecoverable) {
  Rng rng(10);
  const auto perts = random_perturbations(12, PerturbationRanges{30 * kDeg, 0.5, 2.0, 8}, rng);
  const SyntheticSequence a = make_sequence(FigureSpec{}, perts, 10), b = make_sequence(FigureSpec{}, perts, 10);
  for (std::size_t t = 0; t < a.frames.size(); ++t) ASSERT_EQ(a.frames[t].mask, b.frames[t].mask);

  const SequenceAlignment out = align_sequence(a.frames, AlignmentConfig{});
  for (std::size_t t = 0; t < out.rows.size(); ++t) {
    ASSERT_NEAR(out.rows[t].theta_applied, -perts[t].phi, 1e-6);
    ASSERT_NEAR(out.rows[t].fg_height_out, 0.9 * 64, 2.0);
  }
}

}  // namespace
}  // namespace silalign
