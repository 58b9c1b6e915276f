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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
// Usage: silalign_acceptance <work-dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "silalign/align.hpp"
#include "silalign/analysis.hpp"
#include "silalign/augment.hpp"
#include "silalign/commands.hpp"
#include "silalign/dataset_io.hpp"
#include "silalign/geometry.hpp"
#include "silalign/preprocess.hpp"
#include "silalign/raster.hpp"
#include "silalign/synth.hpp"

namespace {

using namespace silalign;

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

// Pinned tolerances.
constexpr int kGeometryCases = 10000;
constexpr double kFixedPointTol = 1e-9;
constexpr double kVerticalRelTol = 1e-6;
constexpr double kRoundTripTol = 1e-9;
constexpr double kGeometryBudgetSec = 1.0;
constexpr double kHandOracleTol = 1e-12;
constexpr int kRecoveryFrames = 500;
constexpr double kThetaTol = 1e-6;
constexpr double kNeckTolPx = 1.0;
constexpr double kHeightTolPx = 2.0;
constexpr double kRecoveryBudgetSec = 30.0;
constexpr int kConvexShapes = 200;
constexpr double kCaliperSlack = 0.005;
constexpr double kTiltTolDeg = 2.0;
constexpr double kConservationTol = 0.03;
constexpr std::size_t kMinShapePixels = 500;
constexpr int kOrderingSequences = 50;
constexpr int kOrderingRequired = 48;
constexpr double kSharpnessMinPhiDeg = 10.0;
constexpr int kAugmentTrials = 10000;
constexpr int kTriggerLo = 1880;
constexpr int kTriggerHi = 2120;
constexpr double kPoseRoundTripTol = 1e-6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_entry_diff(const AffineMap& a, const AffineMap& b) {
  return std::max({std::abs(a.r00 - b.r00), std::abs(a.r01 - b.r01), std::abs(a.r10 - b.r10), std::abs(a.r11 - b.r11),
                   std::abs(a.tx - b.tx), std::abs(a.ty - b.ty)});
}

// Convex polygon from the hull of random points, rasterized at pixel centers.
SilhouetteMask random_convex_shape(std::mt19937_64& rng, int size, double min_r, double max_r) {
  std::uniform_real_distribution<> u(0.0, 1.0);
  const Point2 c{size / 2.0 + 4 * (u(rng) - 0.5), size / 2.0 + 4 * (u(rng) - 0.5)};
  const double stretch = 0.4 + 0.6 * u(rng), tilt = kPi * u(rng);
  const double r = min_r + (max_r - min_r) * u(rng);
  std::vector<Point2> pts;
  const int n = 5 + static_cast<int>(u(rng) * 20);
  for (int k = 0; k < n; ++k) {
    const double a = 2 * kPi * u(rng), rr = r * std::sqrt(0.3 + 0.7 * u(rng));
    const double x = rr * std::cos(a), y = stretch * rr * std::sin(a);
    pts.push_back({c.x + x * std::cos(tilt) - y * std::sin(tilt), c.y + x * std::sin(tilt) + y * std::cos(tilt)});
  }
  const std::vector<Point2> hull = convex_hull(pts);
  SilhouetteMask m(size, size);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      bool inside = hull.size() >= 3;
      for (std::size_t i = 0; i < hull.size() && inside; ++i) {
        const Point2 a = hull[i], b = hull[(i + 1) % hull.size()];
        inside = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x) >= 0.0;
      }
      m.set(x, y, inside);
    }
  }
  return m;
}

double grid_min_area(const std::vector<Point2>& pts) {
  double best = 1e300;
  for (int k = 0; k < 1800; ++k) {
    const double a = k * 0.1 * kDeg, ca = std::cos(a), sa = std::sin(a);
    double lu = 1e300, hu = -1e300, lv = 1e300, hv = -1e300;
    for (const Point2& p : pts) {
      const double pu = p.x * ca + p.y * sa, pv = -p.x * sa + p.y * ca;
      lu = std::min(lu, pu);
      hu = std::max(hu, pu);
      lv = std::min(lv, pv);
      hv = std::max(hv, pv);
    }
    best = std::min(best, (hu - lu) * (hv - lv));
  }
  return best;
}

std::vector<Point2> foreground_points(const SilhouetteMask& m) {
  std::vector<Point2> pts;
  for (int y = 0; y < m.height(); ++y)
    for (int x = 0; x < m.width(); ++x)
      if (m.at(x, y)) pts.push_back({static_cast<double>(x), static_cast<double>(y)});
  return pts;
}

PerturbationRanges standard_ranges() { return {30 * kDeg, 0.7, 1.4, 10.0}; }

// ---------------------------------------------------------------------------

Outcome geometry_exactness() {
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<> pos(-500.0, 500.0), ang(-kPi, kPi);
  double worst_fixed = 0, worst_vertical = 0, worst_round = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < kGeometryCases; ++i) {
    const Point2 neck{pos(rng), pos(rng)};
    Point2 hip{pos(rng), pos(rng)};
    if (std::abs(hip.y - neck.y) < 1.0) hip.y = neck.y + 1.0;
    const AffineMap any = rotation_about(neck, {ang(rng)});
    worst_fixed = std::max(worst_fixed, distance(apply(any, neck), neck));

    const RotationAngle theta = rotation_angle(neck, hip, GeometryConfig{});
    const AffineMap m = rotation_about(neck, theta);
    worst_vertical = std::max(worst_vertical, std::abs(apply(m, hip).x - neck.x) / distance(hip, neck));

    const AffineMap scaled = compose(AffineMap::translation(pos(rng), pos(rng)),
                                     compose(AffineMap::scaling_about(neck, 0.5 + std::abs(pos(rng)) / 500), m));
    worst_round = std::max(worst_round, max_entry_diff(compose(scaled, invert(scaled)), AffineMap::identity()));
  }
  const double elapsed = seconds_since(t0);
  const bool pass = worst_fixed <= kFixedPointTol && worst_vertical <= kVerticalRelTol &&
                    worst_round <= kRoundTripTol && elapsed < kGeometryBudgetSec;
  return {pass, fmt("%d cases, fixed-point %.2e px, vertical %.2e rel, round-trip %.2e, %.3f s", kGeometryCases,
                    worst_fixed, worst_vertical, worst_round, elapsed)};
}

Outcome hand_oracle() {
  // theta = atan(0 / (5 - 25 + 1e-6)) = 0
  const double theta = rotation_angle({10, 5}, {10, 25}, GeometryConfig{1e-6}).radians + 0.0;
  // R = [[0,-1],[1,0]], T = ((1-0)*10 + 1*5, (1-0)*5 - 1*10) = (15, -5)
  // R*(10,25) + T = (-25 + 15, 10 - 5) = (-10, 5)
  const AffineMap m = rotation_about({10, 5}, {kPi / 2});
  const Point2 q = apply(m, {10, 25});
  const double err = std::max({std::abs(theta), std::abs(m.r00), std::abs(m.r01 + 1), std::abs(m.r10 - 1),
                               std::abs(m.r11), std::abs(m.tx - 15), std::abs(m.ty + 5), std::abs(q.x + 10),
                               std::abs(q.y - 5)});
  return {err <= kHandOracleTol, fmt("theta=%.3g, image=(%.15g, %.15g), max error %.2e", theta, q.x, q.y, err)};
}

Outcome synthetic_recovery() {
  const auto t0 = std::chrono::steady_clock::now();
  const AlignmentConfig cfg;
  const Point2 anchor = cfg.anchor_pixel();
  const double target_h = cfg.body_height_ratio * cfg.target_h;
  double worst_theta = 0, worst_neck = 0, worst_height = 0;
  int frames = 0, degenerate = 0;
  for (std::uint64_t s = 0; frames < kRecoveryFrames; ++s) {
    Rng rng(derive_seed(3003, s));
    const std::size_t n = std::min<std::size_t>(25, kRecoveryFrames - frames);
    const std::vector<Perturbation> perts = random_perturbations(n, standard_ranges(), rng);
    const SyntheticSequence seq = make_sequence(FigureSpec{}, perts, s);
    const SequenceAlignment out = align_sequence(seq.frames, cfg);
    for (std::size_t t = 0; t < n; ++t) {
      const AlignmentReportRow& row = out.rows[t];
      degenerate += row.degenerate;
      worst_theta = std::max(worst_theta, std::abs(row.theta_applied + perts[t].phi));
      // Rasterized check: the anchor pixel must be foreground and the analytic neck on it.
      const int ax = round_half_up(anchor.x), ay = round_half_up(anchor.y);
      double neck_err = distance(row.neck_out, anchor);
      if (!out.frames[t].mask.at(ax, ay)) neck_err = std::max(neck_err, 1e9);
      worst_neck = std::max(worst_neck, neck_err);
      worst_height = std::max(worst_height, std::abs(row.fg_height_out - target_h));
    }
    frames += static_cast<int>(n);
  }
  const double elapsed = seconds_since(t0);
  const bool pass = degenerate == 0 && worst_theta <= kThetaTol && worst_neck <= kNeckTolPx &&
                    worst_height <= kHeightTolPx && elapsed < kRecoveryBudgetSec;
  return {pass, fmt("%d frames, |theta+phi| %.2e rad, neck %.2e px, height %.2f px, degenerate %d, %.2f s", frames,
                    worst_theta, worst_neck, worst_height, degenerate, elapsed)};
}

Outcome min_area_rect_oracle() {
  std::mt19937_64 rng(4004);
  double worst_ratio = 0.0;
  for (int i = 0; i < kConvexShapes; ++i) {
    const SilhouetteMask m = random_convex_shape(rng, 96, 8, 40);
    const auto rect = min_area_rect(m);
    if (!rect) return {false, "empty convex shape"};
    const double grid = grid_min_area(foreground_hull(m));
    if (grid > 0) worst_ratio = std::max(worst_ratio, rect->area() / grid - 1.0);
  }
  std::uniform_real_distribution<> tilt(-40.0, 40.0), half(6.0, 14.0);
  double worst_tilt = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double deg = tilt(rng), hw = half(rng), hh = 2.5 * hw;
    const double a = deg * kDeg, ca = std::cos(a), sa = std::sin(a);
    SilhouetteMask m(128, 128);
    for (int y = 0; y < 128; ++y)
      for (int x = 0; x < 128; ++x) {
        const double dx = x - 64.3, dy = y - 63.8;
        m.set(x, y, std::abs(dx * ca + dy * sa) <= hw && std::abs(-dx * sa + dy * ca) <= hh);
      }
    worst_tilt = std::max(worst_tilt, std::abs(min_area_rect(m)->angle / kDeg - deg));
  }
  const bool pass = worst_ratio <= kCaliperSlack && worst_tilt <= kTiltTolDeg;
  return {pass, fmt("%d shapes, caliper/grid - 1 max %+.2e, tilt error max %.3f deg over 50 rects", kConvexShapes,
                    worst_ratio, worst_tilt)};
}

Outcome warp_conservation() {
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<> ang(-30 * kDeg, 30 * kDeg);
  double worst = 0.0;
  bool identity_exact = true;
  int shapes = 0;
  while (shapes < 200) {
    const SilhouetteMask m = random_convex_shape(rng, 96, 18, 40);
    if (m.count() < kMinShapePixels) continue;
    ++shapes;
    const Point2 c = foreground_stats(m).centroid;
    const SilhouetteMask r = warp(m, rotation_about(c, {ang(rng)}), 96, 96);
    worst = std::max(worst, std::abs(static_cast<double>(r.count()) - m.count()) / m.count());
    identity_exact = identity_exact && warp(m, AffineMap::identity(), 96, 96) == m;
  }
  return {worst <= kConservationTol && identity_exact,
          fmt("%d shapes, max count change %.2f%%, identity bit-exact %s", shapes, 100 * worst,
              identity_exact ? "yes" : "no")};
}

struct SequenceBank {
  std::vector<SyntheticSequence> sequences;
};

const SequenceBank& ordering_bank() {
  static const SequenceBank bank = [] {
    SequenceBank b;
    for (int i = 0; i < kOrderingSequences; ++i) {
      Rng rng(derive_seed(6006, static_cast<std::uint64_t>(i)));
      b.sequences.push_back(
          make_sequence(FigureSpec{}, random_perturbations(20, standard_ranges(), rng), static_cast<std::uint64_t>(i)));
    }
    return b;
  }();
  return bank;
}

Outcome strategy_ordering() {
  int ordered = 0;
  bool zero_cap_equal = true;
  for (const SyntheticSequence& seq : ordering_bank().sequences) {
    const auto table = compare_strategies(seq.frames, AlignmentConfig{},
                                          {Strategy::kSkeletonGuided, Strategy::kMinBBox, Strategy::kNone});
    const double skel = table[0].metrics.spine_angle_mean_abs;
    const double bbox = table[1].metrics.spine_angle_mean_abs;
    const double none = table[2].metrics.spine_angle_mean_abs;
    ordered += skel < bbox && bbox < none;

    AlignmentConfig zero;
    zero.rand_max_deg = 0.0;
    zero.strategy = Strategy::kRestrictedRandom;
    const SequenceAlignment r = align_sequence(seq.frames, zero);
    zero.strategy = Strategy::kNone;
    const SequenceAlignment n = align_sequence(seq.frames, zero);
    for (std::size_t k = 0; k < r.frames.size(); ++k) {
      zero_cap_equal = zero_cap_equal && r.frames[k].mask == n.frames[k].mask &&
                       r.frames[k].applied_map == n.frames[k].applied_map;
    }
  }
  return {ordered >= kOrderingRequired && zero_cap_equal,
          fmt("strict ordering in %d/%d sequences (need %d), cap-0 random == None bit-exactly: %s", ordered,
              kOrderingSequences, kOrderingRequired, zero_cap_equal ? "yes" : "no")};
}

Outcome gei_consistency() {
  // Unaligned baseline: the standard crop/resize/center pipeline. Aligned: the
  // same preprocessed frames followed by skeleton-guided alignment.
  const PreprocessConfig pre_cfg;
  int eligible = 0, sharper = 0;
  double min_gain = 1e9;
  for (const SyntheticSequence& seq : ordering_bank().sequences) {
    double max_phi = 0;
    for (const Perturbation& p : seq.truth) max_phi = std::max(max_phi, std::abs(p.phi));
    if (max_phi < kSharpnessMinPhiDeg * kDeg) continue;
    ++eligible;
    std::vector<FrameInput> prepared;
    std::vector<SilhouetteMask> before;
    for (const FrameInput& f : seq.frames) {
      const auto r = standard_preprocess(f.mask, pre_cfg);
      const Preprocessed& p = std::get<Preprocessed>(r);
      prepared.push_back({f.frame_index, p.mask, transform_skeleton(*f.skeleton, p.map)});
      before.push_back(p.mask);
    }
    std::vector<SilhouetteMask> after;
    for (const AlignedFrame& f : align_sequence(prepared, AlignmentConfig{}).frames) after.push_back(f.mask);
    const double gain = gei_sharpness(gei(after)) - gei_sharpness(gei(before));
    min_gain = std::min(min_gain, gain);
    sharper += gain > 0;
  }
  return {eligible > 0 && sharper == eligible,
          fmt("aligned sharper on %d/%d eligible sequences, min gain %+.4f", sharper, eligible, min_gain)};
}

Outcome augmentation_statistics() {
  AugmentConfig cfg;
  cfg.seed = 8008;
  const std::vector<SilhouetteMask> tiny{SilhouetteMask(8, 8)};
  int flips = 0, affines = 0, erases = 0;
  for (int i = 0; i < kAugmentTrials; ++i) {
    const AugmentedSequence a = augment_sequence(tiny, cfg, 0, "seq" + std::to_string(i));
    flips += a.flipped;
    affines += a.affined;
    erases += a.erased;
  }
  const auto in_band = [](int n) { return n >= kTriggerLo && n <= kTriggerHi; };

  std::mt19937_64 rng(8);
  bool double_flip = true;
  std::vector<std::vector<SilhouetteMask>> batch;
  for (int s = 0; s < 32; ++s) {
    std::vector<SilhouetteMask> frames;
    for (int f = 0; f < 6; ++f) {
      SilhouetteMask m(44, 64);
      for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 44; ++x) m.set(x, y, rng() % 3 == 0);
      double_flip = double_flip && horizontal_flip(horizontal_flip(m)) == m;
      frames.push_back(std::move(m));
    }
    batch.push_back(std::move(frames));
  }

  AugmentConfig busy = cfg;
  busy.p_flip = busy.p_affine = busy.p_erase = 0.5;
  std::vector<AugmentedSequence> serial(batch.size()), parallel(batch.size()), again(batch.size());
  for (std::size_t i = 0; i < batch.size(); ++i) serial[i] = augment_sequence(batch[i], busy, 3, std::to_string(i));
  parallel_for(batch.size(), 4,
               [&](std::size_t i) { parallel[i] = augment_sequence(batch[i], busy, 3, std::to_string(i)); });
  parallel_for(batch.size(), 3,
               [&](std::size_t i) { again[i] = augment_sequence(batch[i], busy, 3, std::to_string(i)); });
  bool deterministic = true;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    deterministic = deterministic && serial[i].frames == parallel[i].frames && serial[i].frames == again[i].frames;
  }
  const bool pass = in_band(flips) && in_band(affines) && in_band(erases) && double_flip && deterministic;
  return {pass, fmt("flip %d, affine %d, erase %d of %d (band [%d, %d]); double flip exact %s; serial == parallel %s",
                    flips, affines, erases, kAugmentTrials, kTriggerLo, kTriggerHi, double_flip ? "yes" : "no",
                    deterministic ? "yes" : "no")};
}

std::map<std::string, std::string> snapshot(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = read_file(e.path());
  }
  return files;
}

Outcome end_to_end(const fs::path& work) {
  fs::remove_all(work);
  fs::create_directories(work);
  RunConfig synth;
  synth.verbosity = 0;
  synth.output = work / "synth";
  synth.synth.subjects = 3;
  synth.synth.sequences_per_subject = 2;
  synth.synth.frames = 12;
  apply_seed(synth, 9009);
  if (cmd_synth(synth) != kExitOk) return {false, "synth failed"};

  RunConfig align;
  align.verbosity = 0;
  align.input = synth.output;
  align.output = work / "a";
  align.workers = 2;
  const int first = cmd_align(align);
  const auto tree_a = snapshot(align.output);
  const int rerun = cmd_align(align);
  const auto tree_a2 = snapshot(align.output);
  align.output = work / "b";
  const int second = cmd_align(align);
  const auto tree_b = snapshot(align.output);
  const bool identical = first == kExitOk && rerun == kExitOk && second == kExitOk && tree_a == tree_a2 &&
                         tree_a == tree_b;

  // Round-trips.
  bool masks_exact = true;
  double pose_err = 0.0;
  bool truth_exact = true;
  const Manifest m = scan(synth.output);
  for (const SequenceRecord& rec : m.sequences) {
    const std::vector<FrameInput> frames = load_sequence(m.root, rec);
    std::vector<SkeletonFrame> skels;
    for (const FrameInput& f : frames) {
      write_mask(f.mask, work / "rt.png");
      masks_exact = masks_exact && read_mask(work / "rt.png") == f.mask;
      skels.push_back(*f.skeleton);
    }
    write_pose(skels, work / "rt.json");
    const std::vector<SkeletonFrame> back = read_pose(work / "rt.json");
    for (std::size_t i = 0; i < skels.size(); ++i)
      for (std::size_t j = 0; j < kCocoJointCount; ++j) {
        pose_err = std::max({pose_err, std::abs(back[i].joints[j].position.x - skels[i].joints[j].position.x),
                             std::abs(back[i].joints[j].position.y - skels[i].joints[j].position.y),
                             std::abs(back[i].joints[j].confidence - skels[i].joints[j].confidence)});
      }
    const auto truth = read_ground_truth(m.root / rec.relative_dir() / kGroundTruthFile);
    write_ground_truth(truth, work / "gt.json");
    const auto truth_back = read_ground_truth(work / "gt.json");
    for (std::size_t i = 0; i < truth.size(); ++i) {
      truth_exact = truth_exact && truth[i].perturbation == truth_back[i].perturbation;
    }
  }
  const bool pass = identical && masks_exact && pose_err <= kPoseRoundTripTol && truth_exact;
  return {pass, fmt("%zu files, reruns bit-identical %s, masks lossless %s, pose max error %.2e, truth exact %s",
                    tree_a.size(), identical ? "yes" : "no", masks_exact ? "yes" : "no", pose_err,
                    truth_exact ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path work = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "silalign_acceptance";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"geometry exactness", geometry_exactness},
      {"hand oracle", hand_oracle},
      {"synthetic recovery", synthetic_recovery},
      {"min-area-rect oracle", min_area_rect_oracle},
      {"warp conservation", warp_conservation},
      {"strategy ordering", strategy_ordering},
      {"GEI consistency", gei_consistency},
      {"augmentation statistics", augmentation_statistics},
      {"end-to-end determinism", [&] { return end_to_end(work); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
