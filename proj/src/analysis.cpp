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

#include "silalign/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "silalign/error.hpp"

namespace silalign {

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  for (double x : xs) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(xs.size());
  return m;
}

}  // namespace

EnergyImage gei(const std::vector<SilhouetteMask>& frames) {
  if (frames.empty()) throw Error(ErrorCode::kEmptyList, "GEI needs at least one frame");
  EnergyImage out{frames.front().width(), frames.front().height(), {}};
  std::vector<std::size_t> sums(static_cast<std::size_t>(out.width) * out.height, 0);
  for (const SilhouetteMask& f : frames) {
    if (f.width() != out.width || f.height() != out.height) {
      throw Error(ErrorCode::kMixedDims, "GEI frames differ in size");
    }
    const auto px = f.pixels();
    for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += px[i];
  }
  out.values.resize(sums.size());
  const double n = static_cast<double>(frames.size());
  for (std::size_t i = 0; i < sums.size(); ++i) out.values[i] = static_cast<double>(sums[i]) / n;
  return out;
}

double gei_sharpness(const EnergyImage& image) {
  double total = 0.0;
  std::size_t support = 0;
  for (double v : image.values) {
    if (v <= 0.0) continue;
    total += std::abs(2.0 * v - 1.0);
    ++support;
  }
  return support == 0 ? 0.0 : total / static_cast<double>(support);
}

AlignmentMetrics compute_metrics(const std::vector<AlignmentReportRow>& rows, const EnergyImage& energy) {
  std::vector<double> angles, neck_x, neck_y, heights;
  int degenerate = 0;
  int kept = 0;
  for (const AlignmentReportRow& r : rows) {
    if (r.dropped) continue;
    ++kept;
    neck_x.push_back(r.neck_out.x);
    neck_y.push_back(r.neck_out.y);
    heights.push_back(r.fg_height_out);
    if (r.degenerate) {
      ++degenerate;
    } else if (r.spine_angle_out) {
      angles.push_back(*r.spine_angle_out);
    }
  }
  if (kept == 0) throw Error(ErrorCode::kEmptyList, "no report rows to summarize");

  AlignmentMetrics m;
  for (double a : angles) m.spine_angle_mean_abs += std::abs(a);
  if (!angles.empty()) m.spine_angle_mean_abs /= static_cast<double>(angles.size());
  m.spine_angle_var = moments(angles).var;
  m.neck_var_x = moments(neck_x).var;
  m.neck_var_y = moments(neck_y).var;
  m.fg_height_var = moments(heights).var;
  m.gei_sharpness = gei_sharpness(energy);
  m.degenerate_fraction = static_cast<double>(degenerate) / kept;
  m.angle_samples = static_cast<int>(angles.size());
  return m;
}

std::vector<StrategyMetrics> compare_strategies(const std::vector<FrameInput>& frames, const AlignmentConfig& base,
                                                const std::vector<Strategy>& strategies) {
  std::vector<StrategyMetrics> table;
  for (Strategy s : strategies) {
    AlignmentConfig cfg = base;
    cfg.strategy = s;
    const SequenceAlignment aligned = align_sequence(frames, cfg);
    std::vector<SilhouetteMask> masks;
    masks.reserve(aligned.frames.size());
    for (const AlignedFrame& f : aligned.frames) masks.push_back(f.mask);
    table.push_back({s, compute_metrics(aligned.rows, gei(masks))});
  }
  return table;
}

std::string format_report_table(const std::vector<StrategyMetrics>& table) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-18s %12s %12s %10s %10s %10s %10s %8s\n", "strategy", "|spine|(deg)",
                "spine_var", "neck_vx", "neck_vy", "height_v", "sharpness", "degen");
  os << line;
  for (const StrategyMetrics& row : table) {
    const AlignmentMetrics& m = row.metrics;
    std::snprintf(line, sizeof line, "%-18s %12.4f %12.6f %10.4f %10.4f %10.4f %10.4f %8.3f\n",
                  display_name(row.strategy), radians_to_degrees(m.spine_angle_mean_abs), m.spine_angle_var,
                  m.neck_var_x, m.neck_var_y, m.fg_height_var, m.gei_sharpness, m.degenerate_fraction);
    os << line;
  }
  return os.str();
}

std::string format_report_kv(const std::vector<StrategyMetrics>& table) {
  std::ostringstream os;
  os.precision(17);
  for (const StrategyMetrics& row : table) {
    const AlignmentMetrics& m = row.metrics;
    os << '[' << display_name(row.strategy) << "]\n"
       << "spine_angle_mean_abs = " << m.spine_angle_mean_abs << '\n'
       << "spine_angle_var = " << m.spine_angle_var << '\n'
       << "neck_var_x = " << m.neck_var_x << '\n'
       << "neck_var_y = " << m.neck_var_y << '\n'
       << "fg_height_var = " << m.fg_height_var << '\n'
       << "gei_sharpness = " << m.gei_sharpness << '\n'
       << "degenerate_fraction = " << m.degenerate_fraction << '\n'
       << "angle_samples = " << m.angle_samples << "\n\n";
  }
  return os.str();
}

std::vector<std::uint8_t> to_gray8(const EnergyImage& image) {
  std::vector<std::uint8_t> out(image.values.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * std::clamp(image.values[i], 0.0, 1.0)));
  }
  return out;
}

EnergyImage side_by_side(const EnergyImage& left, const EnergyImage& right) {
  if (left.height != right.height) throw Error(ErrorCode::kMixedDims, "side-by-side images need equal heights");
  EnergyImage out{left.width + right.width, left.height, {}};
  out.values.reserve(static_cast<std::size_t>(out.width) * out.height);
  for (int y = 0; y < out.height; ++y) {
    for (int x = 0; x < left.width; ++x) out.values.push_back(left.at(x, y));
    for (int x = 0; x < right.width; ++x) out.values.push_back(right.at(x, y));
  }
  return out;
}

}  // namespace silalign
