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
#include <vector>

#include "silalign/align.hpp"
#include "silalign/raster.hpp"

namespace silalign {

/// Per-pixel mean of a binary sequence, values in [0, 1].
struct EnergyImage {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

struct AlignmentMetrics {
  double spine_angle_mean_abs = 0.0;  // radians
  double spine_angle_var = 0.0;       // radians^2
  double neck_var_x = 0.0;            // px^2
  double neck_var_y = 0.0;
  double fg_height_var = 0.0;
  /// Mean of |2v - 1| over pixels that are foreground in some frame.
  double gei_sharpness = 0.0;
  double degenerate_fraction = 0.0;
  /// Rows that contributed to the spine-angle statistics.
  int angle_samples = 0;
};

/// Throws Error(kEmptyList) or Error(kMixedDims).
EnergyImage gei(const std::vector<SilhouetteMask>& frames);

double gei_sharpness(const EnergyImage& image);

/// Population statistics. Dropped rows are ignored; degenerate rows are left
/// out of the angle statistics and counted in degenerate_fraction.
/// Throws Error(kEmptyList) when no usable row remains.
AlignmentMetrics compute_metrics(const std::vector<AlignmentReportRow>& rows, const EnergyImage& energy);

struct StrategyMetrics {
  Strategy strategy = Strategy::kNone;
  AlignmentMetrics metrics;
};

/// Runs each strategy in `strategies` on the same frames with the same
/// normalization settings and seed. Alignment errors propagate.
std::vector<StrategyMetrics> compare_strategies(const std::vector<FrameInput>& frames, const AlignmentConfig& base,
                                                const std::vector<Strategy>& strategies = {std::begin(kAllStrategies),
                                                                                           std::end(kAllStrategies)});

/// Fixed-width text table, one row per strategy.
std::string format_report_table(const std::vector<StrategyMetrics>& table);

/// `[Strategy]` blocks of `key = value` lines.
std::string format_report_kv(const std::vector<StrategyMetrics>& table);

/// 8-bit grayscale, value = round(255 v).
std::vector<std::uint8_t> to_gray8(const EnergyImage& image);

/// Places images left to right; heights must match.
EnergyImage side_by_side(const EnergyImage& left, const EnergyImage& right);

}  // namespace silalign
