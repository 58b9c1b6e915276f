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

#include "silalign/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "silalign/error.hpp"

namespace silalign {

void PreprocessConfig::validate() const {
  if (target_h < 8 || target_w < 8) {
    throw Error(ErrorCode::kConfig, "preprocess target dims must be >= 8");
  }
}

const char* to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kEmptyMask: return "EmptyMask";
    case RejectReason::kTooShort: return "TooShort";
  }
  return "Unknown";
}

namespace {

// Source range [first, last] feeding output index u. Nearest sampling when
// growing; when shrinking, every covered source index, so thin rows or
// columns at the extremes cannot be skipped.
std::pair<int, int> source_span(int u, int in, int out) {
  if (out >= in) {
    const int k = static_cast<int>((2LL * u + 1) * in / (2LL * out));
    return {k, k};
  }
  const int first = static_cast<int>(static_cast<long long>(u) * in / out);
  const int last = static_cast<int>((static_cast<long long>(u + 1) * in + out - 1) / out) - 1;
  return {first, std::max(first, last)};
}

SilhouetteMask shrink_or_resize(const SilhouetteMask& in, int out_w, int out_h) {
  SilhouetteMask out(out_w, out_h);
  for (int v = 0; v < out_h; ++v) {
    const auto [y0, y1] = source_span(v, in.height(), out_h);
    for (int u = 0; u < out_w; ++u) {
      const auto [x0, x1] = source_span(u, in.width(), out_w);
      bool any = false;
      for (int y = y0; y <= y1 && !any; ++y)
        for (int x = x0; x <= x1 && !any; ++x) any = in.at(x, y) != 0;
      out.set(u, v, any);
    }
  }
  return out;
}

}  // namespace

std::variant<Preprocessed, Rejection> standard_preprocess(const SilhouetteMask& mask, const PreprocessConfig& cfg) {
  cfg.validate();
  const auto box = foreground_bbox(mask);
  if (!box) return Rejection{RejectReason::kEmptyMask};
  if (box->height() < kMinForegroundHeight) return Rejection{RejectReason::kTooShort};

  // 1. keep only the foreground rows
  const SilhouetteMask rows = crop(mask, BBox{0, box->min_y, mask.width() - 1, box->max_y});

  // 2. uniform height, aspect preserved
  const double scale = static_cast<double>(cfg.target_h) / rows.height();
  const int scaled_w = std::max(1, round_half_up(rows.width() * scale));
  const SilhouetteMask scaled = shrink_or_resize(rows, scaled_w, cfg.target_h);

  // 3 + 4. integer shift of the horizontal center, then crop/pad to width
  double center_x = 0.0;
  if (cfg.centering == Centering::kCentroid) {
    center_x = foreground_stats(scaled).centroid.x;
  } else {
    const BBox sb = *foreground_bbox(scaled);
    center_x = 0.5 * (sb.min_x + sb.max_x);
  }
  const double target_x = 0.5 * cfg.target_w;
  Preprocessed out{paste_centered(scaled, cfg.target_w, cfg.target_h, {center_x, 0.0}, {target_x, 0.0}), {}};

  // Nearest resize maps pixel centers by x' = (x + 0.5) * s - 0.5.
  const double sx = static_cast<double>(scaled_w) / rows.width();
  const double sy = static_cast<double>(cfg.target_h) / rows.height();
  const int shift = round_half_up(target_x - center_x);
  out.map = AffineMap{sx, 0.0, 0.0, sy, 0.5 * sx - 0.5 + shift, (0.5 - box->min_y) * sy - 0.5};
  return out;
}

}  // namespace silalign
