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

#include <variant>

#include "silalign/geometry.hpp"
#include "silalign/raster.hpp"

namespace silalign {

enum class Centering {
  kCentroid,
  kBBoxCenter,
};

struct PreprocessConfig {
  int target_h = 64;
  int target_w = 44;
  Centering centering = Centering::kCentroid;

  void validate() const;
};

inline constexpr int kMinForegroundHeight = 8;

enum class RejectReason {
  kEmptyMask,
  /// Foreground shorter than kMinForegroundHeight rows.
  kTooShort,
};

const char* to_string(RejectReason reason);

struct Rejection {
  RejectReason reason;
};

struct Preprocessed {
  SilhouetteMask mask;
  /// Pixel-center map from input to output coordinates, for carrying
  /// keypoints through the same crop/resize/shift.
  AffineMap map;
};

/// Crop to the foreground rows, resize to target_h keeping aspect, shift the
/// foreground center to column (target_w - 1) / 2 and crop/pad to target_w.
std::variant<Preprocessed, Rejection> standard_preprocess(const SilhouetteMask& mask, const PreprocessConfig& cfg);

}  // namespace silalign
