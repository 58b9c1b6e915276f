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
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "silalign/align.hpp"
#include "silalign/augment.hpp"
#include "silalign/preprocess.hpp"
#include "silalign/synth.hpp"

namespace silalign {

namespace fs = std::filesystem;

enum ExitCode : int {
  kExitOk = 0,
  kExitPartial = 1,
  kExitFatal = 2,
};

struct SynthConfig {
  int subjects = 2;
  int sequences_per_subject = 2;
  int frames = 24;
  double max_phi_deg = 30.0;
  double scale_lo = 0.7;
  double scale_hi = 1.4;
  double max_shift = 10.0;
  double phase_step = 0.25;
  FigureSpec figure;
};

struct RunConfig {
  fs::path input;
  fs::path output;
  std::string profile = "gait3d";
  bool preprocess_enabled = true;
  PreprocessConfig preprocess;
  AlignmentConfig align;
  AugmentConfig augment;
  SynthConfig synth;
  int workers = 1;
  int verbosity = 1;  // 0 quiet, 1 info, 2 debug
  std::int64_t epoch = 0;
  /// cmd_report: 0 means every sequence.
  int report_max_sequences = 0;
  /// cmd_report: restrict to one strategy.
  std::optional<Strategy> report_strategy;
  bool gei_side_by_side = false;

  /// Throws Error(kConfig).
  void validate(bool needs_input) const;
};

/// "gait3d" -> 64x44, "square64" -> 64x64, applied to preprocessing and
/// alignment targets. Throws Error(kConfig) for unknown names.
void apply_profile(RunConfig& cfg, const std::string& profile);

/// Sets every seed (alignment, augmentation, synthesis) at once.
void apply_seed(RunConfig& cfg, std::uint64_t seed);

/// Reads a JSON config; absent keys keep their defaults.
RunConfig load_config(const fs::path& path);
void merge_config_json(RunConfig& cfg, const std::string& json_text);
/// Resolved config as JSON. The output root is left out so that reruns into
/// different directories produce identical files.
std::string config_to_json(const RunConfig& cfg);

/// Runs fn(0..count-1) on `workers` threads; results are indexed, so output
/// order never depends on scheduling.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

int cmd_align(const RunConfig& cfg);
int cmd_gei(const RunConfig& cfg);
int cmd_report(const RunConfig& cfg);
int cmd_synth(const RunConfig& cfg);
int cmd_augment_preview(const RunConfig& cfg);

}  // namespace silalign
