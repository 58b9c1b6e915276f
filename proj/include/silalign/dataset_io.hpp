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
#include <optional>
#include <string>
#include <vector>

#include "silalign/align.hpp"
#include "silalign/raster.hpp"
#include "silalign/skeleton.hpp"
#include "silalign/synth.hpp"

namespace silalign {

namespace fs = std::filesystem;

inline constexpr int kManifestSchemaVersion = 1;
inline constexpr const char* kSilsDir = "sils";
inline constexpr const char* kPoseFile = "pose.json";
inline constexpr const char* kGroundTruthFile = "ground_truth.json";
inline constexpr const char* kManifestFile = "manifest.json";

struct FrameRecord {
  int frame_index = 0;
  /// Relative to the dataset root.
  fs::path mask_path;
};

struct SequenceRecord {
  std::string subject_id;
  std::string sequence_id;
  std::vector<FrameRecord> frames;
  int width = 0;
  int height = 0;
  bool has_pose = false;

  fs::path relative_dir() const { return fs::path(subject_id) / sequence_id; }
};

struct Manifest {
  fs::path root;
  int schema_version = kManifestSchemaVersion;
  std::vector<SequenceRecord> sequences;
};

/// Walks root/<subject>/<sequence>/sils/NNNN.png (+ optional pose.json) in
/// lexicographic order. Loose files at the root and subject levels are
/// ignored. Throws Error(kMalformedTree) listing every bad path, or
/// Error(kDuplicateSequence) when two sequence directories collide after
/// case folding.
Manifest scan(const fs::path& root);

void write_manifest(const Manifest& manifest, const fs::path& path);
Manifest read_manifest(const fs::path& path);

/// 8-bit grayscale PNG; values >= 128 are foreground.
SilhouetteMask read_mask(const fs::path& path);
/// Foreground as 255, background as 0.
void write_mask(const SilhouetteMask& mask, const fs::path& path);
void write_gray8(const fs::path& path, int width, int height, const std::vector<std::uint8_t>& pixels);

/// Throws Error(kUnsupportedSchema) for anything but coco17 and
/// Error(kMalformedFrame) for bad joint counts or confidences.
std::vector<SkeletonFrame> read_pose(const fs::path& path);
void write_pose(const std::vector<SkeletonFrame>& frames, const fs::path& path);

struct GroundTruthFrame {
  int frame_index = 0;
  Perturbation perturbation;
};

void write_ground_truth(const std::vector<GroundTruthFrame>& frames, const fs::path& path);
std::vector<GroundTruthFrame> read_ground_truth(const fs::path& path);

std::string mask_filename(int frame_index);

/// Reads masks and, when present, the matching pose frames.
std::vector<FrameInput> load_sequence(const fs::path& root, const SequenceRecord& record);

/// Writes sils/ and, if any frame carries a skeleton, pose.json into `dir`.
void write_sequence_dir(const fs::path& dir, const std::vector<FrameInput>& frames);

/// Reads a whole file; used for determinism checks and tests.
std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& contents);

}  // namespace silalign
