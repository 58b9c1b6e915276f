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

#include "silalign/dataset_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "silalign/error.hpp"

namespace silalign {

using nlohmann::json;

namespace {

constexpr std::uint8_t kBinarizeThreshold = 128;

[[noreturn]] void io_fail(const fs::path& path, const std::string& what) {
  throw Error(ErrorCode::kIo, path.string() + ": " + what);
}

std::vector<std::uint8_t> read_gray8(const fs::path& path, int& width, int& height) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) io_fail(path, image.message);
  image.format = PNG_FORMAT_GRAY;
  std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    io_fail(path, msg);
  }
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  return buffer;
}

bool read_png_size(const fs::path& path, int& width, int& height) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) return false;
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  png_image_free(&image);
  return true;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) io_fail(path, "cannot open");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, path.string() + ": " + e.what());
  }
}

void write_json(const json& j, const fs::path& path) { write_file(path, j.dump(2) + "\n"); }

std::string fold_case(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::optional<int> parse_frame_name(const fs::path& file) {
  if (file.extension() != ".png") return std::nullopt;
  const std::string stem = file.stem().string();
  if (stem.size() < 4 || stem.size() > 9) return std::nullopt;
  if (!std::all_of(stem.begin(), stem.end(), [](unsigned char c) { return std::isdigit(c); })) return std::nullopt;
  return std::stoi(stem);
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string mask_filename(int frame_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d.png", frame_index);
  return buf;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_fail(path, "cannot open for writing");
  out << contents;
  if (!out) io_fail(path, "write failed");
}

SilhouetteMask read_mask(const fs::path& path) {
  int w = 0, h = 0;
  std::vector<std::uint8_t> px = read_gray8(path, w, h);
  for (std::uint8_t& v : px) v = v >= kBinarizeThreshold ? 1 : 0;
  return SilhouetteMask(w, h, std::move(px));
}

void write_gray8(const fs::path& path, int width, int height, const std::vector<std::uint8_t>& pixels) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, pixels.data(), 0, nullptr)) io_fail(path, image.message);
}

void write_mask(const SilhouetteMask& mask, const fs::path& path) {
  std::vector<std::uint8_t> px(mask.pixels().begin(), mask.pixels().end());
  for (std::uint8_t& v : px) v = v ? 255 : 0;
  write_gray8(path, mask.width(), mask.height(), px);
}

std::vector<SkeletonFrame> read_pose(const fs::path& path) {
  const json doc = read_json(path);
  auto malformed = [&](const std::string& what) { throw Error(ErrorCode::kMalformedFrame, path.string() + ": " + what); };
  if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
    throw Error(ErrorCode::kUnsupportedSchema, path.string() + ": missing schema field");
  }
  if (doc["schema"].get<std::string>() != kCocoSchemaName) {
    throw Error(ErrorCode::kUnsupportedSchema, path.string() + ": schema " + doc["schema"].get<std::string>());
  }
  if (doc.value("num_joints", -1) != static_cast<int>(kCocoJointCount)) malformed("num_joints must be 17");
  if (!doc.contains("frames") || !doc["frames"].is_array()) malformed("frames array missing");

  std::vector<SkeletonFrame> frames;
  std::set<int> seen;
  for (const json& jf : doc["frames"]) {
    if (!jf.is_object() || !jf.contains("index") || !jf["index"].is_number_integer()) malformed("frame without index");
    SkeletonFrame f;
    f.frame_index = jf["index"].get<int>();
    if (f.frame_index < 0 || !seen.insert(f.frame_index).second) {
      malformed("frame index " + std::to_string(f.frame_index) + " negative or repeated");
    }
    const json& kps = jf.value("keypoints", json());
    if (!kps.is_array() || kps.size() != kCocoJointCount) {
      malformed("frame " + std::to_string(f.frame_index) + " does not have 17 keypoints");
    }
    for (std::size_t j = 0; j < kCocoJointCount; ++j) {
      const json& t = kps[j];
      if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() || !t[2].is_number()) {
        malformed("frame " + std::to_string(f.frame_index) + " joint " + std::to_string(j) + " is not (x, y, conf)");
      }
      Keypoint& kp = f.joints[j];
      kp.position = {t[0].get<double>(), t[1].get<double>()};
      kp.confidence = t[2].get<double>();
      if (!(kp.confidence >= 0.0 && kp.confidence <= 1.0)) {
        malformed("frame " + std::to_string(f.frame_index) + " joint " + std::to_string(j) + " confidence out of [0,1]");
      }
      if (kp.confidence > 0.0 && !is_finite(kp.position)) {
        malformed("frame " + std::to_string(f.frame_index) + " joint " + std::to_string(j) + " position not finite");
      }
    }
    frames.push_back(f);
  }
  return frames;
}

void write_pose(const std::vector<SkeletonFrame>& frames, const fs::path& path) {
  json doc;
  doc["schema"] = kCocoSchemaName;
  doc["num_joints"] = kCocoJointCount;
  json jframes = json::array();
  for (const SkeletonFrame& f : frames) {
    json kps = json::array();
    for (const Keypoint& kp : f.joints) kps.push_back({kp.position.x, kp.position.y, kp.confidence});
    jframes.push_back({{"index", f.frame_index}, {"keypoints", kps}});
  }
  doc["frames"] = jframes;
  write_json(doc, path);
}

void write_ground_truth(const std::vector<GroundTruthFrame>& frames, const fs::path& path) {
  json doc;
  doc["schema_version"] = kManifestSchemaVersion;
  json jframes = json::array();
  for (const GroundTruthFrame& f : frames) {
    const Perturbation& p = f.perturbation;
    jframes.push_back({{"index", f.frame_index}, {"phi", p.phi}, {"shift", {p.shift.x, p.shift.y}}, {"scale", p.scale}});
  }
  doc["frames"] = jframes;
  write_json(doc, path);
}

std::vector<GroundTruthFrame> read_ground_truth(const fs::path& path) {
  const json doc = read_json(path);
  std::vector<GroundTruthFrame> out;
  try {
    for (const json& jf : doc.at("frames")) {
      GroundTruthFrame g;
      g.frame_index = jf.at("index").get<int>();
      g.perturbation.phi = jf.at("phi").get<double>();
      g.perturbation.shift = {jf.at("shift").at(0).get<double>(), jf.at("shift").at(1).get<double>()};
      g.perturbation.scale = jf.at("scale").get<double>();
      out.push_back(g);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, path.string() + ": " + e.what());
  }
  return out;
}

Manifest scan(const fs::path& root) {
  if (!fs::is_directory(root)) throw Error(ErrorCode::kIo, root.string() + ": not a directory");
  Manifest manifest;
  manifest.root = root;
  std::vector<std::string> problems;
  std::map<std::string, fs::path> identities;

  for (const fs::path& subject : sorted_entries(root)) {
    if (!fs::is_directory(subject)) continue;
    for (const fs::path& seq_dir : sorted_entries(subject)) {
      if (!fs::is_directory(seq_dir)) continue;
      if (seq_dir.filename().string().front() == '.') continue;  // in-progress outputs

      SequenceRecord rec;
      rec.subject_id = subject.filename().string();
      rec.sequence_id = seq_dir.filename().string();
      const std::string identity = fold_case(rec.subject_id) + "/" + fold_case(rec.sequence_id);
      if (auto [it, inserted] = identities.emplace(identity, seq_dir); !inserted) {
        throw Error(ErrorCode::kDuplicateSequence, seq_dir.string() + " duplicates " + it->second.string());
      }

      const fs::path sils = seq_dir / kSilsDir;
      if (!fs::is_directory(sils)) {
        problems.push_back(seq_dir.string() + ": missing sils/ directory");
        continue;
      }
      bool bad = false;
      for (const fs::path& file : sorted_entries(sils)) {
        const auto index = parse_frame_name(file.filename());
        if (!index || !fs::is_regular_file(file)) {
          problems.push_back(file.string() + ": not a NNNN.png frame");
          bad = true;
          continue;
        }
        int w = 0, h = 0;
        if (!read_png_size(file, w, h)) {
          problems.push_back(file.string() + ": unreadable PNG");
          bad = true;
          continue;
        }
        if (rec.frames.empty()) {
          rec.width = w;
          rec.height = h;
        } else if (w != rec.width || h != rec.height) {
          problems.push_back(file.string() + ": resolution differs from the rest of the sequence");
          bad = true;
        }
        rec.frames.push_back({*index, fs::relative(file, root)});
      }
      std::sort(rec.frames.begin(), rec.frames.end(),
                [](const FrameRecord& a, const FrameRecord& b) { return a.frame_index < b.frame_index; });
      for (std::size_t i = 1; i < rec.frames.size(); ++i) {
        if (rec.frames[i].frame_index == rec.frames[i - 1].frame_index) {
          problems.push_back(sils.string() + ": frame index " + std::to_string(rec.frames[i].frame_index) +
                             " appears twice");
          bad = true;
        }
      }
      if (rec.frames.empty()) {
        problems.push_back(sils.string() + ": no frames");
        bad = true;
      }
      rec.has_pose = fs::is_regular_file(seq_dir / kPoseFile);
      if (!bad) manifest.sequences.push_back(std::move(rec));
    }
  }

  if (!problems.empty()) {
    std::string msg = std::to_string(problems.size()) + " problem(s)";
    for (const std::string& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::kMalformedTree, msg);
  }
  return manifest;
}

void write_manifest(const Manifest& manifest, const fs::path& path) {
  json doc;
  doc["schema_version"] = manifest.schema_version;
  doc["root"] = ".";
  json seqs = json::array();
  for (const SequenceRecord& s : manifest.sequences) {
    json frames = json::array();
    for (const FrameRecord& f : s.frames) frames.push_back({{"index", f.frame_index}, {"mask", f.mask_path.generic_string()}});
    seqs.push_back({{"subject", s.subject_id},
                    {"sequence", s.sequence_id},
                    {"resolution", {s.width, s.height}},
                    {"has_pose", s.has_pose},
                    {"frames", frames}});
  }
  doc["sequences"] = seqs;
  write_json(doc, path);
}

Manifest read_manifest(const fs::path& path) {
  const json doc = read_json(path);
  Manifest m;
  m.root = path.parent_path();
  std::set<std::string> seen;
  try {
    m.schema_version = doc.at("schema_version").get<int>();
    if (m.schema_version != kManifestSchemaVersion) {
      throw Error(ErrorCode::kUnsupportedSchema, path.string() + ": manifest schema " + std::to_string(m.schema_version));
    }
    for (const json& js : doc.at("sequences")) {
      SequenceRecord s;
      s.subject_id = js.at("subject").get<std::string>();
      s.sequence_id = js.at("sequence").get<std::string>();
      if (!seen.insert(fold_case(s.subject_id) + "/" + fold_case(s.sequence_id)).second) {
        throw Error(ErrorCode::kDuplicateSequence, path.string() + ": " + s.subject_id + "/" + s.sequence_id);
      }
      s.width = js.at("resolution").at(0).get<int>();
      s.height = js.at("resolution").at(1).get<int>();
      s.has_pose = js.at("has_pose").get<bool>();
      for (const json& jf : js.at("frames")) {
        s.frames.push_back({jf.at("index").get<int>(), fs::path(jf.at("mask").get<std::string>())});
      }
      m.sequences.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, path.string() + ": " + e.what());
  }
  return m;
}

std::vector<FrameInput> load_sequence(const fs::path& root, const SequenceRecord& record) {
  std::map<int, SkeletonFrame> poses;
  if (record.has_pose) {
    for (SkeletonFrame& f : read_pose(root / record.relative_dir() / kPoseFile)) poses.emplace(f.frame_index, f);
  }
  std::vector<FrameInput> frames;
  frames.reserve(record.frames.size());
  for (const FrameRecord& fr : record.frames) {
    FrameInput in{fr.frame_index, read_mask(root / fr.mask_path), std::nullopt};
    if (auto it = poses.find(fr.frame_index); it != poses.end()) in.skeleton = it->second;
    frames.push_back(std::move(in));
  }
  return frames;
}

void write_sequence_dir(const fs::path& dir, const std::vector<FrameInput>& frames) {
  fs::create_directories(dir / kSilsDir);
  std::vector<SkeletonFrame> poses;
  for (const FrameInput& f : frames) {
    write_mask(f.mask, dir / kSilsDir / mask_filename(f.frame_index));
    if (f.skeleton) {
      SkeletonFrame s = *f.skeleton;
      s.frame_index = f.frame_index;
      poses.push_back(s);
    }
  }
  if (!poses.empty()) write_pose(poses, dir / kPoseFile);
}

}  // namespace silalign
