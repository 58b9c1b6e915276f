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

#include "silalign/commands.hpp"

#include <spdlog/spdlog.h>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "silalign/analysis.hpp"
#include "silalign/dataset_io.hpp"
#include "silalign/error.hpp"

namespace silalign {

using nlohmann::json;

namespace {

const char* centering_name(Centering c) { return c == Centering::kCentroid ? "centroid" : "bbox"; }
const char* interp_name(Interpolation i) { return i == Interpolation::kNearest ? "nearest" : "bilinear"; }

void set_log_level(int verbosity) {
  spdlog::set_level(verbosity <= 0 ? spdlog::level::warn
                                   : verbosity == 1 ? spdlog::level::info : spdlog::level::debug);
}

struct PreparedSequence {
  std::vector<FrameInput> frames;
  std::vector<std::pair<int, RejectReason>> rejected;
};

// Loads a sequence and runs standard preprocessing on each frame, carrying
// keypoints through the same pixel map.
PreparedSequence prepare(const RunConfig& cfg, const Manifest& manifest, const SequenceRecord& rec) {
  PreparedSequence out;
  std::vector<FrameInput> raw = load_sequence(manifest.root, rec);
  if (!cfg.preprocess_enabled) {
    out.frames = std::move(raw);
    return out;
  }
  for (FrameInput& f : raw) {
    auto result = standard_preprocess(f.mask, cfg.preprocess);
    if (const auto* rej = std::get_if<Rejection>(&result)) {
      out.rejected.emplace_back(f.frame_index, rej->reason);
      continue;
    }
    Preprocessed& pre = std::get<Preprocessed>(result);
    FrameInput g{f.frame_index, std::move(pre.mask), std::nullopt};
    if (f.skeleton) g.skeleton = transform_skeleton(*f.skeleton, pre.map);
    out.frames.push_back(std::move(g));
  }
  return out;
}

std::string sequence_name(const SequenceRecord& rec) { return rec.subject_id + "/" + rec.sequence_id; }

// Writes into a hidden sibling and renames it into place, so a failed
// sequence never leaves a half-written directory behind.
void write_atomically(const fs::path& final_dir, const std::function<void(const fs::path&)>& writer) {
  const fs::path tmp = final_dir.parent_path() / ("." + final_dir.filename().string() + ".partial");
  fs::remove_all(tmp);
  fs::create_directories(tmp);
  try {
    writer(tmp);
  } catch (...) {
    fs::remove_all(tmp);
    throw;
  }
  fs::remove_all(final_dir);
  fs::rename(tmp, final_dir);
}

json row_to_json(const AlignmentReportRow& r) {
  json j{{"frame_index", r.frame_index},
         {"theta_applied", r.theta_applied},
         {"neck_out", {r.neck_out.x, r.neck_out.y}},
         {"fg_height_out", r.fg_height_out},
         {"degenerate", r.degenerate},
         {"dropped", r.dropped}};
  j["spine_angle_out"] = r.spine_angle_out ? json(*r.spine_angle_out) : json(nullptr);
  return j;
}

Manifest scan_input(const RunConfig& cfg) {
  Manifest m = scan(cfg.input);
  if (m.sequences.empty()) throw Error(ErrorCode::kEmptyDataset, cfg.input.string() + " contains no sequences");
  return m;
}

void prepare_output(const RunConfig& cfg) {
  fs::create_directories(cfg.output);
  write_file(cfg.output / "config.json", config_to_json(cfg));
}

struct SequenceOutcome {
  bool ok = false;
  std::string error;
  std::vector<std::pair<int, RejectReason>> rejected;
  std::size_t dropped = 0;
};

int finish(const std::string& command, const std::vector<SequenceOutcome>& outcomes,
           const std::vector<SequenceRecord>& records) {
  std::size_t failed = 0;
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const SequenceOutcome& o = outcomes[i];
    if (!o.ok) {
      ++failed;
      spdlog::error("{}: {} failed: {}", command, sequence_name(records[i]), o.error);
    }
    for (const auto& [index, reason] : o.rejected) {
      ++rejected;
      spdlog::warn("{}: {} frame {} rejected ({})", command, sequence_name(records[i]), index, to_string(reason));
    }
    rejected += o.dropped;
  }
  spdlog::info("{}: {} sequence(s), {} failed, {} frame(s) rejected", command, outcomes.size(), failed, rejected);
  return failed == 0 && rejected == 0 ? kExitOk : kExitPartial;
}

template <typename Fn>
int guarded(const std::string& command, const RunConfig& cfg, Fn&& body) {
  set_log_level(cfg.verbosity);
  try {
    return body();
  } catch (const Error& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitFatal;
  } catch (const std::exception& e) {
    spdlog::error("{}: {}", command, e.what());
    return kExitFatal;
  }
}

}  // namespace

void RunConfig::validate(bool needs_input) const {
  if (output.empty()) throw Error(ErrorCode::kConfig, "output root is required");
  if (needs_input) {
    if (input.empty()) throw Error(ErrorCode::kConfig, "input root is required");
    std::error_code ec;
    if (fs::weakly_canonical(input, ec) == fs::weakly_canonical(output, ec)) {
      throw Error(ErrorCode::kConfig, "input and output roots must differ");
    }
  }
  if (workers < 1) throw Error(ErrorCode::kConfig, "workers must be >= 1");
  preprocess.validate();
  align.validate();
  augment.validate();
  if (synth.subjects < 1 || synth.sequences_per_subject < 1 || synth.frames < 1) {
    throw Error(ErrorCode::kConfig, "synth counts must be >= 1");
  }
  if (!(synth.scale_lo >= 0.5 && synth.scale_lo <= synth.scale_hi && synth.scale_hi <= 2.0)) {
    throw Error(ErrorCode::kConfig, "synth scale range must lie in [0.5, 2]");
  }
  if (!(synth.max_phi_deg >= 0.0 && synth.max_phi_deg < 90.0)) {
    throw Error(ErrorCode::kConfig, "synth max_phi_deg must be in [0, 90)");
  }
}

void apply_profile(RunConfig& cfg, const std::string& profile) {
  int w = 0;
  if (profile == "gait3d") {
    w = 44;
  } else if (profile == "square64") {
    w = 64;
  } else {
    throw Error(ErrorCode::kConfig, "unknown profile '" + profile + "' (expected gait3d or square64)");
  }
  cfg.profile = profile;
  cfg.preprocess.target_h = cfg.align.target_h = 64;
  cfg.preprocess.target_w = cfg.align.target_w = w;
}

void apply_seed(RunConfig& cfg, std::uint64_t seed) {
  cfg.align.seed = seed;
  cfg.augment.seed = seed;
}

void merge_config_json(RunConfig& cfg, const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
  try {
    if (j.contains("profile")) apply_profile(cfg, j["profile"].get<std::string>());
    if (j.contains("input")) cfg.input = j["input"].get<std::string>();
    if (j.contains("output")) cfg.output = j["output"].get<std::string>();
    if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
    if (j.contains("verbosity")) cfg.verbosity = j["verbosity"].get<int>();
    if (j.contains("epoch")) cfg.epoch = j["epoch"].get<std::int64_t>();
    if (j.contains("seed")) apply_seed(cfg, j["seed"].get<std::uint64_t>());
    if (const auto it = j.find("preprocess"); it != j.end()) {
      const json& p = *it;
      cfg.preprocess_enabled = p.value("enabled", cfg.preprocess_enabled);
      cfg.preprocess.target_h = p.value("target_h", cfg.preprocess.target_h);
      cfg.preprocess.target_w = p.value("target_w", cfg.preprocess.target_w);
      if (p.contains("centering")) {
        const std::string c = p["centering"].get<std::string>();
        if (c != "centroid" && c != "bbox") throw Error(ErrorCode::kConfig, "centering must be centroid or bbox");
        cfg.preprocess.centering = c == "centroid" ? Centering::kCentroid : Centering::kBBoxCenter;
      }
    }
    if (const auto it = j.find("align"); it != j.end()) {
      const json& a = *it;
      if (a.contains("strategy")) {
        const auto s = parse_strategy(a["strategy"].get<std::string>());
        if (!s) throw Error(ErrorCode::kConfig, "unknown strategy " + a["strategy"].dump());
        cfg.align.strategy = *s;
      }
      cfg.align.target_h = a.value("target_h", cfg.align.target_h);
      cfg.align.target_w = a.value("target_w", cfg.align.target_w);
      cfg.align.body_height_ratio = a.value("body_height_ratio", cfg.align.body_height_ratio);
      if (a.contains("neck_anchor")) {
        cfg.align.neck_anchor = {a["neck_anchor"].at(0).get<double>(), a["neck_anchor"].at(1).get<double>()};
      }
      cfg.align.rand_max_deg = a.value("rand_max_deg", cfg.align.rand_max_deg);
      cfg.align.seed = a.value("seed", cfg.align.seed);
      cfg.align.min_conf = a.value("min_conf", cfg.align.min_conf);
      cfg.align.epsilon = a.value("epsilon", cfg.align.epsilon);
      if (a.contains("interpolation")) {
        const std::string i = a["interpolation"].get<std::string>();
        if (i != "nearest" && i != "bilinear") throw Error(ErrorCode::kConfig, "interpolation must be nearest or bilinear");
        cfg.align.interpolation = i == "nearest" ? Interpolation::kNearest : Interpolation::kBilinearThreshold;
      }
    }
    if (const auto it = j.find("augment"); it != j.end()) {
      const json& a = *it;
      cfg.augment.p_flip = a.value("p_flip", cfg.augment.p_flip);
      cfg.augment.p_affine = a.value("p_affine", cfg.augment.p_affine);
      cfg.augment.p_erase = a.value("p_erase", cfg.augment.p_erase);
      cfg.augment.max_rot_deg = a.value("max_rot_deg", cfg.augment.max_rot_deg);
      cfg.augment.max_persp_frac = a.value("max_persp_frac", cfg.augment.max_persp_frac);
      if (a.contains("erase_area_frac")) {
        cfg.augment.erase_area_lo = a["erase_area_frac"].at(0).get<double>();
        cfg.augment.erase_area_hi = a["erase_area_frac"].at(1).get<double>();
      }
      cfg.augment.seed = a.value("seed", cfg.augment.seed);
    }
    if (const auto it = j.find("synth"); it != j.end()) {
      const json& s = *it;
      cfg.synth.subjects = s.value("subjects", cfg.synth.subjects);
      cfg.synth.sequences_per_subject = s.value("sequences_per_subject", cfg.synth.sequences_per_subject);
      cfg.synth.frames = s.value("frames", cfg.synth.frames);
      cfg.synth.max_phi_deg = s.value("max_phi_deg", cfg.synth.max_phi_deg);
      if (s.contains("scale")) {
        cfg.synth.scale_lo = s["scale"].at(0).get<double>();
        cfg.synth.scale_hi = s["scale"].at(1).get<double>();
      }
      cfg.synth.max_shift = s.value("max_shift", cfg.synth.max_shift);
      cfg.synth.phase_step = s.value("phase_step", cfg.synth.phase_step);
    }
    if (const auto it = j.find("report"); it != j.end()) {
      cfg.report_max_sequences = it->value("max_sequences", cfg.report_max_sequences);
      if (it->contains("strategy")) {
        const auto s = parse_strategy((*it)["strategy"].get<std::string>());
        if (!s) throw Error(ErrorCode::kConfig, "unknown report strategy");
        cfg.report_strategy = *s;
      }
    }
    if (const auto it = j.find("gei"); it != j.end()) {
      cfg.gei_side_by_side = it->value("side_by_side", cfg.gei_side_by_side);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kConfig, e.what());
  }
}

RunConfig load_config(const fs::path& path) {
  RunConfig cfg;
  merge_config_json(cfg, read_file(path));
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["input"] = cfg.input.generic_string();
  j["profile"] = cfg.profile;
  j["workers"] = cfg.workers;
  j["epoch"] = cfg.epoch;
  j["preprocess"] = {{"enabled", cfg.preprocess_enabled},
                     {"target_h", cfg.preprocess.target_h},
                     {"target_w", cfg.preprocess.target_w},
                     {"centering", centering_name(cfg.preprocess.centering)}};
  j["align"] = {{"strategy", config_name(cfg.align.strategy)},
                {"target_h", cfg.align.target_h},
                {"target_w", cfg.align.target_w},
                {"body_height_ratio", cfg.align.body_height_ratio},
                {"neck_anchor", {cfg.align.neck_anchor.x, cfg.align.neck_anchor.y}},
                {"rand_max_deg", cfg.align.rand_max_deg},
                {"seed", cfg.align.seed},
                {"min_conf", cfg.align.min_conf},
                {"epsilon", cfg.align.epsilon},
                {"interpolation", interp_name(cfg.align.interpolation)}};
  j["augment"] = {{"p_flip", cfg.augment.p_flip},
                  {"p_affine", cfg.augment.p_affine},
                  {"p_erase", cfg.augment.p_erase},
                  {"max_rot_deg", cfg.augment.max_rot_deg},
                  {"max_persp_frac", cfg.augment.max_persp_frac},
                  {"erase_area_frac", {cfg.augment.erase_area_lo, cfg.augment.erase_area_hi}},
                  {"seed", cfg.augment.seed}};
  j["synth"] = {{"subjects", cfg.synth.subjects},
                {"sequences_per_subject", cfg.synth.sequences_per_subject},
                {"frames", cfg.synth.frames},
                {"max_phi_deg", cfg.synth.max_phi_deg},
                {"scale", {cfg.synth.scale_lo, cfg.synth.scale_hi}},
                {"max_shift", cfg.synth.max_shift},
                {"phase_step", cfg.synth.phase_step}};
  json report{{"max_sequences", cfg.report_max_sequences}};
  if (cfg.report_strategy) report["strategy"] = config_name(*cfg.report_strategy);
  j["report"] = report;
  j["gei"] = {{"side_by_side", cfg.gei_side_by_side}};
  return j.dump(2) + "\n";
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
  const std::size_t n_threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, workers)), count);
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

int cmd_align(const RunConfig& cfg) {
  return guarded("align", cfg, [&] {
    cfg.validate(true);
    const Manifest manifest = scan_input(cfg);
    prepare_output(cfg);
    std::vector<SequenceOutcome> outcomes(manifest.sequences.size());

    parallel_for(manifest.sequences.size(), cfg.workers, [&](std::size_t i) {
      const SequenceRecord& rec = manifest.sequences[i];
      SequenceOutcome& outcome = outcomes[i];
      try {
        PreparedSequence prepared = prepare(cfg, manifest, rec);
        outcome.rejected = prepared.rejected;
        if (prepared.frames.empty()) throw Error(ErrorCode::kAllFramesEmpty, "every frame was rejected");
        const SequenceAlignment aligned = align_sequence(prepared.frames, cfg.align);

        std::vector<FrameInput> out_frames;
        json rows = json::array();
        std::size_t k = 0;
        for (const AlignmentReportRow& row : aligned.rows) {
          rows.push_back(row_to_json(row));
          if (row.dropped) {
            ++outcome.dropped;
            continue;
          }
          const AlignedFrame& f = aligned.frames[k++];
          out_frames.push_back(FrameInput{row.frame_index, f.mask, f.skeleton});
        }
        json rejected = json::array();
        for (const auto& [index, reason] : prepared.rejected) {
          rejected.push_back({{"frame_index", index}, {"reason", to_string(reason)}});
        }
        const json report{{"subject", rec.subject_id},
                          {"sequence", rec.sequence_id},
                          {"strategy", display_name(cfg.align.strategy)},
                          {"rows", rows},
                          {"rejected", rejected}};

        fs::create_directories(cfg.output / rec.subject_id);
        write_atomically(cfg.output / rec.relative_dir(), [&](const fs::path& dir) {
          write_sequence_dir(dir, out_frames);
          write_file(dir / "report.json", report.dump(2) + "\n");
        });
        outcome.ok = true;
        spdlog::debug("align: {} done ({} frames)", sequence_name(rec), out_frames.size());
      } catch (const std::exception& e) {
        outcome.error = e.what();
      }
    });

    write_manifest(scan(cfg.output), cfg.output / kManifestFile);
    return finish("align", outcomes, manifest.sequences);
  });
}

int cmd_gei(const RunConfig& cfg) {
  return guarded("gei", cfg, [&] {
    cfg.validate(true);
    const Manifest manifest = scan_input(cfg);
    prepare_output(cfg);
    std::vector<SequenceOutcome> outcomes(manifest.sequences.size());

    parallel_for(manifest.sequences.size(), cfg.workers, [&](std::size_t i) {
      const SequenceRecord& rec = manifest.sequences[i];
      SequenceOutcome& outcome = outcomes[i];
      try {
        PreparedSequence prepared = prepare(cfg, manifest, rec);
        outcome.rejected = prepared.rejected;
        if (prepared.frames.empty()) throw Error(ErrorCode::kAllFramesEmpty, "every frame was rejected");
        std::vector<SilhouetteMask> before;
        for (const FrameInput& f : prepared.frames) before.push_back(f.mask);
        const SequenceAlignment aligned = align_sequence(prepared.frames, cfg.align);
        std::vector<SilhouetteMask> after;
        for (const AlignedFrame& f : aligned.frames) after.push_back(f.mask);
        outcome.dropped = before.size() - after.size();

        const EnergyImage pre = gei(before);
        const EnergyImage post = gei(after);
        const fs::path dir = cfg.output / "gei" / rec.subject_id;
        fs::create_directories(dir);
        write_gray8(dir / (rec.sequence_id + ".png"), post.width, post.height, to_gray8(post));
        write_gray8(dir / (rec.sequence_id + "_pre.png"), pre.width, pre.height, to_gray8(pre));
        if (cfg.gei_side_by_side) {
          if (pre.height == post.height) {
            const EnergyImage both = side_by_side(pre, post);
            write_gray8(dir / (rec.sequence_id + "_pre_post.png"), both.width, both.height, to_gray8(both));
          } else {
            spdlog::warn("gei: {} pre/post heights differ, skipping side-by-side", sequence_name(rec));
          }
        }
        outcome.ok = true;
      } catch (const std::exception& e) {
        outcome.error = e.what();
      }
    });
    return finish("gei", outcomes, manifest.sequences);
  });
}

int cmd_report(const RunConfig& cfg) {
  return guarded("report", cfg, [&] {
    cfg.validate(true);
    Manifest manifest = scan_input(cfg);
    if (cfg.report_max_sequences > 0 && manifest.sequences.size() > static_cast<std::size_t>(cfg.report_max_sequences)) {
      manifest.sequences.resize(static_cast<std::size_t>(cfg.report_max_sequences));
    }
    std::vector<Strategy> strategies(std::begin(kAllStrategies), std::end(kAllStrategies));
    if (cfg.report_strategy) strategies = {*cfg.report_strategy};
    const bool needs_pose =
        std::find(strategies.begin(), strategies.end(), Strategy::kSkeletonGuided) != strategies.end();
    for (const SequenceRecord& rec : manifest.sequences) {
      if (needs_pose && !rec.has_pose) {
        throw Error(ErrorCode::kMissingSkeletons,
                    sequence_name(rec) + " has no pose.json; the SkeletonGuided row needs skeletons "
                                         "(filter with --strategy to skip it)");
      }
    }
    prepare_output(cfg);

    std::vector<std::vector<StrategyMetrics>> per_sequence(manifest.sequences.size());
    parallel_for(manifest.sequences.size(), cfg.workers, [&](std::size_t i) {
      const PreparedSequence prepared = prepare(cfg, manifest, manifest.sequences[i]);
      if (prepared.frames.empty()) {
        throw Error(ErrorCode::kAllFramesEmpty, sequence_name(manifest.sequences[i]) + ": every frame was rejected");
      }
      per_sequence[i] = compare_strategies(prepared.frames, cfg.align, strategies);
    });

    // Mean of each metric over sequences.
    std::vector<StrategyMetrics> table;
    for (std::size_t s = 0; s < strategies.size(); ++s) {
      StrategyMetrics agg{strategies[s], {}};
      AlignmentMetrics& m = agg.metrics;
      for (const auto& rows : per_sequence) {
        const AlignmentMetrics& r = rows[s].metrics;
        m.spine_angle_mean_abs += r.spine_angle_mean_abs;
        m.spine_angle_var += r.spine_angle_var;
        m.neck_var_x += r.neck_var_x;
        m.neck_var_y += r.neck_var_y;
        m.fg_height_var += r.fg_height_var;
        m.gei_sharpness += r.gei_sharpness;
        m.degenerate_fraction += r.degenerate_fraction;
        m.angle_samples += r.angle_samples;
      }
      const double n = static_cast<double>(per_sequence.size());
      m.spine_angle_mean_abs /= n;
      m.spine_angle_var /= n;
      m.neck_var_x /= n;
      m.neck_var_y /= n;
      m.fg_height_var /= n;
      m.gei_sharpness /= n;
      m.degenerate_fraction /= n;
      table.push_back(agg);
    }
    const std::string text = format_report_table(table);
    write_file(cfg.output / "report.txt", text);
    write_file(cfg.output / "report.kv", format_report_kv(table));
    std::fputs(text.c_str(), stdout);
    spdlog::info("report: {} sequence(s), {} strategy row(s)", per_sequence.size(), table.size());
    return kExitOk;
  });
}

int cmd_synth(const RunConfig& cfg) {
  return guarded("synth", cfg, [&] {
    cfg.validate(false);
    prepare_output(cfg);
    const SynthConfig& sc = cfg.synth;
    const std::size_t total = static_cast<std::size_t>(sc.subjects) * static_cast<std::size_t>(sc.sequences_per_subject);
    parallel_for(total, cfg.workers, [&](std::size_t i) {
      const int subject = static_cast<int>(i) / sc.sequences_per_subject;
      const int sequence = static_cast<int>(i) % sc.sequences_per_subject;
      char subject_id[16], sequence_id[16];
      std::snprintf(subject_id, sizeof subject_id, "%03d", subject);
      std::snprintf(sequence_id, sizeof sequence_id, "seq%02d", sequence);

      const std::uint64_t seed = derive_seed(cfg.align.seed, i);
      Rng rng(seed);
      const PerturbationRanges ranges{degrees_to_radians(sc.max_phi_deg), sc.scale_lo, sc.scale_hi, sc.max_shift};
      const std::vector<Perturbation> perts = random_perturbations(static_cast<std::size_t>(sc.frames), ranges, rng);
      const SyntheticSequence seq = make_sequence(sc.figure, perts, seed, sc.phase_step);

      std::vector<GroundTruthFrame> truth;
      for (std::size_t t = 0; t < perts.size(); ++t) truth.push_back({seq.frames[t].frame_index, perts[t]});
      fs::create_directories(cfg.output / subject_id);
      write_atomically(cfg.output / subject_id / sequence_id, [&](const fs::path& dir) {
        write_sequence_dir(dir, seq.frames);
        write_ground_truth(truth, dir / kGroundTruthFile);
      });
    });
    write_manifest(scan(cfg.output), cfg.output / kManifestFile);
    spdlog::info("synth: wrote {} sequence(s) to {}", total, cfg.output.string());
    return kExitOk;
  });
}

int cmd_augment_preview(const RunConfig& cfg) {
  return guarded("augment-preview", cfg, [&] {
    cfg.validate(true);
    const Manifest manifest = scan_input(cfg);
    prepare_output(cfg);
    struct Flags {
      bool flipped = false, affined = false, erased = false;
    };
    std::vector<Flags> flags(manifest.sequences.size());
    parallel_for(manifest.sequences.size(), cfg.workers, [&](std::size_t i) {
      const SequenceRecord& rec = manifest.sequences[i];
      std::vector<SilhouetteMask> masks;
      for (const FrameRecord& fr : rec.frames) masks.push_back(read_mask(manifest.root / fr.mask_path));
      const AugmentedSequence aug = augment_sequence(masks, cfg.augment, cfg.epoch, sequence_name(rec));
      flags[i] = {aug.flipped, aug.affined, aug.erased};
      std::vector<FrameInput> out;
      for (std::size_t k = 0; k < aug.frames.size(); ++k) out.push_back({rec.frames[k].frame_index, aug.frames[k], {}});
      fs::create_directories(cfg.output / rec.subject_id);
      write_atomically(cfg.output / rec.relative_dir(), [&](const fs::path& dir) { write_sequence_dir(dir, out); });
    });

    int flipped = 0, affined = 0, erased = 0;
    json per = json::array();
    for (std::size_t i = 0; i < flags.size(); ++i) {
      flipped += flags[i].flipped;
      affined += flags[i].affined;
      erased += flags[i].erased;
      per.push_back({{"sequence", sequence_name(manifest.sequences[i])},
                     {"flipped", flags[i].flipped},
                     {"affine", flags[i].affined},
                     {"erased", flags[i].erased}});
    }
    const json stats{{"sequences", flags.size()},
                     {"flipped", flipped},
                     {"affine", affined},
                     {"erased", erased},
                     {"epoch", cfg.epoch},
                     {"per_sequence", per}};
    write_file(cfg.output / "augment_stats.json", stats.dump(2) + "\n");
    spdlog::info("augment-preview: {} sequence(s): flipped {}, affine {}, erased {}", flags.size(), flipped, affined,
                 erased);
    return kExitOk;
  });
}

}  // namespace silalign
