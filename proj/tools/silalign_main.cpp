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

// Command-line front end: align, gei, report, synth, augment-preview.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <string>

#include "CLI11.hpp"
#include "silalign/commands.hpp"
#include "silalign/error.hpp"

int main(int argc, char** argv) {
  spdlog::set_default_logger(spdlog::stderr_color_mt("silalign"));
  spdlog::set_pattern("[%l] %v");

  CLI::App app{"Skeleton-guided gait silhouette alignment toolkit"};
  app.require_subcommand(1);
  // Global options are accepted after the subcommand name too.
  app.fallthrough();

  std::string config_path;
  std::string input;
  std::string output;
  std::string profile;
  std::string strategy;
  int workers = 0;
  long long seed = -1;
  long long epoch = -1;
  int max_sequences = -1;
  bool side_by_side = false;
  int verbose = 0;
  bool quiet = false;

  app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--workers", workers, "Worker threads (>= 1)");
  app.add_option("--seed", seed, "Seed for every random component");
  app.add_option("--profile", profile, "Resolution preset: gait3d (64x44) or square64 (64x64)")
      ->check(CLI::IsMember({"gait3d", "square64"}));
  app.add_option("-i,--input", input, "Input dataset root");
  app.add_option("-o,--output", output, "Output root");
  app.add_flag("-v,--verbose", verbose, "More logging (repeatable)");
  app.add_flag("-q,--quiet", quiet, "Warnings and errors only");

  auto* align = app.add_subcommand("align", "Preprocess and align every sequence");
  auto* gei = app.add_subcommand("gei", "Write gait energy images before and after alignment");
  gei->add_flag("--side-by-side", side_by_side, "Also write a pre|post image");
  auto* report = app.add_subcommand("report", "Compare alignment strategies");
  report->add_option("--strategy", strategy, "Only this strategy (none, skeleton, minbbox, random)");
  report->add_option("--max-sequences", max_sequences, "Use at most this many sequences");
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset with ground truth");
  auto* preview = app.add_subcommand("augment-preview", "Apply sequence augmentation and write the result");
  preview->add_option("--epoch", epoch, "Epoch number mixed into the augmentation seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? silalign::kExitOk : silalign::kExitFatal;
  }

  silalign::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = silalign::load_config(config_path);
    if (!profile.empty()) silalign::apply_profile(cfg, profile);
    if (!input.empty()) cfg.input = input;
    if (!output.empty()) cfg.output = output;
    if (workers != 0) cfg.workers = workers;
    if (seed >= 0) silalign::apply_seed(cfg, static_cast<std::uint64_t>(seed));
    if (epoch >= 0) cfg.epoch = epoch;
    if (max_sequences >= 0) cfg.report_max_sequences = max_sequences;
    if (side_by_side) cfg.gei_side_by_side = true;
    if (!strategy.empty()) {
      const auto s = silalign::parse_strategy(strategy);
      if (!s) throw silalign::Error(silalign::ErrorCode::kConfig, "unknown strategy " + strategy);
      cfg.report_strategy = *s;
    }
    if (quiet) cfg.verbosity = 0;
    cfg.verbosity += verbose;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return silalign::kExitFatal;
  }

  if (*align) return silalign::cmd_align(cfg);
  if (*gei) return silalign::cmd_gei(cfg);
  if (*report) return silalign::cmd_report(cfg);
  if (*synth) return silalign::cmd_synth(cfg);
  if (*preview) return silalign::cmd_augment_preview(cfg);
  return silalign::kExitFatal;
}
