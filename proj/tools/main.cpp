// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "anc/errors.hpp"
#include "commands.hpp"

namespace {

// Stable exit codes.
constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kConfig = 2;
constexpr int kIo = 3;
constexpr int kNumeric = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace anc;
  cli::GlobalOptions opts;
  for (int i = 0; i < argc; ++i) opts.command_line += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Adaptive noise cancellation workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 0;
  std::string config;
  auto* seed_opt = app.add_option("--seed", seed, "Master seed for synthesis and optimizers");
  app.add_option("--out-dir", opts.out_dir, "Directory for outputs")->default_str(".");
  auto* config_opt = app.add_option("--config", config, "key = value configuration file");
  app.add_flag("--paced", opts.paced, "Release blocks at the real sample rate");

  auto* synth = app.add_subcommand("synth", "Synthesize a dual-mic (or --array) scenario");
  bool array = false;
  synth->add_flag("--array", array, "Synthesize a linear mic array instead");

  auto* denoise = app.add_subcommand("denoise", "Run an adaptive filter through the streaming pipeline");
  std::string scenario_dir;
  std::string algo = "lms";
  denoise->add_option("--scenario", scenario_dir, "Directory holding clean/reference/primary.wav")->required();
  denoise->add_option("--algo", algo, "Filter")->check(CLI::IsMember({"lms", "nlms", "rls", "lms-q15"}));

  auto* compare = app.add_subcommand("compare", "Compare streaming filters and optimizers");
  compare->add_option("--scenario", scenario_dir, "Directory holding clean/reference/primary.wav")->required();

  auto* beamform = app.add_subcommand("beamform", "Steer a mic array with delay-and-sum");
  std::vector<std::string> inputs;
  std::string mic_dir;
  beamform->add_option("inputs", inputs, "Mono WAV per mic, in array order");
  beamform->add_option("--mic-dir", mic_dir, "Directory holding mic_0.wav, mic_1.wav, ...");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }
  if (*seed_opt) opts.seed = seed;
  if (*config_opt) opts.config = config;

  try {
    if (*synth) {
      cli::cmd_synth(opts, array);
    } else if (*denoise) {
      cli::cmd_denoise(opts, scenario_dir, algo);
    } else if (*compare) {
      cli::cmd_compare(opts, scenario_dir);
    } else if (*beamform) {
      std::vector<std::filesystem::path> paths(inputs.begin(), inputs.end());
      if (!mic_dir.empty()) {
        const auto found = cli::find_mic_files(mic_dir);
        paths.insert(paths.end(), found.begin(), found.end());
      }
      cli::cmd_beamform(opts, std::move(paths));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const UnsupportedFormatError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
