// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace anc::cli {

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::filesystem::path out_dir = ".";
  std::optional<std::filesystem::path> config;
  bool paced = false;
  std::string command_line;
};

void cmd_synth(const GlobalOptions& opts, bool array);
void cmd_denoise(const GlobalOptions& opts, const std::filesystem::path& scenario_dir, const std::string& algo);
void cmd_compare(const GlobalOptions& opts, const std::filesystem::path& scenario_dir);
void cmd_beamform(const GlobalOptions& opts, std::vector<std::filesystem::path> inputs);

/// mic_0.wav, mic_1.wav, ... in numeric order.
std::vector<std::filesystem::path> find_mic_files(const std::filesystem::path& dir);

}  // namespace anc::cli
