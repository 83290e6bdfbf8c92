// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "anc/audio_io.hpp"

namespace anc::cli {

/// Shortest text that reads back to the same double; "inf"/"nan" for the rest.
std::string num(double v);
std::string num(std::size_t v);

/// Comma-separated file with one header row. Nothing touches disk until
/// save(), so a failed run leaves no half-written tables behind.
class Csv {
 public:
  explicit Csv(std::initializer_list<std::string> header);
  void row(std::vector<std::string> cells);
  std::string text() const;

 private:
  std::size_t width_;
  std::vector<std::vector<std::string>> rows_;
};

/// Records every file a run writes, for the manifest.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);

  void write(const std::string& name, const Csv& csv);
  void write_text(const std::string& name, const std::string& text);
  void write_wav(const std::string& name, const AudioClip& clip, int bits = 24);

  const std::filesystem::path& path() const { return dir_; }
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

struct ManifestInfo {
  std::string command_line;
  std::map<std::string, std::string> config;  // keys given by the user
  std::map<std::string, std::string> effective;  // every parameter actually used
  std::map<std::string, std::uint64_t> seeds;
};

/// manifest.json: the one place a timestamp is allowed.
void write_manifest(OutputDir& out, const ManifestInfo& info);

/// Parameters as "k=v;k=v" for a single CSV cell.
std::string param_cell(const std::map<std::string, std::string>& params);

}  // namespace anc::cli
