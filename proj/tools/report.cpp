// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>

#include "anc/errors.hpp"
#include "json.hpp"

#ifndef ANC_VERSION
#define ANC_VERSION "dev"
#endif

namespace anc::cli {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(std::size_t v) { return std::to_string(v); }

Csv::Csv(std::initializer_list<std::string> header) : width_(header.size()) { rows_.emplace_back(header); }

void Csv::row(std::vector<std::string> cells) {
  if (cells.size() != width_) throw Error("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                                          std::to_string(width_));
  rows_.push_back(std::move(cells));
}

std::string Csv::text() const {
  std::string out;
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += r[i];
    }
    out += '\n';
  }
  return out;
}

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
}

void OutputDir::write(const std::string& name, const Csv& csv) { write_text(name, csv.text()); }

void OutputDir::write_text(const std::string& name, const std::string& text) {
  std::ofstream f(dir_ / name, std::ios::binary);
  f << text;
  if (!f) throw IoError("cannot write " + (dir_ / name).string());
  files_.push_back(name);
}

void OutputDir::write_wav(const std::string& name, const AudioClip& clip, int bits) {
  anc::write_wav(dir_ / name, clip, bits);
  files_.push_back(name);
}

void write_manifest(OutputDir& out, const ManifestInfo& info) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);

  nlohmann::ordered_json j;
  j["tool"] = "anc";
  j["version"] = ANC_VERSION;
  j["timestamp"] = stamp;
  j["command_line"] = info.command_line;
  j["config"] = info.config;
  j["parameters"] = info.effective;
  j["seeds"] = info.seeds;
  j["outputs"] = out.files();
  out.write_text("manifest.json", j.dump(2) + "\n");
}

std::string param_cell(const std::map<std::string, std::string>& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ';';
    out += k + "=" + v;
  }
  return out;
}

}  // namespace anc::cli
