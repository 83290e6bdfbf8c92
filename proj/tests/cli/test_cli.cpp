// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

// Drives the anc binary end to end through the shell.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "anc/audio_io.hpp"
#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string output;
};

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("anc_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

Run anc_cli(const std::string& args, const fs::path& dir) {
  const fs::path log = dir / "cli.log";
  const std::string cmd = std::string(ANC_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(log)};
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

// Header-keyed rows of a small CSV.
std::vector<std::map<std::string, std::string>> read_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  auto split = [](const std::string& l) {
    std::vector<std::string> cells;
    std::string c;
    std::istringstream ls(l);
    while (std::getline(ls, c, ',')) cells.push_back(c);
    return cells;
  };
  if (std::getline(in, line)) header = split(line);
  while (std::getline(in, line)) {
    const auto cells = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size() && i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("synth writes the scenario and is deterministic") {
  const auto dir = scratch("synth");
  write_file(dir / "c.cfg", "scenario.duration = 0.5\n");
  REQUIRE(anc_cli("--seed 3 --config " + (dir / "c.cfg").string() + " --out-dir " + (dir / "a").string() + " synth", dir).code == 0);
  REQUIRE(anc_cli("--seed 3 --config " + (dir / "c.cfg").string() + " --out-dir " + (dir / "b").string() + " synth", dir).code == 0);
  for (const char* f : {"clean.wav", "reference.wav", "primary.wav", "channel.csv", "scenario.txt", "manifest.json"}) {
    CHECK(fs::exists(dir / "a" / f));
  }
  CHECK(slurp(dir / "a" / "primary.wav") == slurp(dir / "b" / "primary.wav"));
  CHECK(anc::read_wav(dir / "a" / "primary.wav").frames() == 24000);
  const auto manifest = slurp(dir / "a" / "manifest.json");
  CHECK(manifest.find("\"seeds\"") != std::string::npos);
  CHECK(manifest.find("primary.wav") != std::string::npos);
}

TEST_CASE("bad configuration exits 2 and names the key") {
  const auto dir = scratch("badcfg");
  write_file(dir / "c.cfg", "# empty scenario\nscenario.duration = 0\n");
  const auto r = anc_cli("--config " + (dir / "c.cfg").string() + " --out-dir " + (dir / "o").string() + " synth", dir);
  CHECK(r.code == 2);
  CHECK(r.output.find("scenario.duration") != std::string::npos);
  CHECK(r.output.find("line 2") != std::string::npos);

  write_file(dir / "u.cfg", "filter.colour = red\n");
  CHECK(anc_cli("--config " + (dir / "u.cfg").string() + " synth", dir).code == 2);
  CHECK(anc_cli("denoise --algo bogus --scenario " + dir.string(), dir).code == 2);
  CHECK(anc_cli("no-such-command", dir).code == 2);
}

TEST_CASE("denoise improves SNR and reports the run") {
  const auto dir = scratch("denoise");
  write_file(dir / "c.cfg", "scenario.duration = 1\n");
  const std::string cfg = " --config " + (dir / "c.cfg").string();
  REQUIRE(anc_cli("--seed 1" + cfg + " --out-dir " + (dir / "s").string() + " synth", dir).code == 0);
  REQUIRE(anc_cli(cfg + " --out-dir " + (dir / "d").string() + " denoise --scenario " + (dir / "s").string() + " --algo lms", dir).code == 0);
  const auto eval = read_csv(dir / "d" / "eval.csv");
  REQUIRE(eval.size() == 1);
  CHECK(std::stod(eval[0].at("improvement")) >= 6.0);
  CHECK(eval[0].at("algorithm") == "lms");
  CHECK(anc::read_wav(dir / "d" / "output.wav").frames() == 48000);
  const auto deadline = read_csv(dir / "d" / "deadline.csv");
  CHECK(deadline.size() == 48000 / 256 + 1);

  SUBCASE("zero step size leaves the primary untouched") {
    write_file(dir / "z.cfg", "scenario.duration = 1\nfilter.mu = 0\n");
    REQUIRE(anc_cli("--config " + (dir / "z.cfg").string() + " --out-dir " + (dir / "z").string() +
                        " denoise --scenario " + (dir / "s").string() + " --algo lms", dir).code == 0);
    CHECK(std::abs(std::stod(read_csv(dir / "z" / "eval.csv")[0].at("improvement"))) < 1e-6);
  }
  SUBCASE("fixed-point variant reports saturation") {
    REQUIRE(anc_cli(cfg + " --out-dir " + (dir / "q").string() + " denoise --scenario " + (dir / "s").string() +
                        " --algo lms-q15", dir).code == 0);
    const auto q = read_csv(dir / "q" / "eval.csv");
    CHECK(q[0].count("saturation_events") == 1);
    CHECK(std::stod(q[0].at("improvement")) > 0.0);
  }
  SUBCASE("missing scenario exits 3") {
    CHECK(anc_cli(cfg + " --out-dir " + (dir / "m").string() + " denoise --scenario " + (dir / "nowhere").string() +
                      " --algo lms", dir).code == 3);
  }
  SUBCASE("numeric blow-up exits 4") {
    write_file(dir / "n.cfg", "scenario.duration = 1\nfilter.rls_lambda = 0.01\nfilter.rls_delta = 1e300\n");
    const auto r = anc_cli("--config " + (dir / "n.cfg").string() + " --out-dir " + (dir / "n").string() +
                               " denoise --scenario " + (dir / "s").string() + " --algo rls", dir);
    CHECK(r.code == 4);
  }
}

TEST_CASE("compare writes every table") {
  const auto dir = scratch("compare");
  write_file(dir / "c.cfg",
             "[scenario]\nduration = 1\n[compare]\nwindow = 4800\n[pso]\niterations = 5\n[jaya]\niterations = 5\n"
             "[sa]\nalpha = 0.3\nsteps_per_temp = 2\n");
  const std::string cfg = " --config " + (dir / "c.cfg").string();
  REQUIRE(anc_cli("--seed 2" + cfg + " --out-dir " + (dir / "s").string() + " synth", dir).code == 0);
  const auto r = anc_cli("--seed 2" + cfg + " --out-dir " + (dir / "c").string() + " compare --scenario " + (dir / "s").string(), dir);
  REQUIRE_MESSAGE(r.code == 0, r.output);
  for (const char* f : {"convergence.csv", "learning_curves.csv", "snr.csv", "runtime.csv", "optimizer_history.csv",
                        "summary.csv", "manifest.json"}) {
    CHECK(fs::exists(dir / "c" / f));
  }
  const auto runtime = read_csv(dir / "c" / "runtime.csv");
  CHECK(runtime.size() == 6);
  double prev = 0.0;
  for (const auto& row : runtime) {
    const double s = std::stod(row.at("seconds"));
    CHECK(s >= prev);
    prev = s;
  }
  CHECK(read_csv(dir / "c" / "snr.csv").size() == 6);
}

TEST_CASE("beamform measures array gain") {
  const auto dir = scratch("beamform");
  // Identical coherent sine on four channels plus independent noise at 0 dB.
  std::vector<double> sine(48000);
  for (std::size_t i = 0; i < sine.size(); ++i) sine[i] = 0.1 * std::sin(2.0 * std::numbers::pi * 1000.0 * i / 48000.0);
  std::string inputs;
  for (int m = 0; m < 4; ++m) {
    std::vector<double> ch = sine;
    std::uint64_t state = 1234567 + m;
    for (auto& s : ch) {
      // Uniform noise scaled to the sine's RMS of 0.1 / sqrt(2).
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      const double u = static_cast<double>(state >> 11) / 9007199254740992.0 - 0.5;
      s += u * std::sqrt(12.0) * 0.1 / std::sqrt(2.0);
    }
    const auto p = dir / ("mic_" + std::to_string(m) + ".wav");
    anc::write_wav(p, anc::AudioClip(ch, 48000), 24);
    inputs += " " + p.string();
  }
  write_file(dir / "c.cfg", "array.mics = 4\narray.angle = 0\narray.spacing = 0.04\n");
  const auto r = anc_cli("--config " + (dir / "c.cfg").string() + " --out-dir " + (dir / "o").string() + " beamform" + inputs, dir);
  REQUIRE_MESSAGE(r.code == 0, r.output);
  const auto gain = read_csv(dir / "o" / "gain.csv");
  REQUIRE(!gain.empty());
  CHECK(std::abs(std::stod(gain[0].at("gain_db")) - 6.02) <= 1.0);

  SUBCASE("identical channels at broadside come through unchanged") {
    const auto p = dir / "same.wav";
    anc::write_wav(p, anc::AudioClip(sine, 48000), 24);
    const std::string same = " " + p.string() + " " + p.string() + " " + p.string() + " " + p.string();
    REQUIRE(anc_cli("--config " + (dir / "c.cfg").string() + " --out-dir " + (dir / "i").string() + " beamform" + same, dir).code == 0);
    const auto in = anc::read_wav(p).mono();
    const auto out = anc::read_wav(dir / "i" / "beamformed.wav").mono();
    CHECK(in == out);
  }
  SUBCASE("wide spacing warns but succeeds") {
    write_file(dir / "w.cfg", "array.mics = 4\narray.spacing = 0.2\n");
    const auto w = anc_cli("--config " + (dir / "w.cfg").string() + " --out-dir " + (dir / "w").string() + " beamform" + inputs, dir);
    CHECK(w.code == 0);
    CHECK(w.output.find("spacing") != std::string::npos);
  }
  SUBCASE("unequal lengths exit 3") {
    const auto p = dir / "short.wav";
    anc::write_wav(p, anc::AudioClip(std::vector<double>(100, 0.0), 48000), 24);
    CHECK(anc_cli("--config " + (dir / "c.cfg").string() + " --out-dir " + (dir / "u").string() + " beamform" + inputs +
                      " " + p.string(), dir).code == 3);
  }
}
