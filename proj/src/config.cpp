// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace anc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
std::optional<T> parse_number(std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string section;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_no, "unterminated section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected key = value");
    const auto name = trim(line.substr(0, eq));
    if (name.empty()) throw ConfigError("", line_no, "missing key");
    std::string key = section.empty() ? std::string(name) : section + "." + std::string(name);
    if (cfg.entries_.count(key) != 0) {
      throw ConfigError(key, line_no, "duplicate key (first set on line " + std::to_string(cfg.entries_[key].line) + ")");
    }
    cfg.entries_[key] = Entry{std::string(trim(line.substr(eq + 1))), line_no};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

void Config::set(const std::string& key, const std::string& value) { entries_[key] = Entry{value, 0}; }

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::size_t Config::line_of(const std::string& key) const {
  const Entry* e = find(key);
  return e ? e->line : 0;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  return get_optional_double(key).value_or(fallback);
}

std::optional<double> Config::get_optional_double(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  if (e->value == "inf" || e->value == "+inf") return kNoNoise;
  const auto v = parse_number<double>(e->value);
  if (!v) throw ConfigError(key, e->line, "expected a number, got '" + e->value + "'");
  return v;
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  const auto v = parse_number<std::size_t>(e->value);
  if (!v) throw ConfigError(key, e->line, "expected a non-negative integer, got '" + e->value + "'");
  return *v;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  const auto v = parse_number<std::uint64_t>(e->value);
  if (!v) throw ConfigError(key, e->line, "expected a non-negative integer, got '" + e->value + "'");
  return *v;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  throw ConfigError(key, e->line, "expected true or false, got '" + e->value + "'");
}

void Config::reject_unknown(const std::set<std::string>& known) const {
  for (const auto& [key, entry] : entries_) {
    if (known.count(key) == 0) throw ConfigError(key, entry.line, "unknown key");
  }
}

void Config::rethrow_anchored(const ConfigError& err) const {
  if (err.line() != 0 || err.key().empty()) throw err;
  // Validation messages are "key: what"; strip the key so it is not doubled.
  std::string what = err.what();
  if (what.rfind(err.key() + ": ", 0) == 0) what = what.substr(err.key().size() + 2);
  throw ConfigError(err.key(), line_of(err.key()), what);
}

std::map<std::string, std::string> Config::snapshot() const {
  std::map<std::string, std::string> out;
  for (const auto& [key, entry] : entries_) out[key] = entry.value;
  return out;
}

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "scenario.duration", "scenario.sample_rate", "scenario.clean", "scenario.clean_path", "scenario.noise",
      "scenario.channel_taps", "scenario.snr_in", "scenario.seed", "scenario.clean_rms", "scenario.leakage",
      "filter.taps", "filter.block_size", "filter.mu", "filter.nlms_epsilon", "filter.rls_lambda", "filter.rls_delta",
      "eval.warmup",
      "array.mics", "array.spacing", "array.speed_of_sound", "array.sample_rate", "array.angle", "array.duration",
      "array.source_rms", "array.sensor_snr", "array.interferer_angle", "array.interferer_rms", "array.adaptive",
      "array.f_max",
      "pso.swarm", "pso.iterations", "pso.inertia", "pso.c1", "pso.c2", "pso.bounds", "pso.threads",
      "jaya.population", "jaya.iterations", "jaya.bounds", "jaya.threads",
      "sa.t0", "sa.alpha", "sa.steps_per_temp", "sa.min_temp", "sa.perturb_scale",
      "compare.nlms_mu", "compare.taps", "compare.window", "compare.curve_block", "compare.curve_window",
      "compare.margin_db", "compare.repetitions", "compare.seed",
  };
  return keys;
}

namespace {

template <typename Fn>
void anchored(const Config& cfg, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError& err) {
    cfg.rethrow_anchored(err);
  }
}

}  // namespace

ScenarioSpec scenario_from(const Config& cfg, ScenarioSpec base) {
  ScenarioSpec s = base;
  s.duration = cfg.get_double("scenario.duration", s.duration);
  s.sample_rate = static_cast<int>(cfg.get_size("scenario.sample_rate", static_cast<std::size_t>(s.sample_rate)));
  const std::string clean = cfg.get_string("scenario.clean", "");
  if (clean == "multitone") {
    s.clean_kind = CleanKind::MultitoneAm;
  } else if (clean == "white") {
    s.clean_kind = CleanKind::White;
  } else if (clean == "wav") {
    s.clean_kind = CleanKind::WavFile;
  } else if (!clean.empty()) {
    throw ConfigError("scenario.clean", cfg.line_of("scenario.clean"), "expected multitone, white or wav");
  }
  if (cfg.has("scenario.clean_path")) s.clean_path = cfg.get_string("scenario.clean_path", "");
  const std::string noise = cfg.get_string("scenario.noise", "");
  if (noise == "white") {
    s.noise_kind = NoiseKind::White;
  } else if (noise == "filtered") {
    s.noise_kind = NoiseKind::FilteredWhite;
  } else if (!noise.empty()) {
    throw ConfigError("scenario.noise", cfg.line_of("scenario.noise"), "expected white or filtered");
  }
  s.channel_taps = cfg.get_size("scenario.channel_taps", s.channel_taps);
  s.target_snr_in = cfg.get_double("scenario.snr_in", s.target_snr_in);
  s.seed = cfg.get_u64("scenario.seed", s.seed);
  s.clean_rms = cfg.get_double("scenario.clean_rms", s.clean_rms);
  s.leakage = cfg.get_double("scenario.leakage", s.leakage);
  anchored(cfg, [&] { s.validate(); });
  return s;
}

FilterConfig filter_from(const Config& cfg, FilterKind kind, FilterConfig base) {
  FilterConfig f = base;
  f.num_taps = cfg.get_size("filter.taps", f.num_taps);
  f.block_size = cfg.get_size("filter.block_size", f.block_size);
  f.mu = cfg.get_double("filter.mu", f.mu);
  f.nlms_epsilon = cfg.get_double("filter.nlms_epsilon", f.nlms_epsilon);
  f.rls_lambda = cfg.get_double("filter.rls_lambda", f.rls_lambda);
  f.rls_delta = cfg.get_double("filter.rls_delta", f.rls_delta);
  anchored(cfg, [&] { f.validate(kind); });
  return f;
}

ArrayGeometry geometry_from(const Config& cfg, ArrayGeometry base) {
  ArrayGeometry g = base;
  g.mic_count = cfg.get_size("array.mics", g.mic_count);
  g.spacing = cfg.get_double("array.spacing", g.spacing);
  g.speed_of_sound = cfg.get_double("array.speed_of_sound", g.speed_of_sound);
  g.sample_rate = static_cast<int>(cfg.get_size("array.sample_rate", static_cast<std::size_t>(g.sample_rate)));
  anchored(cfg, [&] { g.validate(); });
  return g;
}

PsoParams pso_from(const Config& cfg, std::size_t taps, PsoParams base) {
  PsoParams p = std::move(base);
  p.swarm_size = cfg.get_size("pso.swarm", p.swarm_size);
  p.iterations = cfg.get_size("pso.iterations", p.iterations);
  p.inertia = cfg.get_double("pso.inertia", p.inertia);
  p.c1 = cfg.get_double("pso.c1", p.c1);
  p.c2 = cfg.get_double("pso.c2", p.c2);
  p.bounds = cfg.get_double("pso.bounds", p.bounds);
  p.threads = cfg.get_size("pso.threads", p.threads);
  anchored(cfg, [&] { p.validate(taps); });
  return p;
}

JayaParams jaya_from(const Config& cfg, std::size_t taps, JayaParams base) {
  JayaParams p = std::move(base);
  p.population = cfg.get_size("jaya.population", p.population);
  p.iterations = cfg.get_size("jaya.iterations", p.iterations);
  p.bounds = cfg.get_double("jaya.bounds", p.bounds);
  p.threads = cfg.get_size("jaya.threads", p.threads);
  anchored(cfg, [&] { p.validate(taps); });
  return p;
}

SaParams sa_from(const Config& cfg, std::size_t taps, SaParams base) {
  SaParams p = std::move(base);
  if (auto t0 = cfg.get_optional_double("sa.t0")) p.t0 = t0;
  p.alpha = cfg.get_double("sa.alpha", p.alpha);
  p.steps_per_temp = cfg.get_size("sa.steps_per_temp", p.steps_per_temp);
  if (auto mt = cfg.get_optional_double("sa.min_temp")) p.min_temp = mt;
  p.perturb_scale = cfg.get_double("sa.perturb_scale", p.perturb_scale);
  anchored(cfg, [&] { p.validate(taps); });
  return p;
}

}  // namespace anc
