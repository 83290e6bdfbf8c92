// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "anc/adaptive_filters.hpp"
#include "anc/beamforming.hpp"
#include "anc/errors.hpp"
#include "anc/metaheuristics.hpp"
#include "anc/signal_synth.hpp"

namespace anc {

/// Flat `key = value` settings. A `[section]` line prefixes the keys that
/// follow it, so `[filter]` then `mu = 0.01` is the same as `filter.mu = 0.01`.
/// `#` starts a comment.
class Config {
 public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  /// Override from the command line; has no line number.
  void set(const std::string& key, const std::string& value);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::size_t line_of(const std::string& key) const;

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::optional<double> get_optional_double(const std::string& key) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;

  /// Throws on the first key not in `known`.
  void reject_unknown(const std::set<std::string>& known) const;

  /// Re-throws a validation error with the line of the key that caused it.
  [[noreturn]] void rethrow_anchored(const ConfigError& err) const;

  /// Sorted key/value snapshot, for manifests.
  std::map<std::string, std::string> snapshot() const;

 private:
  struct Entry {
    std::string value;
    std::size_t line = 0;
  };
  const Entry* find(const std::string& key) const;

  std::map<std::string, Entry> entries_;
};

/// Every key the tools understand.
const std::set<std::string>& known_config_keys();

// Each reader starts from `base`, applies the keys that are present and
// validates the result, anchoring failures to the offending line.
ScenarioSpec scenario_from(const Config& cfg, ScenarioSpec base = {});
FilterConfig filter_from(const Config& cfg, FilterKind kind, FilterConfig base = {});
ArrayGeometry geometry_from(const Config& cfg, ArrayGeometry base = {});
PsoParams pso_from(const Config& cfg, std::size_t taps, PsoParams base = {});
JayaParams jaya_from(const Config& cfg, std::size_t taps, JayaParams base = {});
SaParams sa_from(const Config& cfg, std::size_t taps, SaParams base = {});

}  // namespace anc
