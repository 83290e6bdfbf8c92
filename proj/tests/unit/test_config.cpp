// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include <string>

#include "anc/config.hpp"
#include "doctest.h"

using namespace anc;

TEST_CASE("keys, sections and comments") {
  const auto cfg = Config::parse(
      "# demo\n"
      "scenario.duration = 2.5\n"
      "\n"
      "[filter]\n"
      "mu = 0.02   # step\n"
      "taps=32\n");
  CHECK(cfg.get_double("scenario.duration", 0) == 2.5);
  CHECK(cfg.get_double("filter.mu", 0) == 0.02);
  CHECK(cfg.get_size("filter.taps", 0) == 32);
  CHECK(cfg.line_of("filter.taps") == 6);
  CHECK(cfg.get_size("filter.block_size", 256) == 256);
}

TEST_CASE("malformed lines name their line") {
  try {
    Config::parse("a.b = 1\nnot a pair\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(Config::parse("x = 1\nx = 2\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[filter\n"), ConfigError);
}

TEST_CASE("bad values and unknown keys") {
  const auto cfg = Config::parse("filter.mu = fast\nfilter.colour = red\n");
  try {
    cfg.get_double("filter.mu", 0.0);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "filter.mu");
    CHECK(e.line() == 1);
  }
  try {
    Config::parse("filter.colour = red\n").reject_unknown(known_config_keys());
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "filter.colour");
  }
}

TEST_CASE("validation errors point at the offending line") {
  const auto cfg = Config::parse("[scenario]\nseed = 3\nduration = 0\n");
  try {
    scenario_from(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "scenario.duration");
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3: scenario.duration") == 0);
  }
}

TEST_CASE("typed readers apply values") {
  const auto cfg = Config::parse(
      "scenario.clean = white\nscenario.noise = filtered\nscenario.snr_in = inf\n"
      "filter.rls_lambda = 1\narray.mics = 8\npso.swarm = 12\nsa.t0 = 0.5\n");
  const auto s = scenario_from(cfg);
  CHECK(s.clean_kind == CleanKind::White);
  CHECK(s.noise_kind == NoiseKind::FilteredWhite);
  CHECK(s.target_snr_in == kNoNoise);
  CHECK(filter_from(cfg, FilterKind::Rls).rls_lambda == 1.0);
  CHECK(geometry_from(cfg).mic_count == 8);
  CHECK(pso_from(cfg, 16).swarm_size == 12);
  CHECK(sa_from(cfg, 16).t0 == 0.5);
  CHECK_THROWS_AS(scenario_from(Config::parse("scenario.clean = speech\n")), ConfigError);
}
