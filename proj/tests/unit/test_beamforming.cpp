// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "anc/beamforming.hpp"
#include "anc/errors.hpp"
#include "anc/signal_synth.hpp"
#include "doctest.h"

using namespace anc;

namespace {

using Channels = std::vector<std::vector<double>>;

double power(const std::vector<double>& v) {
  double acc = 0.0;
  for (double s : v) acc += s * s;
  return acc / static_cast<double>(v.size());
}

std::vector<double> sine(std::size_t n, double freq, double amp = 1.0) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = amp * std::sin(2.0 * std::numbers::pi * freq * i / 48000.0);
  return v;
}

Channels noise_channels(std::size_t m, std::size_t n, double stddev, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> g(0.0, stddev);
  Channels c(m, std::vector<double>(n));
  for (auto& ch : c) {
    for (double& v : ch) v = g(gen);
  }
  return c;
}

SteeringDelays zeros(std::size_t m) { return SteeringDelays{std::vector<double>(m, 0.0)}; }

}  // namespace

TEST_CASE("steering delay examples") {
  ArrayGeometry g;
  g.mic_count = 4;
  for (double d : steering_delays(g, 0.0).delays) CHECK(d == 0.0);

  const auto endfire = steering_delays(g, std::numbers::pi / 2).delays;
  for (std::size_t m = 1; m < 4; ++m) CHECK(endfire[m] - endfire[m - 1] == doctest::Approx(6.997).epsilon(1e-3));

  g.mic_count = 2;
  g.spacing = 0.1;
  const auto d = steering_delays(g, std::numbers::pi / 6).delays;
  CHECK(d[0] == 0.0);
  CHECK(d[1] == doctest::Approx(0.1 * 0.5 / 343.0 * 48000.0));

  const auto neg = steering_delays(g, -std::numbers::pi / 6).delays;
  CHECK(*std::min_element(neg.begin(), neg.end()) == 0.0);
  CHECK(neg[0] == doctest::Approx(d[1]));
  CHECK_THROWS_AS(steering_delays(g, 2.0), ArgumentError);
}

TEST_CASE("geometry validation") {
  ArrayGeometry g;
  g.mic_count = 1;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  g = ArrayGeometry{};
  g.spacing = 0.0;
  CHECK_THROWS_AS(g.validate(), ConfigError);
}

TEST_CASE("fractional delay") {
  const std::vector<double> x{1, 2, 3, 4};
  CHECK(fractional_delay(x, 0.0) == x);
  CHECK(fractional_delay(x, 1.0) == std::vector<double>{0, 1, 2, 3});
  CHECK(fractional_delay(x, 0.5) == std::vector<double>{0.5, 1.5, 2.5, 3.5});
}

TEST_CASE("identical channels average to themselves") {
  const auto s = sine(1000, 440.0, 0.5);
  CHECK(delay_and_sum(Channels(4, s), zeros(4)) == s);
}

TEST_CASE("mismatched inputs are rejected") {
  Channels c{{1, 2, 3}, {1, 2}};
  CHECK_THROWS_AS(delay_and_sum(c, zeros(2)), ArgumentError);
  CHECK_THROWS_AS(delay_and_sum(Channels{{1, 2}, {1, 2}}, zeros(3)), ArgumentError);
}

TEST_CASE("averaging independent noise divides its variance by M") {
  const auto c = noise_channels(4, 100000, 1.0, 1);
  CHECK(std::abs(power(delay_and_sum(c, zeros(4))) - 0.25) <= 0.025);
}

TEST_CASE("coherent gain follows 10 log10 M") {
  for (std::size_t m : {2u, 4u, 8u}) {
    CAPTURE(m);
    const std::size_t n = 48000;
    const auto s = sine(n, 1000.0);
    const double noise_std = std::sqrt(power(s));  // 0 dB per channel
    auto c = noise_channels(m, n, noise_std, 10 + static_cast<unsigned>(m));
    for (auto& ch : c) {
      for (std::size_t i = 0; i < n; ++i) ch[i] += s[i];
    }
    const auto out = delay_and_sum(c, zeros(m));
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) residual[i] = out[i] - s[i];
    std::vector<double> in_noise(n);
    for (std::size_t i = 0; i < n; ++i) in_noise[i] = c[0][i] - s[i];
    const double gain = 10.0 * std::log10(power(in_noise) / power(residual));
    CHECK(std::abs(gain - 10.0 * std::log10(static_cast<double>(m))) <= 1.0);

    const auto blind = estimate_array_gain(c, zeros(m), out);
    CHECK(std::abs(blind.gain_db - 10.0 * std::log10(static_cast<double>(m))) <= 1.0);
  }
}

TEST_CASE("steering aligns a plane wave") {
  ArrayScenarioSpec spec;
  spec.geometry.mic_count = 4;
  spec.geometry.spacing = 0.04;
  spec.source_angle = 0.6;
  spec.sensor_snr_db = kNoNoise;
  const auto arr = synth_array(spec);
  const auto delays = steering_delays(spec.geometry, spec.source_angle);
  std::vector<std::vector<double>> aligned;
  for (std::size_t m = 0; m < 4; ++m) aligned.push_back(fractional_delay(arr.mics[m], delays.delays[m]));
  for (std::size_t m = 1; m < 4; ++m) {
    int best_lag = 0;
    double best = -1e300;
    for (int lag = -20; lag <= 20; ++lag) {
      double acc = 0.0;
      for (std::size_t i = 100; i + 100 < aligned[0].size(); ++i) {
        acc += aligned[0][i] * aligned[m][static_cast<std::size_t>(static_cast<int>(i) + lag)];
      }
      if (acc > best) {
        best = acc;
        best_lag = lag;
      }
    }
    CHECK(best_lag == 0);
  }
}

TEST_CASE("delay-and-sum is linear") {
  const auto x = noise_channels(3, 2000, 1.0, 21);
  const auto y = noise_channels(3, 2000, 1.0, 22);
  const SteeringDelays d{{0.0, 1.3, 2.6}};
  Channels mix(3, std::vector<double>(2000));
  for (std::size_t m = 0; m < 3; ++m) {
    for (std::size_t i = 0; i < 2000; ++i) mix[m][i] = 0.3 * x[m][i] - 2.0 * y[m][i];
  }
  const auto lhs = delay_and_sum(mix, d);
  const auto ox = delay_and_sum(x, d);
  const auto oy = delay_and_sum(y, d);
  for (std::size_t i = 0; i < 2000; ++i) CHECK(lhs[i] == doctest::Approx(0.3 * ox[i] - 2.0 * oy[i]).epsilon(1e-12));
}

TEST_CASE("max_spacing") {
  CHECK(max_spacing(4000.0, 343.0) == doctest::Approx(0.042875));
  CHECK(max_spacing(171.5, 343.0) == doctest::Approx(1.0));
  CHECK(max_spacing(2000.0) == doctest::Approx(2.0 * max_spacing(4000.0)));
  CHECK_THROWS_AS(max_spacing(0.0), ArgumentError);
}

TEST_CASE("adaptive stage leaves a noise-free steered source alone") {
  // Steering delays of whole samples align the channels exactly, so the
  // blocking differences carry nothing of the source.
  ArrayScenarioSpec spec;
  spec.geometry.mic_count = 4;
  spec.sensor_snr_db = kNoNoise;
  FilterConfig cfg;
  cfg.num_taps = 16;
  cfg.mu = 0.1;
  for (double angle : {0.0, std::asin(2.0 * 343.0 / 48000.0 / spec.geometry.spacing)}) {
    CAPTURE(angle);
    spec.source_angle = angle;
    const auto arr = synth_array(spec);
    const auto das = delay_and_sum(arr.mics, steering_delays(spec.geometry, angle));
    const auto fas = filter_and_sum_adaptive(arr.mics, spec.geometry, angle, cfg);
    REQUIRE(fas.size() == das.size());
    std::vector<double> diff(das.size());
    for (std::size_t i = 0; i < das.size(); ++i) diff[i] = fas[i] - das[i];
    CHECK(std::sqrt(power(diff)) < 1e-3);
  }
}

TEST_CASE("adaptive stage suppresses an off-axis interferer") {
  ArrayScenarioSpec spec;
  spec.geometry.mic_count = 4;
  spec.source_present = false;
  spec.interferer_angle = 0.9;
  spec.interferer_rms = 0.3;
  spec.sensor_snr_db = kNoNoise;
  spec.seed = 5;
  const auto arr = synth_array(spec);
  FilterConfig cfg;
  cfg.num_taps = 32;
  cfg.mu = 0.1;
  const double das = power(delay_and_sum(arr.mics, steering_delays(spec.geometry, 0.0)));
  const double fas = power(filter_and_sum_adaptive(arr.mics, spec.geometry, 0.0, cfg));
  MESSAGE("interferer power: delay-and-sum " << das << ", adaptive " << fas);
  CHECK(fas < 0.5 * das);
}

TEST_CASE("two identical channels give a zero blocking reference") {
  ArrayGeometry g;
  const auto s = sine(2000, 700.0, 0.4);
  FilterConfig cfg;
  cfg.num_taps = 8;
  CHECK(filter_and_sum_adaptive(Channels{s, s}, g, 0.0, cfg) == s);
}
