// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/beamforming.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "anc/errors.hpp"

namespace anc {

void ArrayGeometry::validate() const {
  if (mic_count < 2) throw ConfigError("array.mics", 0, "an array needs at least 2 microphones");
  if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ConfigError("array.spacing", 0, "must be positive");
  if (!(speed_of_sound > 0.0)) throw ConfigError("array.speed_of_sound", 0, "must be positive");
  if (sample_rate <= 0) throw ConfigError("array.sample_rate", 0, "must be positive");
}

SteeringDelays steering_delays(const ArrayGeometry& geom, double angle) {
  geom.validate();
  if (!(std::abs(angle) <= std::numbers::pi / 2)) {
    throw ArgumentError("steering angle must lie within [-pi/2, pi/2]");
  }
  const double step = geom.spacing * std::sin(angle) / geom.speed_of_sound * geom.sample_rate;
  SteeringDelays out;
  out.delays.resize(geom.mic_count);
  for (std::size_t m = 0; m < geom.mic_count; ++m) out.delays[m] = static_cast<double>(m) * step;
  const double lo = *std::min_element(out.delays.begin(), out.delays.end());
  for (auto& d : out.delays) d -= lo;
  return out;
}

std::vector<double> fractional_delay(std::span<const double> channel, double delay) {
  const auto n = static_cast<std::ptrdiff_t>(channel.size());
  std::vector<double> out(channel.size(), 0.0);
  const double whole = std::floor(delay);
  const double frac = delay - whole;
  const auto shift = static_cast<std::ptrdiff_t>(whole);
  const auto at = [&](std::ptrdiff_t i) { return (i >= 0 && i < n) ? channel[static_cast<std::size_t>(i)] : 0.0; };
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    // Reads the input at time i - delay.
    const std::ptrdiff_t j = i - shift;
    out[static_cast<std::size_t>(i)] = (1.0 - frac) * at(j) + frac * at(j - 1);
  }
  return out;
}

namespace {

void check_channels(const std::vector<std::vector<double>>& channels, std::size_t expected) {
  if (channels.empty()) throw ArgumentError("no channels given");
  if (channels.size() != expected) {
    throw ArgumentError("got " + std::to_string(channels.size()) + " channels for " + std::to_string(expected) +
                        " steering delays");
  }
  for (const auto& ch : channels) {
    if (ch.size() != channels.front().size()) throw ArgumentError("channels differ in length");
  }
}

std::vector<std::vector<double>> align(const std::vector<std::vector<double>>& channels,
                                       const SteeringDelays& delays) {
  std::vector<std::vector<double>> out;
  out.reserve(channels.size());
  for (std::size_t m = 0; m < channels.size(); ++m) out.push_back(fractional_delay(channels[m], delays.delays[m]));
  return out;
}

std::vector<double> average(const std::vector<std::vector<double>>& aligned) {
  std::vector<double> out(aligned.front().size(), 0.0);
  for (const auto& ch : aligned) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += ch[i];
  }
  const double inv = 1.0 / static_cast<double>(aligned.size());
  for (auto& s : out) s *= inv;
  return out;
}

double dot_mean(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return a.empty() ? 0.0 : acc / static_cast<double>(a.size());
}

}  // namespace

std::vector<double> delay_and_sum(const std::vector<std::vector<double>>& channels, const SteeringDelays& delays) {
  check_channels(channels, delays.delays.size());
  return average(align(channels, delays));
}

double max_spacing(double f_max, double speed_of_sound) {
  if (!(f_max > 0.0)) throw ArgumentError("f_max must be positive");
  return speed_of_sound / (2.0 * f_max);
}

std::vector<double> filter_and_sum_adaptive(const std::vector<std::vector<double>>& channels,
                                            const ArrayGeometry& geom, double angle, const FilterConfig& cfg) {
  if (channels.size() < 2) throw ArgumentError("filter-and-sum needs at least 2 channels");
  const SteeringDelays delays = steering_delays(geom, angle);
  check_channels(channels, delays.delays.size());
  const auto aligned = align(channels, delays);
  const std::vector<double> fixed = average(aligned);

  const std::size_t refs = aligned.size() - 1;
  MultiReferenceNlms canceller(refs, cfg);
  std::vector<double> out(fixed.size());
  std::vector<double> blocked(refs);
  for (std::size_t i = 0; i < fixed.size(); ++i) {
    for (std::size_t r = 0; r < refs; ++r) blocked[r] = aligned[r][i] - aligned[r + 1][i];
    out[i] = canceller.step(blocked, fixed[i]);
  }
  return out;
}

ArrayGainEstimate estimate_array_gain(const std::vector<std::vector<double>>& channels, const SteeringDelays& delays,
                                      std::span<const double> output) {
  check_channels(channels, delays.delays.size());
  if (channels.size() < 2) throw ArgumentError("gain estimate needs at least 2 channels");
  if (output.size() != channels.front().size()) throw ArgumentError("output length differs from channels");
  const auto aligned = align(channels, delays);
  const std::size_t m = aligned.size();

  double cross = 0.0;
  double power = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < m; ++i) {
    power += dot_mean(aligned[i], aligned[i]);
    for (std::size_t j = i + 1; j < m; ++j) {
      cross += dot_mean(aligned[i], aligned[j]);
      ++pairs;
    }
  }
  ArrayGainEstimate g;
  g.source_power = cross / static_cast<double>(pairs);
  g.input_noise_power = power / static_cast<double>(m) - g.source_power;
  g.output_noise_power = dot_mean(output, output) - g.source_power;
  const auto db = [](double num, double den) {
    if (den <= 0.0 || num <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    return 10.0 * std::log10(num / den);
  };
  g.snr_in_db = db(g.source_power, g.input_noise_power);
  g.snr_out_db = db(g.source_power, g.output_noise_power);
  g.gain_db = db(g.input_noise_power, g.output_noise_power);
  return g;
}

}  // namespace anc
