// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include "anc/audio_io.hpp"
#include "anc/beamforming.hpp"

namespace anc {

enum class CleanKind {
  MultitoneAm,  // 3-5 speech-band tones under a slow AM envelope
  White,        // white Gaussian; the measurement noise of a system-ID run
  WavFile,
};

enum class NoiseKind {
  White,
  FilteredWhite,  // first-order AR, pole at 0.9
};

inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// Describes a two-microphone recording: a speech mic (primary) that hears
/// clean + channel * noise, and a noise-facing mic (reference) that hears the
/// noise directly.
struct ScenarioSpec {
  double duration = 10.0;  // seconds
  int sample_rate = 48000;
  CleanKind clean_kind = CleanKind::MultitoneAm;
  std::filesystem::path clean_path;  // used when clean_kind == WavFile
  NoiseKind noise_kind = NoiseKind::White;
  std::size_t channel_taps = 16;
  double target_snr_in = 5.0;  // dB; kNoNoise disables the noise entirely
  std::uint64_t seed = 1;
  double clean_rms = 0.1;  // synthetic clean sources only
  double leakage = 0.0;    // gain of clean bleeding into the reference mic

  void validate() const;
};

struct Scenario {
  AudioClip clean;
  AudioClip reference;
  AudioClip primary;
  std::vector<double> channel;
  double snr_in = 0.0;

  std::size_t frames() const { return primary.frames(); }
};

/// Causal FIR: out[n] = sum_k coeffs[k] * input[n - k], zero history.
std::vector<double> fir_channel(std::span<const double> input, std::span<const double> coeffs);

/// Random-sign taps with |h_k| proportional to 0.7^k, scaled to unit energy.
std::vector<double> make_channel(std::size_t taps, std::uint64_t seed);

Scenario synth_scenario(const ScenarioSpec& spec);

/// The +5 dB operating point used by the SNR and quality experiments.
ScenarioSpec reference_scenario_spec(std::uint64_t seed = 1);

/// Low-measurement-noise scenario for convergence experiments.
ScenarioSpec system_id_scenario_spec(std::uint64_t seed);

/// Plane-wave recording on a uniform linear array.
///
/// Mic m sits at m * spacing along the array axis. A far-field source at
/// `angle` (radians from broadside) reaches mic m at s(t + m * spacing *
/// sin(angle) / c), so positive angles reach higher-indexed mics first and
/// steering_delays() re-aligns them.
struct ArrayScenarioSpec {
  ArrayGeometry geometry;
  double duration = 1.0;
  bool source_present = true;
  double source_angle = 0.0;
  double source_rms = 0.1;
  double sensor_snr_db = 0.0;  // per-mic source-to-sensor-noise; kNoNoise disables
  double interferer_angle = 0.0;
  double interferer_rms = 0.0;  // 0 disables the directional interferer
  std::uint64_t seed = 1;
};

struct ArrayScenario {
  std::vector<std::vector<double>> mics;
  std::vector<double> source;  // as observed at mic 0
  int sample_rate = 48000;
};

ArrayScenario synth_array(const ArrayScenarioSpec& spec);

}  // namespace anc
