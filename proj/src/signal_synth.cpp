// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/signal_synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "anc/errors.hpp"
#include "anc/random.hpp"

namespace anc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Substream ids; keep them stable so scenarios reproduce across releases.
enum Stream : std::uint64_t { kCleanStream = 0, kNoiseStream = 1, kChannelStream = 2, kArrayStream = 3 };

double mean_square(std::span<const double> v) {
  if (v.empty()) return 0.0;
  double acc = 0.0;
  for (double s : v) acc += s * s;
  return acc / static_cast<double>(v.size());
}

void scale_to_rms(std::vector<double>& v, double rms) {
  const double ms = mean_square(v);
  if (ms <= 0.0) return;
  const double g = rms / std::sqrt(ms);
  for (auto& s : v) s *= g;
}

struct Tone {
  double freq;
  double phase;
  double amp;
};

std::vector<double> multitone_am(std::size_t n, int rate, double rms, Rng& rng) {
  const double hi = std::min(3400.0, 0.45 * rate);
  const double lo = std::min(200.0, 0.5 * hi);
  std::vector<Tone> tones(3 + rng.index(3));
  for (auto& t : tones) {
    t.freq = rng.uniform(lo, hi);
    t.phase = rng.uniform(0.0, kTwoPi);
    t.amp = rng.uniform(0.5, 1.0);
  }
  const double am_freq = rng.uniform(2.0, 8.0);
  const double am_phase = rng.uniform(0.0, kTwoPi);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    double v = 0.0;
    for (const auto& tone : tones) v += tone.amp * std::sin(kTwoPi * tone.freq * t + tone.phase);
    const double env = 0.5 * (1.0 + 0.9 * std::sin(kTwoPi * am_freq * t + am_phase));
    out[i] = env * v;
  }
  scale_to_rms(out, rms);
  return out;
}

std::vector<double> white(std::size_t n, Rng& rng) {
  std::vector<double> out(n);
  for (auto& s : out) s = rng.normal();
  return out;
}

std::vector<double> load_clean(const ScenarioSpec& spec, std::size_t n) {
  AudioClip clip;
  try {
    clip = read_wav(spec.clean_path);
  } catch (const FormatError& e) {
    throw IoError("cannot read clean source " + spec.clean_path.string() + ": " + e.what());
  } catch (const UnsupportedFormatError& e) {
    throw IoError("cannot read clean source " + spec.clean_path.string() + ": " + e.what());
  }
  if (clip.sample_rate != spec.sample_rate) {
    throw ArgumentError("clean source rate " + std::to_string(clip.sample_rate) +
                        " Hz differs from scenario rate " + std::to_string(spec.sample_rate) + " Hz");
  }
  std::vector<double> out = clip.mono();
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace

void ScenarioSpec::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw ConfigError("scenario.duration", 0, "must be a positive number of seconds");
  }
  if (sample_rate <= 0) throw ConfigError("scenario.sample_rate", 0, "must be positive");
  if (channel_taps < 1) throw ConfigError("scenario.channel_taps", 0, "must be at least 1");
  if (std::isnan(target_snr_in) || target_snr_in == -kNoNoise) {
    throw ConfigError("scenario.snr_in", 0, "must be a finite number of dB or inf");
  }
  if (!(clean_rms > 0.0)) throw ConfigError("scenario.clean_rms", 0, "must be positive");
  if (!std::isfinite(leakage)) throw ConfigError("scenario.leakage", 0, "must be finite");
  if (clean_kind == CleanKind::WavFile && clean_path.empty()) {
    throw ConfigError("scenario.clean_path", 0, "required when scenario.clean = wav");
  }
  const double frames = std::round(duration * sample_rate);
  if (frames < 1.0) throw ConfigError("scenario.duration", 0, "shorter than one sample");
}

std::vector<double> fir_channel(std::span<const double> input, std::span<const double> coeffs) {
  if (coeffs.empty()) throw ArgumentError("FIR coefficients must not be empty");
  std::vector<double> out(input.size(), 0.0);
  for (std::size_t n = 0; n < input.size(); ++n) {
    const std::size_t kmax = std::min(coeffs.size(), n + 1);
    double acc = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) acc += coeffs[k] * input[n - k];
    out[n] = acc;
  }
  return out;
}

std::vector<double> make_channel(std::size_t taps, std::uint64_t seed) {
  if (taps < 1) throw ArgumentError("channel needs at least one tap");
  Rng rng(seed);
  std::vector<double> h(taps);
  double mag = 1.0;
  for (auto& c : h) {
    c = rng.sign() * mag;
    mag *= 0.7;
  }
  const double energy = std::inner_product(h.begin(), h.end(), h.begin(), 0.0);
  for (auto& c : h) c /= std::sqrt(energy);
  return h;
}

Scenario synth_scenario(const ScenarioSpec& spec) {
  spec.validate();
  std::size_t n = static_cast<std::size_t>(std::round(spec.duration * spec.sample_rate));

  std::vector<double> clean;
  switch (spec.clean_kind) {
    case CleanKind::MultitoneAm: {
      Rng rng(derive_seed(spec.seed, kCleanStream));
      clean = multitone_am(n, spec.sample_rate, spec.clean_rms, rng);
      break;
    }
    case CleanKind::White: {
      Rng rng(derive_seed(spec.seed, kCleanStream));
      clean = white(n, rng);
      scale_to_rms(clean, spec.clean_rms);
      break;
    }
    case CleanKind::WavFile:
      clean = load_clean(spec, n);
      n = clean.size();
      if (n == 0) throw IoError("clean source " + spec.clean_path.string() + " is empty");
      break;
  }

  Scenario sc;
  sc.channel = make_channel(spec.channel_taps, derive_seed(spec.seed, kChannelStream));

  std::vector<double> noise(n, 0.0);
  if (spec.target_snr_in != kNoNoise) {
    Rng rng(derive_seed(spec.seed, kNoiseStream));
    noise = white(n, rng);
    if (spec.noise_kind == NoiseKind::FilteredWhite) {
      double prev = 0.0;
      for (auto& s : noise) {
        s += 0.9 * prev;
        prev = s;
      }
    }
    const double p_clean = mean_square(clean);
    const double p_raw = mean_square(fir_channel(noise, sc.channel));
    if (p_clean <= 0.0) throw ArgumentError("clean source is silent; input SNR is undefined");
    const double gain = std::sqrt(p_clean / (p_raw * std::pow(10.0, spec.target_snr_in / 10.0)));
    for (auto& s : noise) s *= gain;
  }

  const std::vector<double> noise_at_primary = fir_channel(noise, sc.channel);
  std::vector<double> primary(n);
  std::vector<double> reference(n);
  for (std::size_t i = 0; i < n; ++i) {
    primary[i] = clean[i] + noise_at_primary[i];
    reference[i] = noise[i] + spec.leakage * clean[i];
  }

  const double p_noise = mean_square(noise_at_primary);
  sc.snr_in = p_noise > 0.0 ? 10.0 * std::log10(mean_square(clean) / p_noise) : kNoNoise;
  sc.clean = AudioClip(std::move(clean), spec.sample_rate);
  sc.reference = AudioClip(std::move(reference), spec.sample_rate);
  sc.primary = AudioClip(std::move(primary), spec.sample_rate);
  return sc;
}

ScenarioSpec reference_scenario_spec(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.seed = seed;
  return spec;
}

ScenarioSpec system_id_scenario_spec(std::uint64_t seed) {
  ScenarioSpec spec;
  spec.duration = 2.0;
  spec.clean_kind = CleanKind::White;
  spec.clean_rms = 0.05;
  spec.target_snr_in = -10.0;
  spec.seed = seed;
  return spec;
}

ArrayScenario synth_array(const ArrayScenarioSpec& spec) {
  spec.geometry.validate();
  if (!(spec.duration > 0.0)) throw ArgumentError("array scenario duration must be positive");
  const int rate = spec.geometry.sample_rate;
  const auto n = static_cast<std::size_t>(std::round(spec.duration * rate));
  const std::size_t mics = spec.geometry.mic_count;
  Rng rng(derive_seed(spec.seed, kArrayStream));

  // Analytic sources so that fractional arrival offsets are exact.
  std::vector<Tone> source(3);
  for (auto& t : source) {
    t.freq = rng.uniform(300.0, 1500.0);
    t.phase = rng.uniform(0.0, kTwoPi);
    t.amp = 1.0;
  }
  std::vector<Tone> interferer(64);
  for (auto& t : interferer) {
    t.freq = rng.uniform(200.0, 2000.0);
    t.phase = rng.uniform(0.0, kTwoPi);
    t.amp = 1.0;
  }
  const auto eval = [](const std::vector<Tone>& tones, double t) {
    double v = 0.0;
    for (const auto& tone : tones) v += tone.amp * std::sin(kTwoPi * tone.freq * t + tone.phase);
    return v;
  };
  // Mean-square of a sum of unit sinusoids is count / 2.
  const double source_gain = spec.source_rms / std::sqrt(source.size() / 2.0);
  const double interferer_gain = spec.interferer_rms / std::sqrt(interferer.size() / 2.0);

  const double c = spec.geometry.speed_of_sound;
  const double src_step = spec.geometry.spacing * std::sin(spec.source_angle) / c;
  const double int_step = spec.geometry.spacing * std::sin(spec.interferer_angle) / c;

  ArrayScenario out;
  out.sample_rate = rate;
  out.mics.assign(mics, std::vector<double>(n, 0.0));
  out.source.assign(n, 0.0);
  // Sensor noise is referenced to the nominal source level even when the
  // source itself is switched off.
  const double noise_std =
      spec.sensor_snr_db == kNoNoise ? 0.0 : spec.source_rms / std::pow(10.0, spec.sensor_snr_db / 20.0);

  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    if (spec.source_present) out.source[i] = source_gain * eval(source, t);
    for (std::size_t m = 0; m < mics; ++m) {
      double v = 0.0;
      if (spec.source_present) v += source_gain * eval(source, t + m * src_step);
      if (spec.interferer_rms > 0.0) v += interferer_gain * eval(interferer, t + m * int_step);
      out.mics[m][i] = v;
    }
  }
  if (noise_std > 0.0) {
    for (std::size_t m = 0; m < mics; ++m) {
      Rng noise_rng(derive_seed(spec.seed, kArrayStream + 1 + m));
      for (auto& s : out.mics[m]) s += noise_std * noise_rng.normal();
    }
  }
  return out;
}

}  // namespace anc
