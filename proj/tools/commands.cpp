// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>

#include "anc/compare.hpp"
#include "anc/config.hpp"
#include "anc/metrics.hpp"
#include "anc/pipeline.hpp"
#include "report.hpp"

namespace anc::cli {

namespace {

namespace fs = std::filesystem;
using Params = std::map<std::string, std::string>;

Config load_config(const GlobalOptions& opts) {
  Config cfg = opts.config ? Config::load(*opts.config) : Config{};
  cfg.reject_unknown(known_config_keys());
  return cfg;
}

std::string clean_name(CleanKind k) {
  switch (k) {
    case CleanKind::MultitoneAm: return "multitone";
    case CleanKind::White: return "white";
    case CleanKind::WavFile: return "wav";
  }
  return "?";
}

Params describe(const ScenarioSpec& s) {
  Params p{{"scenario.duration", num(s.duration)},
           {"scenario.sample_rate", std::to_string(s.sample_rate)},
           {"scenario.clean", clean_name(s.clean_kind)},
           {"scenario.noise", s.noise_kind == NoiseKind::White ? "white" : "filtered"},
           {"scenario.channel_taps", num(s.channel_taps)},
           {"scenario.snr_in", num(s.target_snr_in)},
           {"scenario.seed", std::to_string(s.seed)},
           {"scenario.clean_rms", num(s.clean_rms)},
           {"scenario.leakage", num(s.leakage)}};
  if (s.clean_kind == CleanKind::WavFile) p["scenario.clean_path"] = s.clean_path.string();
  return p;
}

Params describe(const FilterConfig& f, FilterKind kind) {
  Params p{{"filter.taps", num(f.num_taps)}, {"filter.block_size", num(f.block_size)}};
  if (kind != FilterKind::Rls) p["filter.mu"] = num(f.mu);
  if (kind == FilterKind::Nlms) p["filter.nlms_epsilon"] = num(f.nlms_epsilon);
  if (kind == FilterKind::Rls) {
    p["filter.rls_lambda"] = num(f.rls_lambda);
    p["filter.rls_delta"] = num(f.rls_delta);
  }
  return p;
}

Params describe(const ArrayGeometry& g) {
  return {{"array.mics", num(g.mic_count)},
          {"array.spacing", num(g.spacing)},
          {"array.speed_of_sound", num(g.speed_of_sound)},
          {"array.sample_rate", std::to_string(g.sample_rate)}};
}

Params describe_optimizer(Algorithm a, const CompareSettings& s) {
  Params p{{"taps", num(s.meta_taps)}, {"window", num(s.meta_window)}};
  switch (a) {
    case Algorithm::Pso:
      p["swarm"] = num(s.pso.swarm_size);
      p["iterations"] = num(s.pso.iterations);
      p["inertia"] = num(s.pso.inertia);
      p["c1"] = num(s.pso.c1);
      p["c2"] = num(s.pso.c2);
      p["bounds"] = num(s.pso.bounds);
      break;
    case Algorithm::Jaya:
      p["population"] = num(s.jaya.population);
      p["iterations"] = num(s.jaya.iterations);
      p["bounds"] = num(s.jaya.bounds);
      break;
    case Algorithm::Sa:
      p["t0"] = s.sa.t0 ? num(*s.sa.t0) : "initial_mse";
      p["alpha"] = num(s.sa.alpha);
      p["steps_per_temp"] = num(s.sa.steps_per_temp);
      p["min_temp"] = s.sa.min_temp ? num(*s.sa.min_temp) : "t0*1e-4";
      p["perturb_scale"] = num(s.sa.perturb_scale);
      break;
    default:
      break;
  }
  return p;
}

Params prefixed(const std::string& prefix, const Params& p) {
  Params out;
  for (const auto& [k, v] : p) out[prefix + k] = v;
  return out;
}

Params strip_section(const Params& p) {
  Params out;
  for (const auto& [k, v] : p) out[k.substr(k.find('.') + 1)] = v;
  return out;
}

AudioClip read_mono(const fs::path& path) {
  AudioClip clip = read_wav(path);
  if (clip.channel_count() != 1) throw IoError(path.string() + ": expected a mono WAV");
  return clip;
}

Scenario load_scenario(const fs::path& dir) {
  Scenario sc;
  sc.clean = read_mono(dir / "clean.wav");
  sc.reference = read_mono(dir / "reference.wav");
  sc.primary = read_mono(dir / "primary.wav");
  if (sc.clean.frames() != sc.primary.frames() || sc.reference.frames() != sc.primary.frames()) {
    throw IoError(dir.string() + ": clean, reference and primary differ in length");
  }
  if (sc.clean.sample_rate != sc.primary.sample_rate || sc.reference.sample_rate != sc.primary.sample_rate) {
    throw IoError(dir.string() + ": clean, reference and primary differ in sample rate");
  }
  sc.snr_in = snr_db(sc.clean.mono(), sc.primary.mono());
  return sc;
}

std::string scenario_id(const fs::path& dir) {
  const auto name = fs::weakly_canonical(dir).filename().string();
  return name.empty() ? "scenario" : name;
}

std::string scenario_text(const Params& p) {
  std::string out;
  for (const auto& [k, v] : p) out += k + " = " + v + "\n";
  return out;
}

struct CurveSettings {
  std::size_t block;
  std::size_t window;
  double margin_db;
};

CurveSettings curve_settings(const Config& cfg) {
  CurveSettings c{cfg.get_size("compare.curve_block", 256), cfg.get_size("compare.curve_window", 16),
                  cfg.get_double("compare.margin_db", 3.0)};
  if (c.block < 1) throw ConfigError("compare.curve_block", cfg.line_of("compare.curve_block"), "must be at least 1");
  if (c.window < 1) {
    throw ConfigError("compare.curve_window", cfg.line_of("compare.curve_window"), "must be at least 1");
  }
  if (!(c.margin_db > 0.0)) throw ConfigError("compare.margin_db", cfg.line_of("compare.margin_db"), "must be positive");
  return c;
}

double warmup_from(const Config& cfg) {
  const double w = cfg.get_double("eval.warmup", 0.25);
  if (!(w >= 0.0 && w < 1.0)) throw ConfigError("eval.warmup", cfg.line_of("eval.warmup"), "must be in [0, 1)");
  return w;
}

std::string opt_index(const std::optional<std::size_t>& v) { return v ? num(*v) : "none"; }

}  // namespace

std::vector<fs::path> find_mic_files(const fs::path& dir) {
  std::vector<fs::path> out;
  for (std::size_t m = 0;; ++m) {
    const auto p = dir / ("mic_" + std::to_string(m) + ".wav");
    if (!fs::exists(p)) break;
    out.push_back(p);
  }
  if (out.empty()) throw IoError("no mic_N.wav files in " + dir.string());
  return out;
}

void cmd_synth(const GlobalOptions& opts, bool array) {
  const Config cfg = load_config(opts);
  OutputDir out(opts.out_dir);
  ManifestInfo info{opts.command_line, cfg.snapshot(), {}, {}};

  if (!array) {
    ScenarioSpec base;
    if (opts.seed) base.seed = *opts.seed;
    ScenarioSpec spec = scenario_from(cfg, base);
    if (opts.seed) spec.seed = *opts.seed;
    const Scenario sc = synth_scenario(spec);
    out.write_wav("clean.wav", sc.clean);
    out.write_wav("reference.wav", sc.reference);
    out.write_wav("primary.wav", sc.primary);
    Params p = describe(spec);
    out.write_text("scenario.txt", scenario_text(p));
    Csv channel({"tap", "coefficient"});
    for (std::size_t k = 0; k < sc.channel.size(); ++k) channel.row({num(k), num(sc.channel[k])});
    out.write("channel.csv", channel);
    info.effective = p;
    info.seeds["scenario"] = spec.seed;
    std::cout << "synthesized " << sc.frames() << " samples at " << sc.primary.sample_rate
              << " Hz, snr_in " << num(sc.snr_in) << " dB\n";
  } else {
    ArrayScenarioSpec spec;
    spec.geometry = geometry_from(cfg);
    spec.duration = cfg.get_double("array.duration", spec.duration);
    spec.source_angle = cfg.get_double("array.angle", spec.source_angle);
    spec.source_rms = cfg.get_double("array.source_rms", spec.source_rms);
    spec.sensor_snr_db = cfg.get_double("array.sensor_snr", spec.sensor_snr_db);
    spec.interferer_angle = cfg.get_double("array.interferer_angle", spec.interferer_angle);
    spec.interferer_rms = cfg.get_double("array.interferer_rms", spec.interferer_rms);
    spec.seed = opts.seed.value_or(cfg.get_u64("scenario.seed", spec.seed));
    if (!(spec.duration > 0.0)) throw ConfigError("array.duration", cfg.line_of("array.duration"), "must be positive");
    const auto arr = synth_array(spec);
    for (std::size_t m = 0; m < arr.mics.size(); ++m) {
      out.write_wav("mic_" + std::to_string(m) + ".wav", AudioClip(arr.mics[m], arr.sample_rate));
    }
    out.write_wav("source.wav", AudioClip(arr.source, arr.sample_rate));
    Params p = describe(spec.geometry);
    p["array.duration"] = num(spec.duration);
    p["array.angle"] = num(spec.source_angle);
    p["array.source_rms"] = num(spec.source_rms);
    p["array.sensor_snr"] = num(spec.sensor_snr_db);
    p["array.interferer_angle"] = num(spec.interferer_angle);
    p["array.interferer_rms"] = num(spec.interferer_rms);
    p["scenario.seed"] = std::to_string(spec.seed);
    out.write_text("scenario.txt", scenario_text(p));
    info.effective = p;
    info.seeds["scenario"] = spec.seed;
    std::cout << "synthesized " << arr.mics.size() << " mic channels\n";
  }
  write_manifest(out, info);
}

void cmd_denoise(const GlobalOptions& opts, const fs::path& scenario_dir, const std::string& algo) {
  const Config cfg = load_config(opts);
  const FilterKind kind = parse_filter_kind(algo);
  const FilterConfig fcfg = filter_from(cfg, kind);
  const double warmup = warmup_from(cfg);
  const CurveSettings cs = curve_settings(cfg);
  const Scenario sc = load_scenario(scenario_dir);

  const StreamResult r = run_stream(sc, kind, fcfg, StreamOptions{StreamMode::Threaded, opts.paced});
  const auto& e = r.output.mono();
  const SnrReport snr = evaluate_denoise(sc, e, warmup);
  const auto start = static_cast<std::size_t>(std::floor(warmup * static_cast<double>(sc.frames())));
  const auto tail = [&](const std::vector<double>& v) { return std::span<const double>(v).subspan(start); };
  const int rate = sc.primary.sample_rate;
  const double seg_in = segmental_snr_db(tail(sc.clean.mono()), tail(sc.primary.mono()), rate);
  const double seg_out = segmental_snr_db(tail(sc.clean.mono()), tail(e), rate);

  std::vector<double> residual(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) residual[i] = e[i] - sc.clean.mono()[i];
  std::optional<std::size_t> conv;
  try {
    conv = convergence_point(learning_curve(residual, cs.block, cs.window), cs.margin_db);
  } catch (const NoConvergenceError&) {
  }

  OutputDir out(opts.out_dir);
  out.write_wav("output.wav", r.output);

  const std::string id = scenario_id(scenario_dir);
  const bool q15 = kind == FilterKind::LmsQ15;
  Csv eval = q15 ? Csv({"scenario", "algorithm", "snr_in", "snr_out", "improvement", "warmup_fraction",
                        "segsnr_in", "segsnr_out", "saturation_events"})
                 : Csv({"scenario", "algorithm", "snr_in", "snr_out", "improvement", "warmup_fraction",
                        "segsnr_in", "segsnr_out"});
  std::vector<std::string> row{id,          algo,           num(snr.snr_in),  num(snr.snr_out), num(snr.improvement),
                               num(warmup), num(seg_in),    num(seg_out)};
  if (q15) row.push_back(num(r.final_state.saturation_events));
  eval.row(row);
  out.write("eval.csv", eval);

  const auto& dl = r.deadline;
  Csv deadline({"block_index", "elapsed_seconds", "budget_seconds", "overrun_flag"});
  for (std::size_t b = 0; b < dl.per_block_times.size(); ++b) {
    deadline.row({num(b), num(dl.per_block_times[b]), num(dl.block_budget),
                  dl.per_block_times[b] > dl.block_budget ? "1" : "0"});
  }
  out.write("deadline.csv", deadline);

  Csv weights({"tap", "weight"});
  for (std::size_t k = 0; k < r.final_state.weights.size(); ++k) {
    weights.row({num(k), num(r.final_state.weights[k])});
  }
  out.write("weights.csv", weights);

  const double busy = std::accumulate(dl.per_block_times.begin(), dl.per_block_times.end(), 0.0);
  Csv summary({"scenario", "algorithm", "snr_in", "snr_out", "improvement", "convergence_block", "per_sample_seconds"});
  summary.row({id, algo, num(snr.snr_in), num(snr.snr_out), num(snr.improvement), opt_index(conv),
               num(busy / static_cast<double>(sc.frames()))});
  out.write("summary.csv", summary);

  Params p = describe(fcfg, kind);
  p["eval.warmup"] = num(warmup);
  p["algorithm"] = algo;
  p["paced"] = opts.paced ? "true" : "false";
  write_manifest(out, ManifestInfo{opts.command_line, cfg.snapshot(), p, {}});

  std::cout << algo << ": snr_in " << num(snr.snr_in) << " dB, snr_out " << num(snr.snr_out) << " dB, improvement "
            << num(snr.improvement) << " dB\n"
            << "blocks " << dl.per_block_times.size() << ", overruns " << dl.overruns << ", headroom "
            << num(dl.headroom) << "x, padded samples " << dl.padded_samples << "\n";
  if (q15) std::cout << "saturation events " << r.final_state.saturation_events << "\n";
}

void cmd_compare(const GlobalOptions& opts, const fs::path& scenario_dir) {
  const Config cfg = load_config(opts);
  CompareSettings s;
  s.filter = filter_from(cfg, FilterKind::Lms);
  filter_from(cfg, FilterKind::Rls);
  s.nlms_mu = cfg.get_double("compare.nlms_mu", s.nlms_mu);
  s.meta_taps = cfg.get_size("compare.taps", s.meta_taps);
  s.meta_window = cfg.get_size("compare.window", s.meta_window);
  const CurveSettings cs = curve_settings(cfg);
  s.curve_block = cs.block;
  s.curve_window = cs.window;
  s.margin_db = cs.margin_db;
  s.warmup = warmup_from(cfg);
  s.repetitions = cfg.get_size("compare.repetitions", s.repetitions);
  if (s.repetitions < 3) {
    throw ConfigError("compare.repetitions", cfg.line_of("compare.repetitions"), "must be at least 3");
  }
  if (s.meta_taps < 1) throw ConfigError("compare.taps", cfg.line_of("compare.taps"), "must be at least 1");
  if (s.meta_window < s.meta_taps) {
    throw ConfigError("compare.window", cfg.line_of("compare.window"), "must be at least compare.taps");
  }
  const std::uint64_t seed = opts.seed.value_or(cfg.get_u64("compare.seed", 1));
  s.pso = pso_from(cfg, s.meta_taps);
  s.jaya = jaya_from(cfg, s.meta_taps);
  s.sa = sa_from(cfg, s.meta_taps);
  s.pso.seed = seed;
  s.jaya.seed = seed;
  s.sa.seed = seed;
  {
    FilterConfig nl = s.filter;
    nl.mu = s.nlms_mu;
    try {
      nl.validate(FilterKind::Nlms);
    } catch (const ConfigError& e) {
      throw ConfigError("compare.nlms_mu", cfg.line_of("compare.nlms_mu"), e.what());
    }
  }

  const Scenario sc = load_scenario(scenario_dir);
  const CompareResult res = compare_all(sc, s);
  const std::string seed_cell = std::to_string(seed);

  std::map<Algorithm, std::string> params;
  for (const auto& so : res.streaming) {
    params[so.algorithm] = param_cell(strip_section(describe(so.config, so.algorithm == Algorithm::Rls
                                                                              ? FilterKind::Rls
                                                                              : so.algorithm == Algorithm::Nlms
                                                                                    ? FilterKind::Nlms
                                                                                    : FilterKind::Lms)));
  }
  for (const auto& oo : res.optimizers) params[oo.algorithm] = param_cell(describe_optimizer(oo.algorithm, s));

  OutputDir out(opts.out_dir);
  Csv conv({"algorithm", "convergence_block", "convergence_sample", "floor_mse", "seed", "params"});
  for (const auto& so : res.streaming) {
    conv.row({std::string(to_string(so.algorithm)), opt_index(so.convergence_block),
              so.convergence_block ? num(*so.convergence_block * so.curve.block) : "none", num(so.curve.floor),
              seed_cell, params[so.algorithm]});
  }
  out.write("convergence.csv", conv);

  Csv curves({"block", "lms", "nlms", "rls"});
  const std::size_t blocks = res.streaming.front().curve.smoothed.size();
  for (std::size_t b = 0; b < blocks; ++b) {
    curves.row({num(b), num(res.streaming[0].curve.smoothed[b]), num(res.streaming[1].curve.smoothed[b]),
                num(res.streaming[2].curve.smoothed[b])});
  }
  out.write("learning_curves.csv", curves);

  Csv snr({"algorithm", "snr_in", "snr_out", "improvement", "warmup_fraction", "seed", "params"});
  for (const auto& so : res.streaming) {
    snr.row({std::string(to_string(so.algorithm)), num(so.snr.snr_in), num(so.snr.snr_out), num(so.snr.improvement),
             num(s.warmup), seed_cell, params[so.algorithm]});
  }
  for (const auto& oo : res.optimizers) {
    snr.row({std::string(to_string(oo.algorithm)), num(oo.snr.snr_in), num(oo.snr.snr_out), num(oo.snr.improvement),
             num(s.warmup), seed_cell, params[oo.algorithm]});
  }
  out.write("snr.csv", snr);

  Csv runtime({"rank", "algorithm", "cost_unit", "seconds", "evaluations", "realtime", "seed", "params"});
  for (std::size_t i = 0; i < res.runtime.records.size(); ++i) {
    const auto& r = res.runtime.records[i];
    runtime.row({num(i), std::string(to_string(r.algorithm)), r.streaming ? "per_sample" : "per_solution",
                 num(r.seconds), num(r.evaluations), r.streaming ? (r.realtime ? "1" : "0") : "0", seed_cell,
                 params[r.algorithm]});
  }
  out.write("runtime.csv", runtime);

  Csv history({"algorithm", "iteration", "best_mse", "evaluations", "elapsed_seconds"});
  for (const auto& oo : res.optimizers) {
    for (std::size_t i = 0; i < oo.run.history.size(); ++i) {
      const auto& h = oo.run.history[i];
      history.row({std::string(to_string(oo.algorithm)), num(i), num(h.best_mse), num(h.evaluations),
                   num(h.elapsed_seconds)});
    }
  }
  out.write("optimizer_history.csv", history);

  const std::string id = scenario_id(scenario_dir);
  Csv summary({"scenario", "algorithm", "snr_in", "snr_out", "improvement", "convergence_block", "per_sample_seconds"});
  for (const auto& so : res.streaming) {
    summary.row({id, std::string(to_string(so.algorithm)), num(so.snr.snr_in), num(so.snr.snr_out),
                 num(so.snr.improvement), opt_index(so.convergence_block),
                 num(res.runtime.at(so.algorithm).seconds)});
  }
  for (const auto& oo : res.optimizers) {
    summary.row({id, std::string(to_string(oo.algorithm)), num(oo.snr.snr_in), num(oo.snr.snr_out),
                 num(oo.snr.improvement), "none", num(res.runtime.at(oo.algorithm).seconds)});
  }
  out.write("summary.csv", summary);

  Params eff = prefixed("filter.", strip_section(describe(s.filter, FilterKind::Rls)));
  eff["filter.mu"] = num(s.filter.mu);
  eff["compare.nlms_mu"] = num(s.nlms_mu);
  eff["compare.curve_block"] = num(s.curve_block);
  eff["compare.curve_window"] = num(s.curve_window);
  eff["compare.margin_db"] = num(s.margin_db);
  eff["compare.repetitions"] = num(s.repetitions);
  eff["eval.warmup"] = num(s.warmup);
  for (Algorithm a : {Algorithm::Pso, Algorithm::Jaya, Algorithm::Sa}) {
    const auto p = prefixed(std::string(to_string(a)) + ".", describe_optimizer(a, s));
    eff.insert(p.begin(), p.end());
  }
  write_manifest(out, ManifestInfo{opts.command_line, cfg.snapshot(), eff, {{"optimizers", seed}}});

  for (const auto& r : res.runtime.records) {
    std::cout << to_string(r.algorithm) << ": " << num(r.seconds) << " s "
              << (r.streaming ? "per sample" : "per solution") << "\n";
  }
}

void cmd_beamform(const GlobalOptions& opts, std::vector<fs::path> inputs) {
  const Config cfg = load_config(opts);
  if (inputs.size() < 2) throw IoError("beamform needs at least two mono WAV inputs");
  std::vector<std::vector<double>> channels;
  int rate = 0;
  for (const auto& p : inputs) {
    AudioClip clip = read_mono(p);
    if (!channels.empty() && clip.frames() != channels.front().size()) {
      throw IoError(p.string() + ": length " + std::to_string(clip.frames()) + " differs from " +
                    std::to_string(channels.front().size()));
    }
    if (rate != 0 && clip.sample_rate != rate) throw IoError(p.string() + ": sample rate differs");
    rate = clip.sample_rate;
    channels.push_back(std::move(clip.channels[0]));
  }

  ArrayGeometry base;
  base.mic_count = channels.size();
  base.sample_rate = rate;
  const ArrayGeometry geom = geometry_from(cfg, base);
  if (geom.mic_count != channels.size()) {
    throw ConfigError("array.mics", cfg.line_of("array.mics"),
                      "config says " + std::to_string(geom.mic_count) + " mics but " +
                          std::to_string(channels.size()) + " inputs were given");
  }
  if (geom.sample_rate != rate) {
    throw ConfigError("array.sample_rate", cfg.line_of("array.sample_rate"), "does not match the input files");
  }
  const double angle = cfg.get_double("array.angle", 0.0);
  if (!(std::abs(angle) <= std::numbers::pi / 2)) {
    throw ConfigError("array.angle", cfg.line_of("array.angle"), "must be within [-pi/2, pi/2] radians");
  }
  const double f_max = cfg.get_double("array.f_max", 4000.0);
  if (!(f_max > 0.0)) throw ConfigError("array.f_max", cfg.line_of("array.f_max"), "must be positive");
  const double limit = max_spacing(f_max, geom.speed_of_sound);
  if (geom.spacing > limit) {
    std::cerr << "warning: spacing " << num(geom.spacing) << " m exceeds " << num(limit)
              << " m, half the wavelength at " << num(f_max) << " Hz; expect spatial aliasing\n";
  }

  const auto delays = steering_delays(geom, angle);
  const auto das = delay_and_sum(channels, delays);
  const auto est = estimate_array_gain(channels, delays, das);

  OutputDir out(opts.out_dir);
  out.write_wav("beamformed.wav", AudioClip(das, rate));
  Csv gain({"method", "mics", "spacing", "angle", "source_power", "snr_in_db", "snr_out_db", "gain_db",
            "coherent_gain_db"});
  const std::string coherent = num(10.0 * std::log10(static_cast<double>(geom.mic_count)));
  gain.row({"delay_and_sum", num(geom.mic_count), num(geom.spacing), num(angle), num(est.source_power),
            num(est.snr_in_db), num(est.snr_out_db), num(est.gain_db), coherent});

  const bool adaptive = cfg.get_bool("array.adaptive", false);
  FilterConfig fcfg;
  if (adaptive) {
    FilterConfig fa_base;
    fa_base.num_taps = 32;
    fa_base.mu = 0.1;
    fcfg = filter_from(cfg, FilterKind::Nlms, fa_base);
    const auto fas = filter_and_sum_adaptive(channels, geom, angle, fcfg);
    const auto fest = estimate_array_gain(channels, delays, fas);
    out.write_wav("beamformed_adaptive.wav", AudioClip(fas, rate));
    gain.row({"filter_and_sum", num(geom.mic_count), num(geom.spacing), num(angle), num(fest.source_power),
              num(fest.snr_in_db), num(fest.snr_out_db), num(fest.gain_db), coherent});
  }
  out.write("gain.csv", gain);

  Params p = describe(geom);
  p["array.angle"] = num(angle);
  p["array.f_max"] = num(f_max);
  p["array.adaptive"] = adaptive ? "true" : "false";
  if (adaptive) {
    const auto f = prefixed("filter.", strip_section(describe(fcfg, FilterKind::Nlms)));
    p.insert(f.begin(), f.end());
  }
  write_manifest(out, ManifestInfo{opts.command_line, cfg.snapshot(), p, {}});
  std::cout << "array gain " << num(est.gain_db) << " dB (coherent law " << coherent << " dB)\n";
}

}  // namespace anc::cli
