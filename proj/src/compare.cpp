// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/compare.hpp"

#include <algorithm>
#include <chrono>
#include <future>

#include "anc/errors.hpp"

namespace anc {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

FilterKind filter_kind(Algorithm a) {
  switch (a) {
    case Algorithm::Lms: return FilterKind::Lms;
    case Algorithm::Nlms: return FilterKind::Nlms;
    case Algorithm::Rls: return FilterKind::Rls;
    case Algorithm::LmsQ15: return FilterKind::LmsQ15;
    default: throw ArgumentError(std::string(to_string(a)) + " is not a streaming filter");
  }
}

/// Rethrows any failure with the algorithm name in front.
template <typename Fn>
auto labelled(Algorithm a, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const StreamError&) {
    throw;
  } catch (const NumericError& e) {
    throw NumericError(std::string(to_string(a)) + ": " + e.what());
  } catch (const ArgumentError& e) {
    throw ArgumentError(std::string(to_string(a)) + ": " + e.what());
  }
}

}  // namespace

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Lms: return "lms";
    case Algorithm::Nlms: return "nlms";
    case Algorithm::Rls: return "rls";
    case Algorithm::LmsQ15: return "lms-q15";
    case Algorithm::Pso: return "pso";
    case Algorithm::Jaya: return "jaya";
    case Algorithm::Sa: return "sa";
  }
  return "?";
}

bool is_streaming(Algorithm a) {
  return a == Algorithm::Lms || a == Algorithm::Nlms || a == Algorithm::Rls || a == Algorithm::LmsQ15;
}

const std::vector<Algorithm>& all_algorithms() {
  static const std::vector<Algorithm> algos = {Algorithm::Lms, Algorithm::Nlms, Algorithm::Rls,
                                               Algorithm::Pso, Algorithm::Jaya, Algorithm::Sa};
  return algos;
}

FilterConfig streaming_config(Algorithm a, const CompareSettings& s) {
  FilterConfig cfg = s.filter;
  if (a == Algorithm::Nlms) cfg.mu = s.nlms_mu;
  return cfg;
}

StreamingOutcome run_streaming(const Scenario& scenario, Algorithm a, const FilterConfig& config,
                               const CompareSettings& s) {
  return labelled(a, [&] {
    StreamingOutcome out;
    out.algorithm = a;
    out.config = config;
    const auto& clean = scenario.clean.mono();
    out.e = filter_signal(filter_kind(a), config, scenario.reference.mono(), scenario.primary.mono()).e;
    std::vector<double> residual(out.e.size());
    for (std::size_t i = 0; i < residual.size(); ++i) residual[i] = out.e[i] - clean[i];
    out.curve = learning_curve(residual, s.curve_block, s.curve_window);
    try {
      out.convergence_block = convergence_point(out.curve, s.margin_db);
    } catch (const NoConvergenceError&) {
      out.convergence_block.reset();
    }
    out.snr = evaluate_denoise(scenario, out.e, s.warmup);
    return out;
  });
}

std::vector<double> apply_fixed_filter(std::span<const double> x, std::span<const double> d,
                                       std::span<const double> weights) {
  if (x.size() != d.size()) throw ArgumentError("reference and primary differ in length");
  const auto y = fir_channel(x, weights);
  std::vector<double> e(d.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = d[i] - y[i];
  return e;
}

namespace {

OptimizerRun optimize(const Objective& obj, Algorithm a, const CompareSettings& s) {
  switch (a) {
    case Algorithm::Pso: return pso_optimize(obj, s.pso);
    case Algorithm::Jaya: return jaya_optimize(obj, s.jaya);
    case Algorithm::Sa: return sa_optimize(obj, s.sa);
    default: throw ArgumentError(std::string(to_string(a)) + " is not an optimizer");
  }
}

}  // namespace

OptimizerOutcome run_optimizer(const Scenario& scenario, Algorithm a, const CompareSettings& s) {
  return labelled(a, [&] {
    const auto& x = scenario.reference.mono();
    const auto& d = scenario.primary.mono();
    const Objective obj = Objective::from_signals(x, d, s.meta_taps, s.meta_window);
    OptimizerOutcome out;
    out.algorithm = a;
    out.run = optimize(obj, a, s);
    out.snr = evaluate_denoise(scenario, apply_fixed_filter(x, d, out.run.best.position), s.warmup);
    return out;
  });
}

const RuntimeRecord& RuntimeTable::at(Algorithm a) const {
  for (const auto& r : records) {
    if (r.algorithm == a) return r;
  }
  throw ArgumentError(std::string(to_string(a)) + " was not benchmarked");
}

RuntimeTable bench_runtime(std::span<const Algorithm> algorithms, const Scenario& scenario,
                           const CompareSettings& s) {
  if (s.repetitions < 3) throw ArgumentError("bench_runtime needs at least 3 repetitions");
  const auto& x_full = scenario.reference.mono();
  const auto& d_full = scenario.primary.mono();
  const std::size_t n = std::min(s.bench_samples, x_full.size());
  const std::span<const double> x(x_full.data(), n);
  const std::span<const double> d(d_full.data(), n);
  const double sample_period = 1.0 / static_cast<double>(scenario.primary.sample_rate);

  RuntimeTable table;
  for (const Algorithm a : algorithms) {
    RuntimeRecord rec;
    rec.algorithm = a;
    rec.streaming = is_streaming(a);
    std::vector<double> samples;
    if (rec.streaming) {
      const FilterKind kind = filter_kind(a);
      const FilterConfig cfg = streaming_config(a, s);
      for (std::size_t rep = 0; rep <= s.repetitions; ++rep) {
        const auto t0 = Clock::now();
        const auto out = filter_signal(kind, cfg, x, d);
        const double t = std::chrono::duration<double>(Clock::now() - t0).count();
        if (rep > 0) samples.push_back(t / static_cast<double>(out.e.size()));
      }
      rec.evaluations = n;
      rec.seconds = median(samples);
      rec.realtime = rec.seconds < sample_period;
    } else {
      const Objective obj = Objective::from_signals(x_full, d_full, s.meta_taps, s.meta_window);
      // The warm-up run only needs to touch the same code and data.
      CompareSettings warm = s;
      warm.pso.iterations = 1;
      warm.jaya.iterations = 1;
      warm.sa.steps_per_temp = 1;
      warm.sa.min_temp.reset();
      warm.sa.alpha = 0.01;
      optimize(obj, a, warm);
      for (std::size_t rep = 0; rep < s.repetitions; ++rep) {
        const auto run = optimize(obj, a, s);
        samples.push_back(run.wall_time / static_cast<double>(run.evaluations));
        rec.evaluations = run.evaluations;
      }
      rec.seconds = median(samples);
    }
    table.records.push_back(rec);
  }
  std::stable_sort(table.records.begin(), table.records.end(),
                   [](const RuntimeRecord& l, const RuntimeRecord& r) { return l.seconds < r.seconds; });
  return table;
}

CompareResult compare_all(const Scenario& scenario, const CompareSettings& s) {
  std::vector<std::future<StreamingOutcome>> streaming;
  std::vector<std::future<OptimizerOutcome>> optimizers;
  for (const Algorithm a : all_algorithms()) {
    if (is_streaming(a)) {
      streaming.push_back(std::async(std::launch::async, [&, a] {
        return run_streaming(scenario, a, streaming_config(a, s), s);
      }));
    } else {
      optimizers.push_back(std::async(std::launch::async, [&, a] { return run_optimizer(scenario, a, s); }));
    }
  }
  CompareResult result;
  for (auto& f : streaming) result.streaming.push_back(f.get());
  for (auto& f : optimizers) result.optimizers.push_back(f.get());
  result.runtime = bench_runtime(all_algorithms(), scenario, s);
  return result;
}

}  // namespace anc
