// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "anc/adaptive_filters.hpp"
#include "anc/metaheuristics.hpp"
#include "anc/metrics.hpp"
#include "anc/signal_synth.hpp"

namespace anc {

/// Streaming filters and offline optimizers that the comparison runs.
enum class Algorithm { Lms, Nlms, Rls, LmsQ15, Pso, Jaya, Sa };

std::string_view to_string(Algorithm a);
bool is_streaming(Algorithm a);
/// All algorithms in the fixed report order.
const std::vector<Algorithm>& all_algorithms();

struct CompareSettings {
  FilterConfig filter;        // streaming filters
  double nlms_mu = 0.02;      // NLMS is normalized, so it gets its own step size
  std::size_t meta_taps = 16;  // optimizer problem size
  std::size_t meta_window = 48000;  // samples of the scenario the optimizers fit
  std::size_t curve_block = 256;
  std::size_t curve_window = 16;
  double margin_db = 3.0;
  double warmup = 0.25;
  PsoParams pso;
  JayaParams jaya;
  SaParams sa;
  std::size_t repetitions = 3;
  std::size_t bench_samples = 48000;  // streaming filters are timed on this prefix
};

FilterConfig streaming_config(Algorithm a, const CompareSettings& s);

struct StreamingOutcome {
  Algorithm algorithm = Algorithm::Lms;
  FilterConfig config;
  std::vector<double> e;
  LearningCurve curve;  // over the residual e - clean
  std::optional<std::size_t> convergence_block;
  SnrReport snr;
};

StreamingOutcome run_streaming(const Scenario& scenario, Algorithm a, const FilterConfig& config,
                               const CompareSettings& s);

struct OptimizerOutcome {
  Algorithm algorithm = Algorithm::Pso;
  OptimizerRun run;
  SnrReport snr;  // best weights applied as a fixed filter to the whole scenario
};

OptimizerOutcome run_optimizer(const Scenario& scenario, Algorithm a, const CompareSettings& s);

/// d minus x filtered by fixed weights.
std::vector<double> apply_fixed_filter(std::span<const double> x, std::span<const double> d,
                                       std::span<const double> weights);

struct RuntimeRecord {
  Algorithm algorithm = Algorithm::Lms;
  bool streaming = true;
  double seconds = 0.0;  // per output sample (streaming) or per evaluated solution
  std::size_t evaluations = 0;
  bool realtime = false;  // per-sample cost under one sample period
};

struct RuntimeTable {
  std::vector<RuntimeRecord> records;  // ascending by seconds

  const RuntimeRecord& at(Algorithm a) const;
};

/// Median of `repetitions` timed runs after one untimed warm-up run.
RuntimeTable bench_runtime(std::span<const Algorithm> algorithms, const Scenario& scenario,
                           const CompareSettings& s);

struct CompareResult {
  std::vector<StreamingOutcome> streaming;
  std::vector<OptimizerOutcome> optimizers;
  RuntimeTable runtime;
};

/// Quality runs execute concurrently; results are collected in fixed order.
/// Benchmarks run afterwards, one at a time.
CompareResult compare_all(const Scenario& scenario, const CompareSettings& s);

}  // namespace anc
