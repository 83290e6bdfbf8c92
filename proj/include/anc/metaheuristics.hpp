// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "anc/random.hpp"

namespace anc {

/// Fixed-FIR fitting problem: find weights w minimising the mean over every
/// n of (d[n] - sum_k w[k] x[n - k])^2, with x zero before the window.
struct Objective {
  std::vector<double> x;
  std::vector<double> d;
  std::size_t num_taps = 16;

  /// Takes the first `window` samples of both signals.
  static Objective from_signals(std::span<const double> x, std::span<const double> d, std::size_t num_taps,
                                std::size_t window);

  void validate() const;
};

double mse_objective(std::span<const double> weights, const Objective& obj);

struct Candidate {
  std::vector<double> position;
  double fitness = 0.0;
  std::vector<double> velocity;  // PSO only
};

struct HistoryEntry {
  double best_mse = 0.0;
  std::size_t evaluations = 0;
  double elapsed_seconds = 0.0;
};

struct OptimizerRun {
  Candidate best;
  std::vector<HistoryEntry> history;  // entry 0 is the initial population
  std::size_t evaluations = 0;
  double wall_time = 0.0;
};

struct PsoParams {
  std::size_t swarm_size = 30;
  std::size_t iterations = 200;
  double inertia = 0.7;
  double c1 = 0.9;
  double c2 = 0.9;
  double bounds = 1.0;
  std::uint64_t seed = 1;
  /// Overrides the uniform initialisation; must hold swarm_size vectors.
  std::optional<std::vector<std::vector<double>>> initial_positions;
  /// Worker threads for fitness evaluation; results do not depend on it.
  std::size_t threads = 1;

  void validate(std::size_t taps) const;
};

struct JayaParams {
  std::size_t population = 20;
  std::size_t iterations = 300;
  double bounds = 1.0;
  std::uint64_t seed = 1;
  std::optional<std::vector<std::vector<double>>> initial_population;
  std::size_t threads = 1;

  void validate(std::size_t taps) const;
};

struct SaParams {
  std::optional<double> t0;  // defaults to the MSE of the starting point
  double alpha = 0.95;
  std::size_t steps_per_temp = 50;
  std::optional<double> min_temp;  // defaults to t0 * 1e-4
  double perturb_scale = 0.05;
  std::uint64_t seed = 1;
  std::optional<std::vector<double>> initial;  // defaults to all-zero weights

  void validate(std::size_t taps) const;
};

OptimizerRun pso_optimize(const Objective& obj, const PsoParams& params);
OptimizerRun jaya_optimize(const Objective& obj, const JayaParams& params);
OptimizerRun sa_optimize(const Objective& obj, const SaParams& params);

/// Metropolis rule: downhill always, uphill with probability exp(-delta / T).
bool sa_accept(double delta, double temperature, Rng& rng);

/// Objective evaluations each optimizer spends for a given parameter set.
std::size_t pso_budget(const PsoParams& p);
std::size_t jaya_budget(const JayaParams& p);
/// Total moves + 1, given the resolved starting temperature.
std::size_t sa_budget(const SaParams& p, double resolved_t0);

}  // namespace anc
