// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/metaheuristics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <thread>

#include "anc/errors.hpp"

namespace anc {

Objective Objective::from_signals(std::span<const double> x, std::span<const double> d, std::size_t num_taps,
                                  std::size_t window) {
  if (x.size() != d.size()) throw ArgumentError("objective signals differ in length");
  const std::size_t n = std::min(window, x.size());
  Objective obj{std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n)),
                std::vector<double>(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n)), num_taps};
  obj.validate();
  return obj;
}

void Objective::validate() const {
  if (num_taps < 1) throw ArgumentError("objective needs at least one tap");
  if (x.size() != d.size()) throw ArgumentError("objective signals differ in length");
  if (x.size() < num_taps) throw ArgumentError("objective window shorter than the filter");
}

double mse_objective(std::span<const double> weights, const Objective& obj) {
  if (weights.size() != obj.num_taps) {
    throw ArgumentError("weight vector has " + std::to_string(weights.size()) + " taps, objective expects " +
                        std::to_string(obj.num_taps));
  }
  const std::size_t taps = obj.num_taps;
  const std::size_t n = obj.x.size();
  const double* x = obj.x.data();
  const double* w = weights.data();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t kmax = std::min(taps, i + 1);
    double y = 0.0;
    for (std::size_t k = 0; k < kmax; ++k) y += w[k] * x[i - k];
    const double r = obj.d[i] - y;
    acc += r * r;
  }
  return n == 0 ? 0.0 : acc / static_cast<double>(n);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Fitness of every position. Each slot is written by exactly one worker, so
/// the result is independent of the thread count.
void evaluate_all(const Objective& obj, const std::vector<std::vector<double>>& positions,
                  std::vector<double>& fitness, std::size_t threads) {
  fitness.resize(positions.size());
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, positions.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < positions.size(); ++i) fitness[i] = mse_objective(positions[i], obj);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < positions.size(); i += workers) fitness[i] = mse_objective(positions[i], obj);
    });
  }
}

std::vector<std::vector<double>> initial_population(const std::optional<std::vector<std::vector<double>>>& given,
                                                    std::size_t count, std::size_t taps, double bounds,
                                                    std::vector<Rng>& streams) {
  if (given) return *given;
  std::vector<std::vector<double>> pop(count, std::vector<double>(taps));
  for (std::size_t i = 0; i < count; ++i) {
    for (auto& v : pop[i]) v = streams[i].uniform(-bounds, bounds);
  }
  return pop;
}

std::vector<Rng> substreams(std::uint64_t seed, std::size_t count) {
  std::vector<Rng> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(derive_seed(seed, i));
  return out;
}

void check_population(const std::optional<std::vector<std::vector<double>>>& given, std::size_t count,
                      std::size_t taps, const char* what) {
  if (!given) return;
  if (given->size() != count) throw ArgumentError(std::string(what) + ": initial population size mismatch");
  for (const auto& p : *given) {
    if (p.size() != taps) throw ArgumentError(std::string(what) + ": initial position has wrong length");
  }
}

}  // namespace

void PsoParams::validate(std::size_t taps) const {
  if (swarm_size < 2) throw ConfigError("pso.swarm", 0, "swarm needs at least 2 particles");
  if (!(bounds > 0.0)) throw ConfigError("pso.bounds", 0, "must be positive");
  if (!(c1 >= 0.0 && c1 <= 1.0)) throw ConfigError("pso.c1", 0, "must be in [0, 1]");
  if (!(c2 >= 0.0 && c2 <= 1.0)) throw ConfigError("pso.c2", 0, "must be in [0, 1]");
  if (!std::isfinite(inertia)) throw ConfigError("pso.inertia", 0, "must be finite");
  check_population(initial_positions, swarm_size, taps, "pso");
}

void JayaParams::validate(std::size_t taps) const {
  if (population < 2) throw ConfigError("jaya.population", 0, "population needs at least 2 candidates");
  if (!(bounds > 0.0)) throw ConfigError("jaya.bounds", 0, "must be positive");
  check_population(initial_population, population, taps, "jaya");
}

void SaParams::validate(std::size_t taps) const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("sa.alpha", 0, "must be in (0, 1)");
  if (steps_per_temp < 1) throw ConfigError("sa.steps_per_temp", 0, "must be at least 1");
  if (!(perturb_scale >= 0.0) || !std::isfinite(perturb_scale)) {
    throw ConfigError("sa.perturb_scale", 0, "must be finite and >= 0");
  }
  if (t0 && !(*t0 > 0.0)) throw ConfigError("sa.t0", 0, "must be positive");
  if (min_temp && !(*min_temp > 0.0)) throw ConfigError("sa.min_temp", 0, "must be positive");
  if (t0 && min_temp && !(*t0 > *min_temp)) throw ConfigError("sa.t0", 0, "must exceed sa.min_temp");
  if (initial && initial->size() != taps) throw ArgumentError("sa: initial point has wrong length");
}

std::size_t pso_budget(const PsoParams& p) { return p.swarm_size * p.iterations + p.swarm_size; }

std::size_t jaya_budget(const JayaParams& p) { return p.population * (p.iterations + 1); }

namespace {

std::size_t sa_stages(double t0, double min_temp, double alpha) {
  std::size_t stages = 0;
  for (double t = t0; t > min_temp; t *= alpha) ++stages;
  return stages;
}

}  // namespace

std::size_t sa_budget(const SaParams& p, double resolved_t0) {
  if (!(resolved_t0 > 0.0)) return 1;
  const double min_temp = p.min_temp.value_or(resolved_t0 * 1e-4);
  return sa_stages(resolved_t0, min_temp, p.alpha) * p.steps_per_temp + 1;
}

OptimizerRun pso_optimize(const Objective& obj, const PsoParams& params) {
  obj.validate();
  params.validate(obj.num_taps);
  const auto start = Clock::now();
  const std::size_t taps = obj.num_taps;
  const std::size_t swarm = params.swarm_size;
  const double b = params.bounds;
  const double vmax = 0.5 * b;

  auto streams = substreams(params.seed, swarm);
  auto pos = initial_population(params.initial_positions, swarm, taps, b, streams);
  std::vector<std::vector<double>> vel(swarm, std::vector<double>(taps, 0.0));
  std::vector<double> fit;
  evaluate_all(obj, pos, fit, params.threads);

  OptimizerRun run;
  run.evaluations = swarm;
  auto pbest = pos;
  auto pbest_fit = fit;
  std::size_t g = static_cast<std::size_t>(std::min_element(pbest_fit.begin(), pbest_fit.end()) - pbest_fit.begin());
  std::vector<double> gbest = pbest[g];
  double gbest_fit = pbest_fit[g];
  run.history.push_back({gbest_fit, run.evaluations, seconds_since(start)});

  for (std::size_t it = 0; it < params.iterations; ++it) {
    for (std::size_t i = 0; i < swarm; ++i) {
      Rng& rng = streams[i];
      for (std::size_t j = 0; j < taps; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        double v = params.inertia * vel[i][j] + params.c1 * r1 * (pbest[i][j] - pos[i][j]) +
                   params.c2 * r2 * (gbest[j] - pos[i][j]);
        v = std::clamp(v, -vmax, vmax);
        vel[i][j] = v;
        pos[i][j] = std::clamp(pos[i][j] + v, -b, b);
      }
    }
    evaluate_all(obj, pos, fit, params.threads);
    run.evaluations += swarm;
    for (std::size_t i = 0; i < swarm; ++i) {
      if (fit[i] < pbest_fit[i]) {
        pbest_fit[i] = fit[i];
        pbest[i] = pos[i];
      }
    }
    // Synchronous swarm: the global best moves only between iterations.
    for (std::size_t i = 0; i < swarm; ++i) {
      if (pbest_fit[i] < gbest_fit) {
        gbest_fit = pbest_fit[i];
        gbest = pbest[i];
        g = i;
      }
    }
    run.history.push_back({gbest_fit, run.evaluations, seconds_since(start)});
  }

  run.best.position = gbest;
  run.best.fitness = gbest_fit;
  run.best.velocity = vel[g];
  run.wall_time = seconds_since(start);
  return run;
}

OptimizerRun jaya_optimize(const Objective& obj, const JayaParams& params) {
  obj.validate();
  params.validate(obj.num_taps);
  const auto start = Clock::now();
  const std::size_t taps = obj.num_taps;
  const std::size_t pop_size = params.population;
  const double b = params.bounds;

  auto streams = substreams(params.seed, pop_size);
  auto pop = initial_population(params.initial_population, pop_size, taps, b, streams);
  std::vector<double> fit;
  evaluate_all(obj, pop, fit, params.threads);

  OptimizerRun run;
  run.evaluations = pop_size;
  run.history.push_back({*std::min_element(fit.begin(), fit.end()), run.evaluations, seconds_since(start)});

  std::vector<std::vector<double>> proposals(pop_size, std::vector<double>(taps));
  std::vector<double> proposal_fit;
  for (std::size_t it = 0; it < params.iterations; ++it) {
    const auto best_it = std::min_element(fit.begin(), fit.end());
    const auto worst_it = std::max_element(fit.begin(), fit.end());
    const std::vector<double> best = pop[static_cast<std::size_t>(best_it - fit.begin())];
    const std::vector<double> worst = pop[static_cast<std::size_t>(worst_it - fit.begin())];

    for (std::size_t i = 0; i < pop_size; ++i) {
      Rng& rng = streams[i];
      for (std::size_t j = 0; j < taps; ++j) {
        const double r1 = rng.uniform();
        const double r2 = rng.uniform();
        const double xj = pop[i][j];
        const double v = xj + r1 * (best[j] - std::abs(xj)) - r2 * (worst[j] - std::abs(xj));
        proposals[i][j] = std::clamp(v, -b, b);
      }
    }
    evaluate_all(obj, proposals, proposal_fit, params.threads);
    run.evaluations += pop_size;
    for (std::size_t i = 0; i < pop_size; ++i) {
      if (proposal_fit[i] < fit[i]) {
        fit[i] = proposal_fit[i];
        pop[i] = proposals[i];
      }
    }
    run.history.push_back({*std::min_element(fit.begin(), fit.end()), run.evaluations, seconds_since(start)});
  }

  const auto best_it = std::min_element(fit.begin(), fit.end());
  run.best.position = pop[static_cast<std::size_t>(best_it - fit.begin())];
  run.best.fitness = *best_it;
  run.wall_time = seconds_since(start);
  return run;
}

bool sa_accept(double delta, double temperature, Rng& rng) {
  if (delta <= 0.0) return true;
  return rng.uniform() < std::exp(-delta / temperature);
}

OptimizerRun sa_optimize(const Objective& obj, const SaParams& params) {
  obj.validate();
  params.validate(obj.num_taps);
  const auto start = Clock::now();
  const std::size_t taps = obj.num_taps;
  Rng rng(derive_seed(params.seed, 0));

  std::vector<double> current = params.initial.value_or(std::vector<double>(taps, 0.0));
  double current_fit = mse_objective(current, obj);
  OptimizerRun run;
  run.evaluations = 1;
  run.best.position = current;
  run.best.fitness = current_fit;
  run.history.push_back({current_fit, run.evaluations, seconds_since(start)});

  const double t0 = params.t0.value_or(current_fit);
  if (t0 > 0.0) {
    const double min_temp = params.min_temp.value_or(t0 * 1e-4);
    std::vector<double> cand;
    for (double temp = t0; temp > min_temp; temp *= params.alpha) {
      for (std::size_t s = 0; s < params.steps_per_temp; ++s) {
        cand = current;
        const std::size_t j = rng.index(taps);
        cand[j] += params.perturb_scale * rng.normal();
        const double cand_fit = mse_objective(cand, obj);
        ++run.evaluations;
        if (sa_accept(cand_fit - current_fit, temp, rng)) {
          current.swap(cand);
          current_fit = cand_fit;
          if (current_fit < run.best.fitness) {
            run.best.position = current;
            run.best.fitness = current_fit;
          }
        }
      }
      run.history.push_back({run.best.fitness, run.evaluations, seconds_since(start)});
    }
  }
  run.wall_time = seconds_since(start);
  return run;
}

}  // namespace anc
