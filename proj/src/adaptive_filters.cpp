// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/adaptive_filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anc/errors.hpp"
#include "anc/q15.hpp"

namespace anc {

std::string_view to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::Lms: return "lms";
    case FilterKind::Nlms: return "nlms";
    case FilterKind::Rls: return "rls";
    case FilterKind::LmsQ15: return "lms-q15";
  }
  return "unknown";
}

FilterKind parse_filter_kind(std::string_view name) {
  if (name == "lms") return FilterKind::Lms;
  if (name == "nlms") return FilterKind::Nlms;
  if (name == "rls") return FilterKind::Rls;
  if (name == "lms-q15" || name == "lms_q15") return FilterKind::LmsQ15;
  throw ArgumentError("unknown filter kind '" + std::string(name) + "'");
}

void FilterConfig::validate(FilterKind kind) const {
  if (num_taps < 1) throw ConfigError("filter.taps", 0, "must be at least 1");
  if (block_size < 1) throw ConfigError("filter.block_size", 0, "must be at least 1");
  switch (kind) {
    case FilterKind::Lms:
    case FilterKind::Nlms:
      if (!(mu >= 0.0) || !std::isfinite(mu)) throw ConfigError("filter.mu", 0, "must be finite and >= 0");
      if (kind == FilterKind::Nlms && (!(nlms_epsilon >= 0.0) || !std::isfinite(nlms_epsilon))) {
        throw ConfigError("filter.nlms_epsilon", 0, "must be finite and >= 0");
      }
      break;
    case FilterKind::LmsQ15:
      if (!(mu >= 0.0) || !(mu < 1.0)) throw ConfigError("filter.mu", 0, "Q15 step size must be in [0, 1)");
      break;
    case FilterKind::Rls:
      if (!(rls_lambda > 0.0 && rls_lambda <= 1.0)) {
        throw ConfigError("filter.rls_lambda", 0, "must be in (0, 1]");
      }
      if (!(rls_delta > 0.0) || !std::isfinite(rls_delta)) {
        throw ConfigError("filter.rls_delta", 0, "must be finite and > 0");
      }
      break;
  }
}

FilterState filter_init(FilterKind kind, const FilterConfig& config) {
  config.validate(kind);
  FilterState s;
  s.kind = kind;
  s.config = config;
  const std::size_t taps = config.num_taps;
  s.weights.assign(taps, 0.0);
  s.delay_line.assign(taps + config.block_size - 1, 0.0);
  if (kind == FilterKind::Rls) {
    s.rls_p.assign(taps * taps, 0.0);
    for (std::size_t i = 0; i < taps; ++i) s.rls_p[i * taps + i] = config.rls_delta;
  }
  if (kind == FilterKind::LmsQ15) {
    s.weights_q15.assign(taps, 0);
    s.delay_line_q15.assign(taps + config.block_size - 1, 0);
    s.mu_q15 = q15::from_real(config.mu, s.saturation_events);
  }
  return s;
}

namespace {

void check_block(const FilterState& state, std::span<const double> x, std::span<const double> d,
                 std::span<double> y, std::span<double> e) {
  const std::size_t m = x.size();
  if (d.size() != m || y.size() != m || e.size() != m) {
    throw ArgumentError("x, d, y and e blocks must have equal length");
  }
  if (m == 0 || m > state.config.block_size) {
    throw ArgumentError("block length " + std::to_string(m) + " outside [1, " +
                        std::to_string(state.config.block_size) + "]");
  }
  for (std::size_t n = 0; n < m; ++n) {
    if (!std::isfinite(x[n]) || !std::isfinite(d[n])) {
      throw NumericError("non-finite input at sample " + std::to_string(n));
    }
  }
}

template <typename T>
void retire_block(std::vector<T>& line, std::size_t taps, std::size_t m) {
  // Keep the newest taps - 1 samples as history for the next block.
  std::copy(line.begin() + static_cast<std::ptrdiff_t>(m),
            line.begin() + static_cast<std::ptrdiff_t>(m + taps - 1), line.begin());
}

void run_lms(FilterState& s, std::span<const double> x, std::span<const double> d, std::span<double> y,
             std::span<double> e) {
  const std::size_t taps = s.config.num_taps;
  const std::size_t m = x.size();
  std::copy(x.begin(), x.end(), s.delay_line.begin() + static_cast<std::ptrdiff_t>(taps - 1));
  double* w = s.weights.data();
  const double mu = s.config.mu;
  for (std::size_t n = 0; n < m; ++n) {
    const double* newest = s.delay_line.data() + n + taps - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += w[k] * *(newest - k);
    y[n] = acc;
    e[n] = d[n] - acc;
    const double g = mu * e[n];
    for (std::size_t k = 0; k < taps; ++k) w[k] += g * *(newest - k);
  }
  retire_block(s.delay_line, taps, m);
}

void run_nlms(FilterState& s, std::span<const double> x, std::span<const double> d, std::span<double> y,
              std::span<double> e) {
  const std::size_t taps = s.config.num_taps;
  const std::size_t m = x.size();
  std::copy(x.begin(), x.end(), s.delay_line.begin() + static_cast<std::ptrdiff_t>(taps - 1));
  double* w = s.weights.data();
  const double mu = s.config.mu;
  const double eps = s.config.nlms_epsilon;
  for (std::size_t n = 0; n < m; ++n) {
    const double* newest = s.delay_line.data() + n + taps - 1;
    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += w[k] * *(newest - k);
    // Energy of the full window, recomputed every sample (no running sum to drift).
    double energy = 0.0;
    for (std::size_t k = 0; k < taps; ++k) energy += *(newest - k) * *(newest - k);
    y[n] = acc;
    e[n] = d[n] - acc;
    const double denom = eps + energy;
    if (denom > 0.0) {
      const double g = mu * e[n] / denom;
      for (std::size_t k = 0; k < taps; ++k) w[k] += g * *(newest - k);
    }
  }
  retire_block(s.delay_line, taps, m);
}

void run_rls(FilterState& s, std::span<const double> x, std::span<const double> d, std::span<double> y,
             std::span<double> e) {
  const std::size_t taps = s.config.num_taps;
  const std::size_t m = x.size();
  const double lambda = s.config.rls_lambda;
  const double inv_lambda = 1.0 / lambda;
  std::copy(x.begin(), x.end(), s.delay_line.begin() + static_cast<std::ptrdiff_t>(taps - 1));
  double* w = s.weights.data();
  double* p = s.rls_p.data();
  std::vector<double> u(taps);
  std::vector<double> pu(taps);
  for (std::size_t n = 0; n < m; ++n) {
    const double* newest = s.delay_line.data() + n + taps - 1;
    for (std::size_t k = 0; k < taps; ++k) u[k] = *(newest - k);

    double denom = lambda;
    for (std::size_t i = 0; i < taps; ++i) {
      const double* row = p + i * taps;
      double acc = 0.0;
      for (std::size_t j = 0; j < taps; ++j) acc += row[j] * u[j];
      pu[i] = acc;
      denom += u[i] * acc;
    }

    double acc = 0.0;
    for (std::size_t k = 0; k < taps; ++k) acc += w[k] * u[k];
    y[n] = acc;
    e[n] = d[n] - acc;

    // gain k = Pu / denom; P <- (P - k (Pu)^T) / lambda, symmetrized.
    const double inv_denom = 1.0 / denom;
    for (std::size_t i = 0; i < taps; ++i) w[i] += pu[i] * inv_denom * e[n];
    for (std::size_t i = 0; i < taps; ++i) {
      const double ki = pu[i] * inv_denom;
      for (std::size_t j = i; j < taps; ++j) {
        const double kj = pu[j] * inv_denom;
        const double a = p[i * taps + j] - ki * pu[j];
        const double b = p[j * taps + i] - kj * pu[i];
        const double v = 0.5 * (a + b) * inv_lambda;
        p[i * taps + j] = v;
        p[j * taps + i] = v;
      }
      const double diag = p[i * taps + i];
      if (!(diag > 0.0) || !std::isfinite(diag)) {
        throw NumericError("RLS inverse correlation lost positive definiteness (P[" +
                           std::to_string(i) + "," + std::to_string(i) + "] = " + std::to_string(diag) +
                           ")");
      }
    }
  }
  retire_block(s.delay_line, taps, m);
}

void run_lms_q15(FilterState& s, std::span<const double> x, std::span<const double> d, std::span<double> y,
                 std::span<double> e) {
  const std::size_t taps = s.config.num_taps;
  const std::size_t m = x.size();
  std::size_t& sat = s.saturation_events;
  for (std::size_t n = 0; n < m; ++n) {
    s.delay_line_q15[taps - 1 + n] = q15::from_real(x[n], sat);
  }
  std::int16_t* w = s.weights_q15.data();
  const std::int32_t mu = s.mu_q15;
  for (std::size_t n = 0; n < m; ++n) {
    const std::int16_t* newest = s.delay_line_q15.data() + n + taps - 1;
    std::int32_t acc = 0;
    for (std::size_t k = 0; k < taps; ++k) {
      acc = q15::sat_add32(acc, static_cast<std::int32_t>(w[k]) * *(newest - k), sat);
    }
    const std::int16_t yq = q15::sat16(q15::shift_round(acc, 15), sat);
    const std::int16_t dq = q15::from_real(d[n], sat);
    const std::int16_t eq = q15::sat16(static_cast<std::int32_t>(dq) - yq, sat);
    // mu * e stays in Q30; one rounding shift brings mu * e * x back to Q15.
    const std::int64_t mu_e = static_cast<std::int64_t>(mu) * eq;
    for (std::size_t k = 0; k < taps; ++k) {
      const std::int64_t step = q15::shift_round(mu_e * *(newest - k), 30);
      w[k] = q15::sat16(static_cast<std::int64_t>(w[k]) + step, sat);
    }
    y[n] = q15::to_real(yq);
    e[n] = q15::to_real(eq);
  }
  retire_block(s.delay_line_q15, taps, m);
  for (std::size_t k = 0; k < taps; ++k) s.weights[k] = q15::to_real(w[k]);
  for (std::size_t i = 0; i < s.delay_line.size(); ++i) s.delay_line[i] = q15::to_real(s.delay_line_q15[i]);
}

BlockResult checked_block(FilterState& state, FilterKind expected, std::span<const double> x,
                          std::span<const double> d) {
  if (state.kind != expected) {
    throw ArgumentError("filter state was initialized as " + std::string(to_string(state.kind)) + ", not " +
                        std::string(to_string(expected)));
  }
  if (x.size() != state.config.block_size || d.size() != state.config.block_size) {
    throw ArgumentError("block length must equal block_size (" + std::to_string(state.config.block_size) + ")");
  }
  BlockResult r{std::vector<double>(x.size()), std::vector<double>(x.size())};
  process_block_into(state, x, d, r.y, r.e);
  return r;
}

}  // namespace

void process_block_into(FilterState& state, std::span<const double> x, std::span<const double> d,
                        std::span<double> y, std::span<double> e) {
  check_block(state, x, d, y, e);
  switch (state.kind) {
    case FilterKind::Lms: run_lms(state, x, d, y, e); break;
    case FilterKind::Nlms: run_nlms(state, x, d, y, e); break;
    case FilterKind::Rls: run_rls(state, x, d, y, e); break;
    case FilterKind::LmsQ15: run_lms_q15(state, x, d, y, e); break;
  }
  state.samples_processed += x.size();
}

BlockResult lms_process_block(FilterState& state, std::span<const double> x, std::span<const double> d) {
  return checked_block(state, FilterKind::Lms, x, d);
}

BlockResult nlms_process_block(FilterState& state, std::span<const double> x, std::span<const double> d) {
  return checked_block(state, FilterKind::Nlms, x, d);
}

BlockResult rls_process_block(FilterState& state, std::span<const double> x, std::span<const double> d) {
  return checked_block(state, FilterKind::Rls, x, d);
}

BlockResult lms_process_block_q15(FilterState& state, std::span<const double> x,
                                  std::span<const double> d) {
  return checked_block(state, FilterKind::LmsQ15, x, d);
}

BlockResult process_block(FilterState& state, std::span<const double> x, std::span<const double> d) {
  return checked_block(state, state.kind, x, d);
}

BlockResult filter_signal(FilterKind kind, const FilterConfig& config, std::span<const double> x,
                          std::span<const double> d, FilterState* final_state) {
  if (x.size() != d.size()) throw ArgumentError("x and d must have equal length");
  FilterState state = filter_init(kind, config);
  BlockResult r{std::vector<double>(x.size()), std::vector<double>(x.size())};
  const std::size_t block = config.block_size;
  for (std::size_t start = 0; start < x.size(); start += block) {
    const std::size_t m = std::min(block, x.size() - start);
    process_block_into(state, x.subspan(start, m), d.subspan(start, m),
                       std::span<double>(r.y).subspan(start, m), std::span<double>(r.e).subspan(start, m));
  }
  if (final_state != nullptr) *final_state = std::move(state);
  return r;
}

MultiReferenceNlms::MultiReferenceNlms(std::size_t references, const FilterConfig& config)
    : refs_(references),
      taps_(config.num_taps),
      mu_(config.mu),
      eps_(config.nlms_epsilon),
      weights_(references * config.num_taps, 0.0),
      windows_(references * config.num_taps, 0.0) {
  config.validate(FilterKind::Nlms);
  if (references < 1) throw ArgumentError("need at least one reference input");
}

double MultiReferenceNlms::step(std::span<const double> reference_samples, double desired) {
  if (reference_samples.size() != refs_) throw ArgumentError("reference sample count mismatch");
  double y = 0.0;
  double energy = 0.0;
  for (std::size_t r = 0; r < refs_; ++r) {
    double* win = windows_.data() + r * taps_;
    std::copy_backward(win, win + taps_ - 1, win + taps_);
    win[0] = reference_samples[r];
    const double* w = weights_.data() + r * taps_;
    for (std::size_t k = 0; k < taps_; ++k) {
      y += w[k] * win[k];
      energy += win[k] * win[k];
    }
  }
  const double e = desired - y;
  const double denom = eps_ + energy;
  if (denom > 0.0) {
    const double g = mu_ * e / denom;
    for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] += g * windows_[i];
  }
  return e;
}

}  // namespace anc
