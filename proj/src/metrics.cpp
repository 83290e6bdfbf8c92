// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anc/errors.hpp"

namespace anc {

double snr_db(std::span<const double> clean, std::span<const double> test) {
  if (clean.size() != test.size()) throw ArgumentError("snr_db: length mismatch");
  double signal = 0.0;
  double residual = 0.0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    signal += clean[i] * clean[i];
    const double r = test[i] - clean[i];
    residual += r * r;
  }
  if (signal <= 0.0) throw ArgumentError("snr_db: clean reference is all zero");
  if (residual == 0.0) return kInfiniteSnr;
  return 10.0 * std::log10(signal / residual);
}

double segmental_snr_db(std::span<const double> clean, std::span<const double> test, int sample_rate,
                        double frame_ms, double min_db, double max_db) {
  if (clean.size() != test.size()) throw ArgumentError("segmental_snr_db: length mismatch");
  const auto frame = static_cast<std::size_t>(std::max(1.0, std::round(frame_ms * 1e-3 * sample_rate)));
  const std::size_t frames = clean.size() / frame;
  if (frames == 0) throw ArgumentError("segmental_snr_db: signal shorter than one frame");
  double total = 0.0;
  for (std::size_t f = 0; f < frames; ++f) {
    double signal = 0.0;
    double residual = 0.0;
    for (std::size_t i = f * frame; i < (f + 1) * frame; ++i) {
      signal += clean[i] * clean[i];
      const double r = test[i] - clean[i];
      residual += r * r;
    }
    double v;
    if (residual == 0.0) {
      v = max_db;
    } else if (signal == 0.0) {
      v = min_db;
    } else {
      v = std::clamp(10.0 * std::log10(signal / residual), min_db, max_db);
    }
    total += v;
  }
  return total / static_cast<double>(frames);
}

SnrReport evaluate_denoise(const Scenario& scenario, std::span<const double> output, double warmup_fraction) {
  const auto& clean = scenario.clean.mono();
  const auto& primary = scenario.primary.mono();
  if (output.size() != clean.size()) throw ArgumentError("evaluate_denoise: output length differs from scenario");
  if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
    throw ArgumentError("warm-up fraction must be in [0, 1)");
  }
  const auto skip = static_cast<std::size_t>(std::floor(warmup_fraction * static_cast<double>(clean.size())));
  const std::span<const double> c = std::span<const double>(clean).subspan(skip);
  SnrReport r;
  r.warmup_fraction = warmup_fraction;
  r.snr_in = snr_db(c, std::span<const double>(primary).subspan(skip));
  r.snr_out = snr_db(c, output.subspan(skip));
  r.improvement = r.snr_out - r.snr_in;
  return r;
}

LearningCurve learning_curve(std::span<const double> e, std::size_t block, std::size_t window) {
  if (block < 1) throw ArgumentError("learning_curve: block must be >= 1");
  if (window < 1) throw ArgumentError("learning_curve: window must be >= 1");
  LearningCurve c;
  c.block = block;
  const std::size_t blocks = (e.size() + block - 1) / block;
  c.block_mse.resize(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(e.size(), lo + block);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += e[i] * e[i];
    c.block_mse[b] = acc / static_cast<double>(hi - lo);
  }

  // Window covers [i - (window - 1) / 2, i + window / 2].
  c.smoothed.resize(blocks);
  const std::size_t before = (window - 1) / 2;
  const std::size_t after = window / 2;
  for (std::size_t i = 0; i < blocks; ++i) {
    const std::size_t lo = i >= before ? i - before : 0;
    const std::size_t hi = std::min(blocks - 1, i + after);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += c.block_mse[j];
    c.smoothed[i] = acc / static_cast<double>(hi - lo + 1);
  }

  if (blocks > 0) {
    const std::size_t tail = std::max<std::size_t>(1, (blocks + 9) / 10);
    std::vector<double> last(c.smoothed.end() - static_cast<std::ptrdiff_t>(tail), c.smoothed.end());
    std::sort(last.begin(), last.end());
    c.floor = (tail % 2 == 1) ? last[tail / 2] : 0.5 * (last[tail / 2 - 1] + last[tail / 2]);
  }
  return c;
}

std::size_t convergence_point(const LearningCurve& curve, double margin_db) {
  if (!(margin_db > 0.0)) throw ArgumentError("convergence_point: margin must be positive");
  const double bound = curve.floor * std::pow(10.0, margin_db / 10.0);
  std::size_t index = curve.smoothed.size();
  for (std::size_t i = curve.smoothed.size(); i-- > 0;) {
    if (!(curve.smoothed[i] <= bound)) break;
    index = i;
  }
  if (index == curve.smoothed.size()) {
    throw NoConvergenceError("learning curve never settles within " + std::to_string(margin_db) +
                             " dB of its floor");
  }
  return index;
}

}  // namespace anc
