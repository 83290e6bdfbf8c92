// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "anc/signal_synth.hpp"

namespace anc {

/// Returned by snr_db when the residual is exactly zero.
inline constexpr double kInfiniteSnr = std::numeric_limits<double>::infinity();

/// 10 log10(sum clean^2 / sum (test - clean)^2).
double snr_db(std::span<const double> clean, std::span<const double> test);

/// Frame-wise SNR averaged in dB. Each frame is clamped to [min_db, max_db].
/// A perceptual-adjacent indicator only; not comparable to STOI or PESQ.
double segmental_snr_db(std::span<const double> clean, std::span<const double> test, int sample_rate,
                        double frame_ms = 20.0, double min_db = -10.0, double max_db = 35.0);

struct SnrReport {
  double snr_in = 0.0;
  double snr_out = 0.0;
  double improvement = 0.0;
  double warmup_fraction = 0.25;
};

/// Scores `output` against the scenario's clean signal. Both the input and
/// the output SNR are measured over the same post-warm-up span, so identity
/// processing scores exactly 0 dB.
SnrReport evaluate_denoise(const Scenario& scenario, std::span<const double> output,
                           double warmup_fraction = 0.25);

struct LearningCurve {
  std::vector<double> block_mse;
  std::vector<double> smoothed;
  double floor = 0.0;
  std::size_t block = 1;
};

/// Per-block mean of e^2, a centered moving average of `window` blocks
/// (truncated at the edges), and the median of the last 10 % as the floor.
LearningCurve learning_curve(std::span<const double> e, std::size_t block, std::size_t window);

/// First block index from which the smoothed curve stays within margin_db of
/// the floor. Throws NoConvergenceError when no such index exists.
std::size_t convergence_point(const LearningCurve& curve, double margin_db);

}  // namespace anc
