// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "anc/adaptive_filters.hpp"

namespace anc {

/// Uniform linear array. Mic m sits at m * spacing metres on a straight line.
struct ArrayGeometry {
  std::size_t mic_count = 2;
  double spacing = 0.05;  // metres
  double speed_of_sound = 343.0;
  int sample_rate = 48000;

  void validate() const;
};

/// Per-mic fractional sample delays; the smallest is always 0.
struct SteeringDelays {
  std::vector<double> delays;
};

SteeringDelays steering_delays(const ArrayGeometry& geom, double angle);

/// Delays `channel` by a fractional number of samples with linear
/// interpolation; samples before the start read as zero.
std::vector<double> fractional_delay(std::span<const double> channel, double delay);

/// Aligns every channel by its steering delay and averages.
std::vector<double> delay_and_sum(const std::vector<std::vector<double>>& channels,
                                  const SteeringDelays& delays);

/// Largest spacing free of spatial aliasing up to f_max: c / (2 f_max).
double max_spacing(double f_max, double speed_of_sound = 343.0);

/// Fixed delay-and-sum branch plus an NLMS sidelobe canceller fed by the
/// differences of adjacent steered channels. The differences block the steered
/// source, so the canceller only removes what leaks in from other directions.
std::vector<double> filter_and_sum_adaptive(const std::vector<std::vector<double>>& channels,
                                            const ArrayGeometry& geom, double angle,
                                            const FilterConfig& cfg);

/// Blind array-gain estimate for a coherent source in spatially white noise.
///
/// Source power is the mean cross-covariance between distinct aligned
/// channels; per-mic noise is what remains of each channel's power, and the
/// output noise is the output power minus the source power.
struct ArrayGainEstimate {
  double source_power = 0.0;
  double input_noise_power = 0.0;
  double output_noise_power = 0.0;
  double snr_in_db = 0.0;
  double snr_out_db = 0.0;
  double gain_db = 0.0;
};

ArrayGainEstimate estimate_array_gain(const std::vector<std::vector<double>>& channels,
                                      const SteeringDelays& delays, std::span<const double> output);

}  // namespace anc
