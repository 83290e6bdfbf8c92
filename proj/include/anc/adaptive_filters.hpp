// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace anc {

enum class FilterKind { Lms, Nlms, Rls, LmsQ15 };

std::string_view to_string(FilterKind kind);
/// Accepts lms | nlms | rls | lms-q15. Throws ArgumentError otherwise.
FilterKind parse_filter_kind(std::string_view name);

struct FilterConfig {
  std::size_t num_taps = 96;
  std::size_t block_size = 256;
  double mu = 0.01;
  double nlms_epsilon = 1e-6;
  double rls_lambda = 0.999;
  double rls_delta = 100.0;

  /// Throws ConfigError naming the offending field. mu == 0 is accepted as a
  /// frozen filter.
  void validate(FilterKind kind) const;
};

/// Adaptive filter memory.
///
/// The delay line follows the block layout of CMSIS-style FIR state buffers:
/// num_taps - 1 samples of history followed by room for one block, oldest
/// first. Sample n of the current block sees x[n - k] at
/// delay_line[n + num_taps - 1 - k].
struct FilterState {
  FilterKind kind = FilterKind::Lms;
  FilterConfig config;
  std::vector<double> weights;
  std::vector<double> delay_line;
  std::vector<double> rls_p;  // num_taps x num_taps, row-major; RLS only

  // Fixed-point mirror, LMS_Q15 only. `weights` tracks weights_q15 / 2^15.
  std::vector<std::int16_t> weights_q15;
  std::vector<std::int16_t> delay_line_q15;
  std::int16_t mu_q15 = 0;
  std::size_t saturation_events = 0;

  std::size_t samples_processed = 0;
};

struct BlockResult {
  std::vector<double> y;
  std::vector<double> e;
};

FilterState filter_init(FilterKind kind, const FilterConfig& config);

// Block entry points: |x| == |d| == block_size, samples adapt one at a time.
BlockResult lms_process_block(FilterState& state, std::span<const double> x, std::span<const double> d);
BlockResult nlms_process_block(FilterState& state, std::span<const double> x, std::span<const double> d);
BlockResult rls_process_block(FilterState& state, std::span<const double> x, std::span<const double> d);
BlockResult lms_process_block_q15(FilterState& state, std::span<const double> x,
                                  std::span<const double> d);

/// Dispatches on state.kind.
BlockResult process_block(FilterState& state, std::span<const double> x, std::span<const double> d);

/// Allocation-free dispatch writing into caller buffers. Accepts any length
/// from 1 to block_size so a trailing partial block can be filtered.
void process_block_into(FilterState& state, std::span<const double> x, std::span<const double> d,
                        std::span<double> y, std::span<double> e);

/// Runs a whole signal through a fresh filter, block by block.
BlockResult filter_signal(FilterKind kind, const FilterConfig& config, std::span<const double> x,
                          std::span<const double> d, FilterState* final_state = nullptr);

/// NLMS over several reference inputs sharing one error, each with its own
/// num_taps-long FIR. Normalization uses the summed energy of all windows.
class MultiReferenceNlms {
 public:
  MultiReferenceNlms(std::size_t references, const FilterConfig& config);

  /// Pushes one sample per reference and returns e = desired - y.
  double step(std::span<const double> reference_samples, double desired);

  const std::vector<double>& weights() const { return weights_; }

 private:
  std::size_t refs_;
  std::size_t taps_;
  double mu_;
  double eps_;
  std::vector<double> weights_;  // refs x taps
  std::vector<double> windows_;  // refs x taps, newest first
};

}  // namespace anc
