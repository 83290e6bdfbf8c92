// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <mutex>
#include <optional>
#include <vector>

#include "anc/adaptive_filters.hpp"
#include "anc/signal_synth.hpp"

namespace anc {

/// Seconds available to process one block before the next one lands.
double budget(std::size_t block_size, double sample_rate);

struct DeadlineReport {
  double block_budget = 0.0;
  std::vector<double> per_block_times;
  double max_time = 0.0;
  std::size_t overruns = 0;
  double headroom = 0.0;  // block_budget / max_time
  std::size_t padded_samples = 0;
  std::size_t exclusion_violations = 0;
};

/// Two half-buffers handed back and forth between a producer (the DMA
/// analogue) and a consumer (the filter). Each half carries one block of the
/// reference and desired streams, which advance in lockstep.
///
/// Ownership moves only through the acquire/publish/release calls; an
/// independent pair of atomic markers records any moment when both sides touch
/// the same half, which must never happen.
class PingPongBuffer {
 public:
  struct Half {
    std::vector<double> x;
    std::vector<double> d;
    std::size_t valid = 0;
    std::size_t block_index = 0;
  };

  explicit PingPongBuffer(std::size_t block_size);

  /// Waits until the next half in turn is free. Returns nullopt once closed.
  std::optional<std::size_t> acquire_for_fill();
  /// Half-transfer complete: hands the half to the consumer.
  void publish(std::size_t half);

  /// Waits for the next filled half; nullopt when closed and drained.
  std::optional<std::size_t> acquire_for_process();
  void release(std::size_t half);

  /// No more blocks. Pending filled halves are still delivered.
  void close();
  /// Stops both sides immediately.
  void abort();

  Half& half(std::size_t index) { return halves_[index]; }

  std::size_t violations() const { return violations_.load(); }
  std::size_t fills(std::size_t half) const { return fills_[half]; }

 private:
  enum class State { Free, Filling, Ready, Processing };

  void enter(std::atomic<bool>& mine, const std::atomic<bool>& theirs);

  std::array<Half, 2> halves_;
  std::array<State, 2> state_{State::Free, State::Free};
  std::array<std::size_t, 2> fills_{0, 0};
  std::size_t next_fill_ = 0;
  std::size_t next_process_ = 0;
  bool closed_ = false;
  bool aborted_ = false;
  std::mutex mutex_;
  std::condition_variable cv_;

  std::array<std::atomic<bool>, 2> producer_on_{};
  std::array<std::atomic<bool>, 2> consumer_on_{};
  std::atomic<std::size_t> violations_{0};
};

enum class StreamMode {
  Threaded,     // producer thread + consumer thread
  Interleaved,  // one thread: stage block k + 1, then filter block k
};

struct StreamOptions {
  StreamMode mode = StreamMode::Threaded;
  bool paced = false;  // producer releases blocks at the real sample rate
};

struct StreamResult {
  AudioClip output;  // the error signal e, i.e. the denoised estimate
  std::vector<double> y;
  DeadlineReport deadline;
  FilterState final_state;
  std::array<std::size_t, 2> half_fills{0, 0};
};

/// Streams the scenario through the ping-pong discipline. Filter errors
/// surface as StreamError carrying the block index.
StreamResult run_stream(const Scenario& scenario, FilterKind kind, const FilterConfig& config,
                        const StreamOptions& options = {});

}  // namespace anc
