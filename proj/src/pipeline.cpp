// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>
#include <span>
#include <string>
#include <thread>

#include "anc/errors.hpp"

namespace anc {

double budget(std::size_t block_size, double sample_rate) {
  if (block_size == 0 || !(sample_rate > 0.0)) throw ArgumentError("budget needs a positive block and rate");
  return static_cast<double>(block_size) / sample_rate;
}

PingPongBuffer::PingPongBuffer(std::size_t block_size) {
  for (auto& h : halves_) {
    h.x.assign(block_size, 0.0);
    h.d.assign(block_size, 0.0);
  }
}

void PingPongBuffer::enter(std::atomic<bool>& mine, const std::atomic<bool>& theirs) {
  mine.store(true);
  if (theirs.load()) ++violations_;
}

std::optional<std::size_t> PingPongBuffer::acquire_for_fill() {
  std::unique_lock lock(mutex_);
  const std::size_t h = next_fill_;
  cv_.wait(lock, [&] { return aborted_ || closed_ || state_[h] == State::Free; });
  if (aborted_ || closed_) return std::nullopt;
  state_[h] = State::Filling;
  next_fill_ ^= 1u;
  ++fills_[h];
  lock.unlock();
  enter(producer_on_[h], consumer_on_[h]);
  return h;
}

void PingPongBuffer::publish(std::size_t half) {
  producer_on_[half].store(false);
  {
    std::lock_guard lock(mutex_);
    state_[half] = State::Ready;
  }
  cv_.notify_all();
}

std::optional<std::size_t> PingPongBuffer::acquire_for_process() {
  std::unique_lock lock(mutex_);
  const std::size_t h = next_process_;
  cv_.wait(lock, [&] { return aborted_ || state_[h] == State::Ready || (closed_ && state_[h] != State::Filling); });
  if (aborted_ || state_[h] != State::Ready) return std::nullopt;
  state_[h] = State::Processing;
  next_process_ ^= 1u;
  lock.unlock();
  enter(consumer_on_[h], producer_on_[h]);
  return h;
}

void PingPongBuffer::release(std::size_t half) {
  consumer_on_[half].store(false);
  {
    std::lock_guard lock(mutex_);
    state_[half] = State::Free;
  }
  cv_.notify_all();
}

void PingPongBuffer::close() {
  {
    std::lock_guard lock(mutex_);
    closed_ = true;
  }
  cv_.notify_all();
}

void PingPongBuffer::abort() {
  {
    std::lock_guard lock(mutex_);
    aborted_ = true;
  }
  cv_.notify_all();
}

namespace {

using Clock = std::chrono::steady_clock;

struct StreamJob {
  std::span<const double> x;
  std::span<const double> d;
  std::size_t block = 0;
  std::size_t blocks = 0;
  double block_seconds = 0.0;
  bool paced = false;
  Clock::time_point start;
};

/// DMA analogue: copies block k into the half, zero-padding the tail.
void stage(const StreamJob& job, PingPongBuffer::Half& half, std::size_t k) {
  const std::size_t begin = k * job.block;
  const std::size_t valid = std::min(job.block, job.x.size() - begin);
  std::copy_n(job.x.begin() + static_cast<std::ptrdiff_t>(begin), valid, half.x.begin());
  std::copy_n(job.d.begin() + static_cast<std::ptrdiff_t>(begin), valid, half.d.begin());
  std::fill(half.x.begin() + static_cast<std::ptrdiff_t>(valid), half.x.end(), 0.0);
  std::fill(half.d.begin() + static_cast<std::ptrdiff_t>(valid), half.d.end(), 0.0);
  half.valid = valid;
  half.block_index = k;
  if (job.paced) {
    // A block is complete only once its last sample has "arrived".
    std::this_thread::sleep_until(job.start + std::chrono::duration_cast<Clock::duration>(
                                                  std::chrono::duration<double>(job.block_seconds * (k + 1))));
  }
}

class Consumer {
 public:
  Consumer(FilterState& state, std::size_t total, std::size_t block)
      : state_(state), e_(total), y_(total), y_block_(block), e_block_(block) {}

  void process(const PingPongBuffer::Half& half, DeadlineReport& report) {
    const auto t0 = Clock::now();
    try {
      process_block_into(state_, half.x, half.d, y_block_, e_block_);
    } catch (const NumericError& err) {
      throw StreamError(half.block_index, err.what());
    }
    report.per_block_times.push_back(std::chrono::duration<double>(Clock::now() - t0).count());
    const std::size_t begin = half.block_index * half.x.size();
    std::copy_n(e_block_.begin(), half.valid, e_.begin() + static_cast<std::ptrdiff_t>(begin));
    std::copy_n(y_block_.begin(), half.valid, y_.begin() + static_cast<std::ptrdiff_t>(begin));
  }

  std::vector<double> take_e() { return std::move(e_); }
  std::vector<double> take_y() { return std::move(y_); }

 private:
  FilterState& state_;
  std::vector<double> e_;
  std::vector<double> y_;
  std::vector<double> y_block_;
  std::vector<double> e_block_;
};

}  // namespace

StreamResult run_stream(const Scenario& scenario, FilterKind kind, const FilterConfig& config,
                        const StreamOptions& options) {
  const auto& x = scenario.reference.mono();
  const auto& d = scenario.primary.mono();
  if (x.size() != d.size()) throw ArgumentError("reference and primary differ in length");
  const std::size_t block = config.block_size;
  if (x.size() < 2 * block) throw ArgumentError("scenario shorter than two blocks");

  FilterState state = filter_init(kind, config);
  PingPongBuffer buffer(block);
  StreamJob job;
  job.x = x;
  job.d = d;
  job.block = block;
  job.blocks = (x.size() + block - 1) / block;
  job.block_seconds = budget(block, scenario.primary.sample_rate);
  job.paced = options.paced;

  StreamResult result;
  DeadlineReport& report = result.deadline;
  report.block_budget = job.block_seconds;
  report.padded_samples = job.blocks * block - x.size();
  report.per_block_times.reserve(job.blocks);
  Consumer consumer(state, x.size(), block);
  job.start = Clock::now();

  if (options.mode == StreamMode::Interleaved) {
    auto first = buffer.acquire_for_fill();
    stage(job, buffer.half(*first), 0);
    buffer.publish(*first);
    for (std::size_t k = 0; k < job.blocks; ++k) {
      if (k + 1 < job.blocks) {
        const auto h = buffer.acquire_for_fill();
        stage(job, buffer.half(*h), k + 1);
        buffer.publish(*h);
      } else {
        buffer.close();
      }
      const auto h = buffer.acquire_for_process();
      consumer.process(buffer.half(*h), report);
      buffer.release(*h);
    }
  } else {
    std::exception_ptr producer_error;
    std::jthread producer([&] {
      try {
        for (std::size_t k = 0; k < job.blocks; ++k) {
          const auto h = buffer.acquire_for_fill();
          if (!h) return;
          stage(job, buffer.half(*h), k);
          buffer.publish(*h);
        }
        buffer.close();
      } catch (...) {
        producer_error = std::current_exception();
        buffer.abort();
      }
    });
    try {
      while (const auto h = buffer.acquire_for_process()) {
        consumer.process(buffer.half(*h), report);
        buffer.release(*h);
      }
    } catch (...) {
      buffer.abort();
      throw;
    }
    producer.join();
    if (producer_error) std::rethrow_exception(producer_error);
  }

  if (report.per_block_times.size() != job.blocks) throw Error("stream ended before every block was filtered");
  report.max_time = *std::max_element(report.per_block_times.begin(), report.per_block_times.end());
  report.overruns = static_cast<std::size_t>(std::count_if(report.per_block_times.begin(), report.per_block_times.end(),
                                                           [&](double t) { return t > report.block_budget; }));
  report.headroom = report.max_time > 0.0 ? report.block_budget / report.max_time : std::numeric_limits<double>::infinity();
  report.exclusion_violations = buffer.violations();

  result.output = AudioClip(consumer.take_e(), scenario.primary.sample_rate);
  result.y = consumer.take_y();
  result.final_state = std::move(state);
  result.half_fills = {buffer.fills(0), buffer.fills(1)};
  return result;
}

}  // namespace anc
