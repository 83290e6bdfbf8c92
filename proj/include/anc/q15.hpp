// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>

namespace anc::q15 {

inline constexpr std::int32_t kOne = 1 << 15;
inline constexpr std::int32_t kMax = std::numeric_limits<std::int16_t>::max();
inline constexpr std::int32_t kMin = std::numeric_limits<std::int16_t>::min();

/// Saturates to int16 and bumps `events` when clipping occurred.
inline std::int16_t sat16(std::int64_t v, std::size_t& events) {
  if (v > kMax) {
    ++events;
    return static_cast<std::int16_t>(kMax);
  }
  if (v < kMin) {
    ++events;
    return static_cast<std::int16_t>(kMin);
  }
  return static_cast<std::int16_t>(v);
}

/// Saturating 32-bit accumulate.
inline std::int32_t sat_add32(std::int32_t acc, std::int32_t v, std::size_t& events) {
  const std::int64_t s = static_cast<std::int64_t>(acc) + v;
  if (s > std::numeric_limits<std::int32_t>::max()) {
    ++events;
    return std::numeric_limits<std::int32_t>::max();
  }
  if (s < std::numeric_limits<std::int32_t>::min()) {
    ++events;
    return std::numeric_limits<std::int32_t>::min();
  }
  return static_cast<std::int32_t>(s);
}

/// Rounding right shift.
inline std::int64_t shift_round(std::int64_t v, int shift) {
  return (v + (std::int64_t{1} << (shift - 1))) >> shift;
}

inline std::int16_t from_real(double v, std::size_t& events) {
  if (!std::isfinite(v)) {
    ++events;
    return v > 0 ? static_cast<std::int16_t>(kMax) : static_cast<std::int16_t>(kMin);
  }
  const double scaled = std::round(v * kOne);
  if (scaled > kMax) return sat16(kMax + 1, events);
  if (scaled < kMin) return sat16(kMin - 1, events);
  return static_cast<std::int16_t>(scaled);
}

inline double to_real(std::int32_t v) { return static_cast<double>(v) / kOne; }

}  // namespace anc::q15
