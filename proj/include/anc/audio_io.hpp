// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace anc {

/// Normalized multichannel audio. Samples are dimensionless, nominally in
/// [-1, 1]; every channel has the same length.
struct AudioClip {
  std::vector<std::vector<double>> channels;
  int sample_rate = 48000;

  AudioClip() = default;
  AudioClip(std::vector<double> mono, int rate);
  AudioClip(std::vector<std::vector<double>> chans, int rate);

  std::size_t channel_count() const { return channels.size(); }
  std::size_t frames() const { return channels.empty() ? 0 : channels.front().size(); }
  bool empty() const { return frames() == 0; }

  const std::vector<double>& mono() const { return channels.at(0); }

  /// Throws ArgumentError on ragged channels, no channels, or a non-positive rate.
  void validate() const;

  friend bool operator==(const AudioClip&, const AudioClip&) = default;
};

/// One 24-bit sample carried left-aligned in a 32-bit slot: the sample sits in
/// bits 31..8 and the low byte is padding.
struct PcmFrame32 {
  std::uint32_t raw = 0;

  /// Bits 31..16.
  std::uint16_t high_half() const { return static_cast<std::uint16_t>(raw >> 16); }
  /// Bits 15..0. The low byte of this half-word is always padding.
  std::uint16_t low_half() const { return static_cast<std::uint16_t>(raw & 0xFFFFu); }

  friend bool operator==(PcmFrame32, PcmFrame32) = default;
};

inline constexpr std::int32_t kPcm24Min = -(1 << 23);
inline constexpr std::int32_t kPcm24Max = (1 << 23) - 1;

/// Throws RangeError when `sample` does not fit in 24 bits.
PcmFrame32 frame_pack(std::int32_t sample);

/// Sign-extends bits 31..8. Padding bits are ignored.
std::int32_t frame_unpack(PcmFrame32 frame);

/// Bit depth of a uniform quantizer, 2..24.
class QuantizationSpec {
 public:
  explicit QuantizationSpec(int bits);
  int bits() const { return bits_; }

 private:
  int bits_;
};

/// Rounds half away from zero onto the grid k / 2^(bits-1),
/// k in [-2^(bits-1), 2^(bits-1) - 1], saturating at the ends.
double quantize_sample(double v, int bits);

AudioClip quantize(const AudioClip& clip, QuantizationSpec spec);

/// Decodes an uncompressed PCM RIFF/WAVE image (16 or 24 bit, 1 or 2 channels).
AudioClip decode_wav(std::span<const std::uint8_t> bytes);

/// Encodes as PCM at 16 or 24 bits; out-of-range samples saturate.
std::vector<std::uint8_t> encode_wav(const AudioClip& clip, int bits);

AudioClip read_wav(const std::filesystem::path& path);
void write_wav(const std::filesystem::path& path, const AudioClip& clip, int bits);

}  // namespace anc
