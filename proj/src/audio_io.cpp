// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include "anc/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "anc/errors.hpp"

namespace anc {

AudioClip::AudioClip(std::vector<double> mono, int rate) : sample_rate(rate) {
  channels.push_back(std::move(mono));
}

AudioClip::AudioClip(std::vector<std::vector<double>> chans, int rate)
    : channels(std::move(chans)), sample_rate(rate) {}

void AudioClip::validate() const {
  if (channels.empty()) throw ArgumentError("audio clip has no channels");
  if (sample_rate <= 0) throw ArgumentError("audio clip sample rate must be positive");
  for (const auto& ch : channels) {
    if (ch.size() != channels.front().size()) {
      throw ArgumentError("audio clip channels differ in length");
    }
  }
}

PcmFrame32 frame_pack(std::int32_t sample) {
  if (sample < kPcm24Min || sample > kPcm24Max) {
    throw RangeError("sample " + std::to_string(sample) + " does not fit in 24 bits");
  }
  return PcmFrame32{static_cast<std::uint32_t>(sample) << 8};
}

std::int32_t frame_unpack(PcmFrame32 frame) {
  // Arithmetic shift of the reinterpreted word sign-extends bit 31.
  return static_cast<std::int32_t>(frame.raw) >> 8;
}

QuantizationSpec::QuantizationSpec(int bits) : bits_(bits) {
  if (bits < 2 || bits > 24) {
    throw RangeError("quantization depth must be in [2, 24], got " + std::to_string(bits));
  }
}

namespace {

std::int32_t to_pcm(double v, int bits) {
  const double scale = std::ldexp(1.0, bits - 1);
  const double lo = -scale;
  const double hi = scale - 1.0;
  if (std::isnan(v)) return 0;
  // std::round is half-away-from-zero.
  const double q = std::round(v * scale);
  return static_cast<std::int32_t>(std::clamp(q, lo, hi));
}

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

bool tag_is(const std::uint8_t* p, const char* tag) { return std::memcmp(p, tag, 4) == 0; }

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

double quantize_sample(double v, int bits) {
  return std::ldexp(static_cast<double>(to_pcm(v, bits)), -(bits - 1));
}

AudioClip quantize(const AudioClip& clip, QuantizationSpec spec) {
  AudioClip out = clip;
  for (auto& ch : out.channels) {
    for (auto& s : ch) s = quantize_sample(s, spec.bits());
  }
  return out;
}

AudioClip decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || !tag_is(bytes.data(), "RIFF") || !tag_is(bytes.data() + 8, "WAVE")) {
    throw FormatError("not a RIFF/WAVE container");
  }

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
  std::span<const std::uint8_t> data;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* hdr = bytes.data() + pos;
    const std::uint32_t size = read_u32(hdr + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) throw FormatError("chunk extends past end of file");

    if (tag_is(hdr, "fmt ")) {
      if (size < 16) throw FormatError("fmt chunk too short");
      const std::uint8_t* f = bytes.data() + body;
      format = read_u16(f);
      channels = read_u16(f + 2);
      rate = read_u32(f + 4);
      block_align = read_u16(f + 12);
      bits = read_u16(f + 14);
      if (format == kFormatExtensible) {
        // The first two bytes of the subformat GUID carry the real format tag.
        if (size < 40) throw FormatError("extensible fmt chunk too short");
        format = read_u16(f + 24);
      }
      have_fmt = true;
    } else if (tag_is(hdr, "data")) {
      data = bytes.subspan(body, size);
      have_data = true;
    }
    // Chunks are word aligned.
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) throw FormatError("missing fmt chunk");
  if (!have_data) throw FormatError("missing data chunk");
  if (format != kFormatPcm) {
    throw UnsupportedFormatError("unsupported WAV format tag " + std::to_string(format));
  }
  if (bits != 16 && bits != 24) {
    throw UnsupportedFormatError("unsupported bit depth " + std::to_string(bits));
  }
  if (channels < 1 || channels > 2) {
    throw UnsupportedFormatError("unsupported channel count " + std::to_string(channels));
  }
  if (rate == 0) throw FormatError("sample rate is zero");
  const std::size_t bytes_per_sample = bits / 8;
  if (block_align != channels * bytes_per_sample) throw FormatError("inconsistent block alignment");
  if (data.size() % block_align != 0) throw FormatError("data chunk holds a partial frame");

  const std::size_t frames = data.size() / block_align;
  AudioClip clip;
  clip.sample_rate = static_cast<int>(rate);
  clip.channels.assign(channels, std::vector<double>(frames));
  const std::uint8_t* p = data.data();
  for (std::size_t n = 0; n < frames; ++n) {
    for (std::size_t c = 0; c < channels; ++c) {
      if (bits == 16) {
        const auto v = static_cast<std::int16_t>(read_u16(p));
        clip.channels[c][n] = static_cast<double>(v) / 32768.0;
      } else {
        const PcmFrame32 frame{(static_cast<std::uint32_t>(p[0]) << 8) |
                               (static_cast<std::uint32_t>(p[1]) << 16) |
                               (static_cast<std::uint32_t>(p[2]) << 24)};
        clip.channels[c][n] = std::ldexp(static_cast<double>(frame_unpack(frame)), -23);
      }
      p += bytes_per_sample;
    }
  }
  return clip;
}

std::vector<std::uint8_t> encode_wav(const AudioClip& clip, int bits) {
  if (clip.channels.empty() || clip.frames() == 0) throw EmptyInputError("cannot encode an empty clip");
  clip.validate();
  if (bits != 16 && bits != 24) {
    throw UnsupportedFormatError("unsupported bit depth " + std::to_string(bits));
  }
  if (clip.channel_count() > 2) {
    throw UnsupportedFormatError("WAV output supports at most 2 channels");
  }

  const auto channels = static_cast<std::uint16_t>(clip.channel_count());
  const std::uint16_t bytes_per_sample = static_cast<std::uint16_t>(bits / 8);
  const std::uint16_t block_align = static_cast<std::uint16_t>(channels * bytes_per_sample);
  const std::size_t data_size = clip.frames() * block_align;
  if (data_size > 0xFFFFFFFFull - 36) throw RangeError("clip too long for a RIFF container");

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size + 1);
  put_tag(out, "RIFF");
  put_u32(out, static_cast<std::uint32_t>(36 + data_size + (data_size & 1u)));
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, channels);
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * block_align);
  put_u16(out, block_align);
  put_u16(out, static_cast<std::uint16_t>(bits));
  put_tag(out, "data");
  put_u32(out, static_cast<std::uint32_t>(data_size));

  for (std::size_t n = 0; n < clip.frames(); ++n) {
    for (const auto& ch : clip.channels) {
      const std::int32_t v = to_pcm(ch[n], bits);
      if (bits == 16) {
        put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
      } else {
        const std::uint32_t raw = frame_pack(v).raw;
        out.push_back(static_cast<std::uint8_t>((raw >> 8) & 0xFF));
        out.push_back(static_cast<std::uint8_t>((raw >> 16) & 0xFF));
        out.push_back(static_cast<std::uint8_t>((raw >> 24) & 0xFF));
      }
    }
  }
  if (data_size & 1u) out.push_back(0);
  return out;
}

AudioClip read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading " + path.string());
  return decode_wav(bytes);
}

void write_wav(const std::filesystem::path& path, const AudioClip& clip, int bits) {
  const auto bytes = encode_wav(clip, bits);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace anc
