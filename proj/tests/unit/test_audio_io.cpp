// Copyright anc contributors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "anc/audio_io.hpp"
#include "anc/errors.hpp"
#include "doctest.h"

using namespace anc;

namespace {

void put16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(v & 0xFF);
  b.push_back(v >> 8);
}
void put32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back((v >> (8 * i)) & 0xFF);
}
void put_tag(std::vector<std::uint8_t>& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

// Hand-assembled WAV, independent of the encoder under test.
std::vector<std::uint8_t> wav_bytes(std::uint16_t format, std::uint16_t channels, std::uint32_t rate,
                                    std::uint16_t bits, const std::vector<std::uint8_t>& data) {
  std::vector<std::uint8_t> b;
  put_tag(b, "RIFF");
  put32(b, static_cast<std::uint32_t>(36 + data.size()));
  put_tag(b, "WAVE");
  put_tag(b, "fmt ");
  put32(b, 16);
  put16(b, format);
  put16(b, channels);
  put32(b, rate);
  put32(b, rate * channels * bits / 8);
  put16(b, static_cast<std::uint16_t>(channels * bits / 8));
  put16(b, bits);
  put_tag(b, "data");
  put32(b, static_cast<std::uint32_t>(data.size()));
  b.insert(b.end(), data.begin(), data.end());
  return b;
}

std::uint16_t word_at(const std::vector<std::uint8_t>& wav, std::size_t index) {
  return static_cast<std::uint16_t>(wav[44 + 2 * index] | (wav[44 + 2 * index + 1] << 8));
}

double sqnr_db(int bits) {
  std::vector<double> s(48000);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = std::sin(2.0 * std::numbers::pi * 997.0 * i / 48000.0);
  const auto q = quantize(AudioClip(s, 48000), QuantizationSpec(bits)).mono();
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    ps += s[i] * s[i];
    pn += (q[i] - s[i]) * (q[i] - s[i]);
  }
  return 10.0 * std::log10(ps / pn);
}

}  // namespace

TEST_CASE("decode a single 16-bit sample") {
  const auto clip = decode_wav(wav_bytes(1, 1, 48000, 16, {0x00, 0x40}));
  CHECK(clip.channel_count() == 1);
  CHECK(clip.sample_rate == 48000);
  REQUIRE(clip.frames() == 1);
  CHECK(clip.mono()[0] == 0.5);
}

TEST_CASE("decode all-zero 16-bit data") {
  const auto clip = decode_wav(wav_bytes(1, 2, 8000, 16, std::vector<std::uint8_t>(16, 0)));
  CHECK(clip.channel_count() == 2);
  CHECK(clip.frames() == 4);
  for (const auto& ch : clip.channels) {
    for (double v : ch) CHECK(v == 0.0);
  }
}

TEST_CASE("decode 24-bit little-endian with sign extension") {
  // 0x7FFFFF, 0x800000, 0xFFFFFF
  const auto clip = decode_wav(wav_bytes(1, 1, 48000, 24, {0xFF, 0xFF, 0x7F, 0x00, 0x00, 0x80, 0xFF, 0xFF, 0xFF}));
  REQUIRE(clip.frames() == 3);
  CHECK(clip.mono()[0] == 8388607.0 / 8388608.0);
  CHECK(clip.mono()[1] == -1.0);
  CHECK(clip.mono()[2] == -1.0 / 8388608.0);
}

TEST_CASE("24-bit sine round trip stays within one 24-bit step") {
  std::vector<double> s(4800);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = 0.9 * std::sin(2.0 * std::numbers::pi * 1000.0 * i / 48000.0);
  const auto back = decode_wav(encode_wav(AudioClip(s, 48000), 24));
  REQUIRE(back.frames() == s.size());
  for (std::size_t i = 0; i < s.size(); ++i) CHECK(std::abs(back.mono()[i] - s[i]) <= std::ldexp(1.0, -23));
}

TEST_CASE("encode writes the expected PCM words") {
  CHECK(word_at(encode_wav(AudioClip(std::vector<double>{0.5}, 48000), 16), 0) == 0x4000);
  CHECK(word_at(encode_wav(AudioClip(std::vector<double>{1.5}, 48000), 16), 0) == 0x7FFF);
  CHECK(word_at(encode_wav(AudioClip(std::vector<double>{-1.5}, 48000), 16), 0) == 0x8000);
  CHECK(word_at(encode_wav(AudioClip(std::vector<double>{-1.0}, 48000), 16), 0) == 0x8000);
}

TEST_CASE("16-bit round trip is bit-exact on the grid") {
  std::mt19937 gen(7);
  std::uniform_int_distribution<int> word(-32768, 32767);
  std::vector<double> s(1000);
  for (double& v : s) v = word(gen) / 32768.0;
  const AudioClip clip(s, 44100);
  CHECK(decode_wav(encode_wav(clip, 16)) == clip);
}

TEST_CASE("stereo round trip keeps channel order") {
  const AudioClip clip(std::vector<std::vector<double>>{{0.25, -0.5}, {0.125, 0.0}}, 16000);
  CHECK(decode_wav(encode_wav(clip, 24)) == clip);
  CHECK(decode_wav(encode_wav(clip, 16)) == clip);
}

TEST_CASE("encoding an empty clip is rejected") {
  CHECK_THROWS_AS(encode_wav(AudioClip(std::vector<double>{}, 48000), 16), EmptyInputError);
}

TEST_CASE("malformed and unsupported inputs") {
  auto good = wav_bytes(1, 1, 48000, 16, {0x00, 0x40});
  SUBCASE("not RIFF") {
    auto bad = good;
    bad[0] = 'X';
    CHECK_THROWS_AS(decode_wav(bad), FormatError);
  }
  SUBCASE("truncated") {
    good.resize(30);
    CHECK_THROWS_AS(decode_wav(good), FormatError);
  }
  SUBCASE("float samples") { CHECK_THROWS_AS(decode_wav(wav_bytes(3, 1, 48000, 32, {0, 0, 0, 0})), UnsupportedFormatError); }
  SUBCASE("8-bit") { CHECK_THROWS_AS(decode_wav(wav_bytes(1, 1, 48000, 8, {0x80})), UnsupportedFormatError); }
  SUBCASE("three channels") {
    CHECK_THROWS_AS(decode_wav(wav_bytes(1, 3, 48000, 16, std::vector<std::uint8_t>(6, 0))), UnsupportedFormatError);
  }
  SUBCASE("empty input") { CHECK_THROWS_AS(decode_wav(std::vector<std::uint8_t>{}), FormatError); }
}

TEST_CASE("frame packing examples") {
  CHECK(frame_pack(0x123456).raw == 0x12345600u);
  CHECK(frame_pack(0).raw == 0u);
  CHECK(frame_pack(-1).raw == 0xFFFFFF00u);
  CHECK(frame_unpack(PcmFrame32{0x12345600u}) == 0x123456);
  CHECK(frame_unpack(PcmFrame32{0u}) == 0);
  CHECK(frame_unpack(PcmFrame32{0xFFFFFF00u}) == -1);
  const PcmFrame32 f{0x12345600u};
  CHECK(f.high_half() == 0x1234);
  CHECK(f.low_half() == 0x5600);
  CHECK_THROWS_AS(frame_pack(kPcm24Max + 1), RangeError);
  CHECK_THROWS_AS(frame_pack(kPcm24Min - 1), RangeError);
}

TEST_CASE("frame pack/unpack round trip over random and boundary samples") {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<std::int32_t> any24(kPcm24Min, kPcm24Max);
  std::size_t failures = 0;
  auto check = [&](std::int32_t s) {
    const auto f = frame_pack(s);
    if ((f.raw & 0xFFu) != 0 || frame_unpack(f) != s) ++failures;
  };
  for (int i = 0; i < 1000000; ++i) check(any24(gen));
  for (std::int32_t s : {kPcm24Min, kPcm24Min + 1, -1, 0, 1, kPcm24Max - 1, kPcm24Max}) check(s);
  CHECK(failures == 0);
}

TEST_CASE("quantization grid") {
  CHECK(quantize_sample(0.9, 2) == 0.5);
  CHECK(quantize_sample(-0.9, 2) == -1.0);
  CHECK(quantize_sample(0.25, 2) == 0.5);  // half away from zero
  CHECK(quantize_sample(-0.25, 2) == -0.5);
  CHECK(quantize_sample(1.0, 2) == 0.5);  // saturates at the top level
  CHECK_THROWS_AS(QuantizationSpec(1), RangeError);
  CHECK_THROWS_AS(QuantizationSpec(25), RangeError);
}

TEST_CASE("24-bit quantization leaves 24-bit grid values alone") {
  std::mt19937 gen(3);
  std::uniform_int_distribution<std::int32_t> any24(kPcm24Min, kPcm24Max);
  std::vector<double> s(2000);
  for (double& v : s) v = any24(gen) / 8388608.0;
  const AudioClip clip(s, 48000);
  CHECK(quantize(clip, QuantizationSpec(24)) == clip);
}

TEST_CASE("quantization is idempotent") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  std::vector<double> s(2000);
  for (double& v : s) v = u(gen);
  for (int bits : {2, 7, 12, 16}) {
    const auto once = quantize(AudioClip(s, 48000), QuantizationSpec(bits));
    CHECK(quantize(once, QuantizationSpec(bits)) == once);
  }
}

TEST_CASE("12-bit SQNR matches the 6.02 dB per bit rule") {
  CHECK(std::abs(sqnr_db(12) - 74.0) <= 1.5);
}

TEST_CASE("SQNR rises with every extra bit") {
  double prev = sqnr_db(2);
  for (int bits = 3; bits <= 24; ++bits) {
    const double cur = sqnr_db(bits);
    CHECK_MESSAGE(cur > prev, "bits = " << bits);
    prev = cur;
  }
}
