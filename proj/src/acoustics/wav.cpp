// Copyright 2026 The phonapprox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phonapprox/acoustics/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include "phonapprox/error.hpp"

namespace phonapprox::acoustics {

namespace {

std::uint32_t le32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t le16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put32(std::ostream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                     static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(b, 4);
}

void put16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(b, 2);
}

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

}  // namespace

AudioClip read_wav(std::istream& source) {
  const std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(source),
                                         std::istreambuf_iterator<char>()};
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("not a RIFF/WAVE file");
  }
  bool have_fmt = false;
  int rate = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const auto* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      throw DataError("truncated '" + std::string(reinterpret_cast<const char*>(chunk), 4) + "' chunk");
    }
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw DataError("truncated 'fmt ' chunk");
      std::uint16_t format = le16(chunk + 8);
      const std::uint16_t channels = le16(chunk + 10);
      rate = static_cast<int>(le32(chunk + 12));
      const std::uint16_t bits = le16(chunk + 22);
      if (format == kFormatExtensible && size >= 26) format = le16(chunk + 32);
      if (format != kFormatPcm) throw DataError("unsupported WAVE format tag " + std::to_string(format) + " (need PCM)");
      if (channels != 1) throw DataError("expected mono audio, got " + std::to_string(channels) + " channels");
      if (bits != 16) throw DataError("expected 16-bit samples, got " + std::to_string(bits));
      if (rate <= 0) throw DataError("invalid sample rate");
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw DataError("'data' chunk before 'fmt ' chunk");
      if (size % 2 != 0) throw DataError("truncated 'data' chunk");
      AudioClip clip;
      clip.sample_rate = rate;
      clip.samples.resize(size / 2);
      for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        const auto v = static_cast<std::int16_t>(le16(bytes.data() + body + 2 * i));
        clip.samples[i] = v / 32768.0;
      }
      if (clip.samples.empty()) throw DataError("empty 'data' chunk");
      return clip;
    }
    pos = body + size + (size & 1);
  }
  throw DataError(have_fmt ? "missing 'data' chunk" : "missing 'fmt ' chunk");
}

AudioClip read_wav_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open WAV file: " + path);
  try {
    return read_wav(in);
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_wav(std::ostream& out, const AudioClip& clip) {
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
  out.write("RIFF", 4);
  put32(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, 1);
  put32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  out.write("data", 4);
  put32(out, data_bytes);
  for (double s : clip.samples) {
    const double v = std::lround(std::clamp(s, -1.0, 1.0) * 32767.0);
    put16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }
}

void write_wav_file(const std::string& path, const AudioClip& clip) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write WAV file: " + path);
  write_wav(out, clip);
}

}  // namespace phonapprox::acoustics
