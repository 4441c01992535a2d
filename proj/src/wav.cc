// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "cienet/errors.h"

namespace cienet {
namespace {

std::uint32_t le32(const std::vector<std::uint8_t>& b, std::size_t pos) {
  return static_cast<std::uint32_t>(b[pos]) |
         static_cast<std::uint32_t>(b[pos + 1]) << 8 |
         static_cast<std::uint32_t>(b[pos + 2]) << 16 |
         static_cast<std::uint32_t>(b[pos + 3]) << 24;
}

std::uint16_t le16(const std::vector<std::uint8_t>& b, std::size_t pos) {
  return static_cast<std::uint16_t>(b[pos] | b[pos + 1] << 8);
}

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back(v >> 8);
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) {
  out.insert(out.end(), tag, tag + 4);
}

bool tag_is(const std::vector<std::uint8_t>& b, std::size_t pos,
            const char* tag) {
  return std::memcmp(b.data() + pos, tag, 4) == 0;
}

}  // namespace

double pcm16_to_float(std::int16_t v) { return v / 32768.0; }

std::int16_t float_to_pcm16(double v) {
  const double clamped = std::clamp(v, -1.0, 1.0 - 1.0 / 32768.0);
  return static_cast<std::int16_t>(std::lround(clamped * 32768.0));
}

std::vector<std::uint8_t> encode_wav(const Waveform& w) {
  validate(w);
  const auto data_bytes = static_cast<std::uint32_t>(2 * w.size());
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, 1);  // PCM
  put16(out, 1);  // mono
  put32(out, static_cast<std::uint32_t>(w.sample_rate_hz));
  put32(out, static_cast<std::uint32_t>(w.sample_rate_hz) * 2);
  put16(out, 2);
  put16(out, 16);
  put_tag(out, "data");
  put32(out, data_bytes);
  for (double s : w.samples)
    put16(out, static_cast<std::uint16_t>(float_to_pcm16(s)));
  return out;
}

Waveform decode_wav(const std::vector<std::uint8_t>& b) {
  if (b.size() < 12 || !tag_is(b, 0, "RIFF") || !tag_is(b, 8, "WAVE"))
    throw FormatError("not a RIFF/WAVE file", 0);

  bool have_fmt = false;
  Waveform w;
  std::size_t pos = 12;
  while (pos + 8 <= b.size()) {
    const std::uint32_t size = le32(b, pos + 4);
    const std::size_t body = pos + 8;
    if (size > b.size() - body)
      throw FormatError("chunk extends past end of file", pos);
    if (tag_is(b, pos, "fmt ")) {
      if (size < 16) throw FormatError("fmt chunk too small", pos);
      const std::uint16_t format = le16(b, body);
      const std::uint16_t channels = le16(b, body + 2);
      const std::uint32_t rate = le32(b, body + 4);
      const std::uint16_t bits = le16(b, body + 14);
      if (format != 1)
        throw DomainError("only PCM WAV is supported (format tag " +
                          std::to_string(format) + ")");
      if (channels != 1)
        throw DomainError("only mono WAV is supported (" +
                          std::to_string(channels) + " channels)");
      if (bits != 16)
        throw DomainError("only 16-bit WAV is supported (" +
                          std::to_string(bits) + " bits)");
      if (rate == 0 || rate > 1'000'000)
        throw FormatError("implausible sample rate", body + 4);
      w.sample_rate_hz = static_cast<int>(rate);
      have_fmt = true;
    } else if (tag_is(b, pos, "data")) {
      if (!have_fmt) throw FormatError("data chunk before fmt chunk", pos);
      const std::size_t n = size / 2;
      w.samples.resize(n);
      for (std::size_t i = 0; i < n; ++i)
        w.samples[i] =
            pcm16_to_float(static_cast<std::int16_t>(le16(b, body + 2 * i)));
      return w;
    }
    pos = body + size + (size & 1);
  }
  throw FormatError("no data chunk", b.size());
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path,
                const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

Waveform read_wav(const std::filesystem::path& path) {
  try {
    return decode_wav(read_file(path));
  } catch (const FormatError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_wav(const Waveform& w, const std::filesystem::path& path) {
  write_file(path, encode_wav(w));
}

}  // namespace cienet
