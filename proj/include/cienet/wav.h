// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// 16-bit PCM mono RIFF/WAVE reader and writer.

#ifndef CIENET_WAV_H_
#define CIENET_WAV_H_

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cienet/dsp.h"

namespace cienet {

double pcm16_to_float(std::int16_t v);
std::int16_t float_to_pcm16(double v);

std::vector<std::uint8_t> encode_wav(const Waveform& w);
// Throws FormatError for malformed RIFF data and DomainError for valid
// files that are not 16-bit mono PCM.
Waveform decode_wav(const std::vector<std::uint8_t>& bytes);

Waveform read_wav(const std::filesystem::path& path);
void write_wav(const Waveform& w, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path,
                const std::vector<std::uint8_t>& bytes);

}  // namespace cienet

#endif  // CIENET_WAV_H_
