// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Two-speaker mixture synthesis y = z_t + g_i z_i (+ g_n n) and seeded
// manifest generation.

#ifndef CIENET_MIXER_H_
#define CIENET_MIXER_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cienet/dsp.h"

namespace cienet {

struct MixtureSpec {
  std::string target_path;
  std::string interferer_path;
  std::string enrollment_path;
  std::optional<std::string> noise_path;
  double sir_db = 0.0;
  std::optional<double> snr_db;
  std::uint64_t seed = 0;

  bool operator==(const MixtureSpec&) const = default;
};

struct MixResult {
  Waveform mixture;
  Waveform target;  // unscaled, sample-aligned with its share of `mixture`
  double interferer_gain = 0.0;
  double noise_gain = 0.0;
};

double mean_power(const std::vector<double>& x);

// Gain that puts `interferer` `sir_db` below `target` in mean power.
double interferer_gain(double target_power, double interferer_power,
                       double sir_db);

// Mixes in-memory sources. All inputs are truncated to the shortest one.
// Throws DomainError on rate mismatch or a zero-power source.
MixResult mix(const Waveform& target, const Waveform& interferer,
              double sir_db, const Waveform* noise = nullptr,
              std::optional<double> snr_db = std::nullopt);

// Loads the referenced WAV files and mixes them.
MixResult mix(const MixtureSpec& spec);

struct ManifestOptions {
  double sir_db_min = 0.0;
  double sir_db_max = 0.0;
};

// Pairs files named "<speaker>_<utterance>.wav" found in `dir`. Throws
// ConfigError when fewer than two speakers exist or no speaker has two
// utterances for a disjoint enrollment.
std::vector<MixtureSpec> make_manifest(const std::filesystem::path& dir,
                                       std::uint64_t seed, std::size_t count,
                                       const ManifestOptions& options = {});

std::string to_json_line(const MixtureSpec& spec);
MixtureSpec from_json_line(const std::string& line);
void write_manifest(const std::vector<MixtureSpec>& rows,
                    const std::filesystem::path& path);
std::vector<MixtureSpec> read_manifest(const std::filesystem::path& path);

}  // namespace cienet

#endif  // CIENET_MIXER_H_
