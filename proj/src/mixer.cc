// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/mixer.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>

#include "cienet/errors.h"
#include "cienet/wav.h"
#include "json.hpp"

namespace cienet {
namespace {

using json = nlohmann::json;

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t pick(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

}  // namespace

double mean_power(const std::vector<double>& x) {
  if (x.empty()) return 0.0;
  double s = 0.0;
  for (double v : x) s += v * v;
  return s / static_cast<double>(x.size());
}

double interferer_gain(double target_power, double interferer_power,
                       double sir_db) {
  if (!(target_power > 0.0) || !(interferer_power > 0.0))
    throw DomainError("source has zero power");
  if (!std::isfinite(sir_db))
    throw ParameterError("SIR must be finite (two speakers are required)");
  return std::sqrt(target_power / interferer_power) *
         std::pow(10.0, -sir_db / 20.0);
}

MixResult mix(const Waveform& target, const Waveform& interferer,
              double sir_db, const Waveform* noise,
              std::optional<double> snr_db) {
  if (interferer.sample_rate_hz != target.sample_rate_hz ||
      (noise && noise->sample_rate_hz != target.sample_rate_hz))
    throw DomainError("sources have different sample rates");
  if (noise && !snr_db)
    throw ParameterError("noise given without an SNR");
  if (snr_db && !std::isfinite(*snr_db))
    throw ParameterError("SNR must be finite");
  validate(target);
  validate(interferer);
  if (noise) validate(*noise);

  std::size_t len = std::min(target.size(), interferer.size());
  if (noise) len = std::min(len, noise->size());
  if (len == 0) throw LengthError("a source is empty");

  MixResult r;
  r.target.sample_rate_hz = target.sample_rate_hz;
  r.target.samples.assign(target.samples.begin(),
                          target.samples.begin() + static_cast<long>(len));
  const std::vector<double> zi(interferer.samples.begin(),
                               interferer.samples.begin() +
                                   static_cast<long>(len));
  r.interferer_gain =
      interferer_gain(mean_power(r.target.samples), mean_power(zi), sir_db);

  r.mixture.sample_rate_hz = target.sample_rate_hz;
  r.mixture.samples.resize(len);
  for (std::size_t i = 0; i < len; ++i)
    r.mixture.samples[i] = r.target.samples[i] + r.interferer_gain * zi[i];

  if (noise) {
    const std::vector<double> n(noise->samples.begin(),
                                noise->samples.begin() +
                                    static_cast<long>(len));
    const double noise_power = mean_power(n);
    if (!(noise_power > 0.0)) throw DomainError("noise has zero power");
    r.noise_gain = std::sqrt(mean_power(r.mixture.samples) / noise_power) *
                   std::pow(10.0, -*snr_db / 20.0);
    for (std::size_t i = 0; i < len; ++i)
      r.mixture.samples[i] += r.noise_gain * n[i];
  }
  return r;
}

MixResult mix(const MixtureSpec& spec) {
  if (spec.enrollment_path == spec.target_path)
    throw ConfigError("enrollment must differ from the mixed target utterance");
  const Waveform target = read_wav(spec.target_path);
  const Waveform interferer = read_wav(spec.interferer_path);
  if (spec.noise_path) {
    const Waveform noise = read_wav(*spec.noise_path);
    return mix(target, interferer, spec.sir_db, &noise, spec.snr_db);
  }
  return mix(target, interferer, spec.sir_db, nullptr, spec.snr_db);
}

std::vector<MixtureSpec> make_manifest(const std::filesystem::path& dir,
                                       std::uint64_t seed, std::size_t count,
                                       const ManifestOptions& options) {
  if (!std::filesystem::is_directory(dir))
    throw IoError(dir.string() + " is not a directory");
  if (options.sir_db_max < options.sir_db_min)
    throw ParameterError("SIR range is empty");

  // Sorted so the pairing does not depend on directory iteration order.
  std::map<std::string, std::vector<std::string>> by_speaker;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".wav")
      continue;
    const std::string stem = entry.path().stem().string();
    const auto cut = stem.find('_');
    if (cut == std::string::npos || cut == 0) continue;
    by_speaker[stem.substr(0, cut)].push_back(entry.path().string());
  }
  for (auto& [speaker, files] : by_speaker)
    std::sort(files.begin(), files.end());

  std::vector<std::string> speakers;
  std::vector<std::string> targets;
  for (const auto& [speaker, files] : by_speaker) {
    speakers.push_back(speaker);
    if (files.size() >= 2) targets.push_back(speaker);
  }
  if (speakers.size() < 2)
    throw ConfigError("need files from at least two speakers in " +
                      dir.string());
  if (targets.empty())
    throw ConfigError("no speaker has a second utterance for enrollment");

  std::mt19937_64 rng(seed);
  std::vector<MixtureSpec> rows;
  rows.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::string& tspk = targets[pick(rng, targets.size())];
    const auto& tfiles = by_speaker[tspk];
    const std::size_t ti = pick(rng, tfiles.size());
    std::size_t ei = pick(rng, tfiles.size() - 1);
    if (ei >= ti) ++ei;

    const auto tidx = static_cast<std::size_t>(
        std::find(speakers.begin(), speakers.end(), tspk) - speakers.begin());
    std::size_t si = pick(rng, speakers.size() - 1);
    if (si >= tidx) ++si;
    const auto& ifiles = by_speaker[speakers[si]];

    MixtureSpec spec;
    spec.target_path = tfiles[ti];
    spec.enrollment_path = tfiles[ei];
    spec.interferer_path = ifiles[pick(rng, ifiles.size())];
    spec.sir_db = options.sir_db_min +
                  (options.sir_db_max - options.sir_db_min) * unit_uniform(rng);
    spec.seed = rng();
    rows.push_back(std::move(spec));
  }
  return rows;
}

std::string to_json_line(const MixtureSpec& spec) {
  json j = {{"target_path", spec.target_path},
            {"interferer_path", spec.interferer_path},
            {"enrollment_path", spec.enrollment_path},
            {"noise_path", nullptr},
            {"sir_db", spec.sir_db},
            {"snr_db", nullptr},
            {"seed", spec.seed}};
  if (spec.noise_path) j["noise_path"] = *spec.noise_path;
  if (spec.snr_db) j["snr_db"] = *spec.snr_db;
  return j.dump();
}

MixtureSpec from_json_line(const std::string& line) {
  try {
    const json j = json::parse(line);
    MixtureSpec spec;
    spec.target_path = j.at("target_path").get<std::string>();
    spec.interferer_path = j.at("interferer_path").get<std::string>();
    spec.enrollment_path = j.at("enrollment_path").get<std::string>();
    if (j.contains("noise_path") && !j["noise_path"].is_null())
      spec.noise_path = j["noise_path"].get<std::string>();
    spec.sir_db = j.at("sir_db").get<double>();
    if (j.contains("snr_db") && !j["snr_db"].is_null())
      spec.snr_db = j["snr_db"].get<double>();
    spec.seed = j.at("seed").get<std::uint64_t>();
    return spec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad manifest line: ") + e.what());
  }
}

void write_manifest(const std::vector<MixtureSpec>& rows,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (const MixtureSpec& row : rows) out << to_json_line(row) << '\n';
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<MixtureSpec> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<MixtureSpec> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) rows.push_back(from_json_line(line));
  return rows;
}

}  // namespace cienet
