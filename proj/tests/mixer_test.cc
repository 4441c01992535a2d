// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/mixer.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "cienet/errors.h"
#include "cienet/wav.h"
#include "test_util.h"

namespace cienet {
namespace {

using testing::Rng;
namespace fs = std::filesystem;

Waveform constant(double v, std::size_t n) {
  Waveform w;
  w.samples.assign(n, v);
  return w;
}

double db(double ratio) { return 10.0 * std::log10(ratio); }

TEST(MixTest, GainEqualisesPower) {
  EXPECT_DOUBLE_EQ(interferer_gain(1.0, 4.0, 0.0), 0.5);
  EXPECT_NEAR(interferer_gain(1.0, 1.0, 20.0), 0.1, 1e-15);
}

TEST(MixTest, RealisedSir) {
  Rng rng(1);
  const Waveform t = testing::random_waveform(rng, 4000);
  const Waveform i = testing::random_waveform(rng, 4000);
  for (double sir : {-5.0, 0.0, 2.5, 10.0}) {
    const MixResult r = mix(t, i, sir);
    std::vector<double> scaled = i.samples;
    for (double& v : scaled) v *= r.interferer_gain;
    EXPECT_NEAR(db(mean_power(t.samples) / mean_power(scaled)), sir, 1e-9);
  }
}

TEST(MixTest, TargetAlignedAndUnscaled) {
  Rng rng(2);
  const Waveform t = testing::random_waveform(rng, 900);
  const Waveform i = testing::random_waveform(rng, 700);
  const MixResult r = mix(t, i, 3.0);
  ASSERT_EQ(r.mixture.size(), 700u);
  ASSERT_EQ(r.target.size(), 700u);
  for (std::size_t n = 0; n < 700; ++n) {
    EXPECT_EQ(r.target.samples[n], t.samples[n]);
    EXPECT_NEAR(r.mixture.samples[n] - r.target.samples[n],
                r.interferer_gain * i.samples[n], 1e-15);
  }
}

TEST(MixTest, MixturePowerAtZeroDb) {
  Rng rng(3);
  const Waveform t = testing::random_waveform(rng, 32000);
  Waveform i = testing::random_waveform(rng, 32000);
  for (double& v : i.samples) v *= 3.0;
  const MixResult r = mix(t, i, 0.0);
  const double expected = 2.0 * mean_power(t.samples);
  EXPECT_LT(std::abs(db(mean_power(r.mixture.samples) / expected)), 1.0);
}

TEST(MixTest, NoiseAtRequestedSnr) {
  Rng rng(4);
  const Waveform t = testing::random_waveform(rng, 8000);
  const Waveform i = testing::random_waveform(rng, 8000);
  const Waveform n = testing::random_waveform(rng, 8000);
  const MixResult speech = mix(t, i, 0.0);
  const MixResult noisy = mix(t, i, 0.0, &n, 5.0);
  std::vector<double> scaled = n.samples;
  for (double& v : scaled) v *= noisy.noise_gain;
  EXPECT_NEAR(db(mean_power(speech.mixture.samples) / mean_power(scaled)), 5.0,
              1e-9);
  for (std::size_t k = 0; k < 8000; ++k)
    EXPECT_NEAR(noisy.mixture.samples[k],
                speech.mixture.samples[k] + scaled[k], 1e-14);
}

TEST(MixTest, Errors) {
  const Waveform t = constant(0.5, 100);
  EXPECT_THROW(mix(t, constant(0.0, 100), 0.0), DomainError);
  EXPECT_THROW(mix(constant(0.0, 100), t, 0.0), DomainError);
  Waveform fast = t;
  fast.sample_rate_hz = 16000;
  EXPECT_THROW(mix(t, fast, 0.0), DomainError);
  EXPECT_THROW(mix(t, t, std::numeric_limits<double>::infinity()),
               ParameterError);
  EXPECT_THROW(mix(t, t, 0.0, &t), ParameterError);
  const Waveform silent = constant(0.0, 100);
  EXPECT_THROW(mix(t, t, 0.0, &silent, 0.0), DomainError);
  EXPECT_THROW(mix(Waveform{}, t, 0.0), LengthError);
}

class ManifestTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "cienet_manifest_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    Rng rng(5);
    for (const char* name : {"spkA_01", "spkA_02", "spkA_03", "spkB_01",
                             "spkB_02", "spkC_01"})
      write_wav(testing::random_waveform(rng, 800),
                dir_ / (std::string(name) + ".wav"));
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(ManifestTest, DeterministicAndDisjoint) {
  const ManifestOptions opts{-5.0, 5.0};
  const std::vector<MixtureSpec> a = make_manifest(dir_, 11, 50, opts);
  EXPECT_EQ(a, make_manifest(dir_, 11, 50, opts));
  EXPECT_NE(a, make_manifest(dir_, 12, 50, opts));
  ASSERT_EQ(a.size(), 50u);
  const auto speaker = [](const std::string& p) {
    const std::string stem = fs::path(p).stem().string();
    return stem.substr(0, stem.find('_'));
  };
  for (const MixtureSpec& s : a) {
    EXPECT_NE(s.enrollment_path, s.target_path);
    EXPECT_EQ(speaker(s.enrollment_path), speaker(s.target_path));
    EXPECT_NE(speaker(s.interferer_path), speaker(s.target_path));
    EXPECT_NE(speaker(s.target_path), "spkC");  // only one utterance
    EXPECT_GE(s.sir_db, -5.0);
    EXPECT_LE(s.sir_db, 5.0);
  }
}

TEST_F(ManifestTest, RowsMix) {
  for (const MixtureSpec& s : make_manifest(dir_, 3, 4)) {
    const MixResult r = mix(s);
    EXPECT_EQ(r.mixture.size(), 800u);
  }
}

TEST_F(ManifestTest, JsonLinesRoundtrip) {
  std::vector<MixtureSpec> rows = make_manifest(dir_, 1, 5);
  rows[0].noise_path = "noise.wav";
  rows[0].snr_db = 7.5;
  const std::string line = to_json_line(rows[1]);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  for (const char* key : {"\"target_path\"", "\"interferer_path\"",
                          "\"enrollment_path\"", "\"noise_path\"",
                          "\"sir_db\"", "\"snr_db\"", "\"seed\""})
    EXPECT_NE(line.find(key), std::string::npos) << key;
  EXPECT_EQ(from_json_line(to_json_line(rows[0])), rows[0]);
  const fs::path path = dir_ / "manifest.jsonl";
  write_manifest(rows, path);
  EXPECT_EQ(read_manifest(path), rows);
  EXPECT_THROW(from_json_line("{\"sir_db\": 1}"), ConfigError);
}

TEST_F(ManifestTest, InsufficientSpeakers) {
  for (const char* name : {"spkB_01", "spkB_02", "spkC_01"})
    fs::remove(dir_ / (std::string(name) + ".wav"));
  EXPECT_THROW(make_manifest(dir_, 1, 3), ConfigError);
  EXPECT_THROW(make_manifest(dir_ / "missing", 1, 3), IoError);
}

TEST_F(ManifestTest, SameUtteranceEnrollmentRejected) {
  MixtureSpec s = make_manifest(dir_, 1, 1)[0];
  s.enrollment_path = s.target_path;
  EXPECT_THROW(mix(s), ConfigError);
}

}  // namespace
}  // namespace cienet
