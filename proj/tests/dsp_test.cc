// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/dsp.h"

#include <gtest/gtest.h>

#include <cmath>

#include "cienet/errors.h"
#include "test_util.h"

namespace cienet {
namespace {

using testing::Rng;

TEST(FramingTest, FrameCountArithmetic) {
  const FramingConfig cfg = FramingConfig::defaults();
  EXPECT_EQ(frame_count(256, cfg), 1u);
  EXPECT_EQ(frame_count(16000, cfg), 124u);
  EXPECT_EQ(frame_count(257, cfg), 2u);
  EXPECT_EQ(frame_count(384, cfg), 2u);
  EXPECT_EQ(cfg.bins(), 129u);
}

TEST(FramingTest, DefaultWindowIsCola) {
  const FramingConfig cfg = FramingConfig::defaults();
  ASSERT_EQ(cfg.window.size(), 256u);
  for (std::size_t i = 0; i < 128; ++i) {
    EXPECT_NEAR(cfg.window[i] + cfg.window[i + 128], 1.0, 1e-15);
    EXPECT_GT(cfg.window[i], 0.0);
  }
}

TEST(StftTest, RejectsSignalShorterThanWindow) {
  Waveform x;
  x.samples.assign(255, 0.1);
  EXPECT_THROW(stft(x, FramingConfig::defaults()), LengthError);
}

TEST(StftTest, ShapesAndOriginalLength) {
  Waveform x;
  x.samples.assign(16000, 0.0);
  const ComplexSpectrogram s = stft(x, FramingConfig::defaults());
  EXPECT_EQ(s.frames(), 124u);
  EXPECT_EQ(s.bins(), 129u);
  EXPECT_EQ(s.original_len, 16000u);
  EXPECT_FALSE(s.compressed());
}

TEST(StftTest, MatchesDirectDftOfWindowedFrame) {
  Rng rng(7);
  const Waveform x = testing::random_waveform(rng, 1000);
  const FramingConfig cfg = FramingConfig::defaults();
  const ComplexSpectrogram s = stft(x, cfg);
  for (std::size_t t : {std::size_t{0}, std::size_t{3}, s.frames() - 1}) {
    std::vector<double> frame(cfg.window_len, 0.0);
    for (std::size_t i = 0; i < cfg.window_len; ++i) {
      const std::size_t idx = t * cfg.hop + i;
      frame[i] = cfg.window[i] * (idx < x.size() ? x.samples[idx] : 0.0);
    }
    for (std::size_t k = 0; k < cfg.bins(); k += 7) {
      const std::complex<double> want = testing::direct_dft_bin(frame, k);
      EXPECT_NEAR(s.real(t, k), want.real(), 1e-10);
      EXPECT_NEAR(s.imag(t, k), want.imag(), 1e-10);
    }
  }
}

TEST(StftTest, ToneConcentratesInItsBin) {
  Waveform x;
  x.samples.resize(8000);
  for (std::size_t i = 0; i < x.size(); ++i)
    x.samples[i] = std::cos(2.0 * std::numbers::pi * 1000.0 * i / 8000.0);
  const FramingConfig cfg = FramingConfig::defaults();
  const ComplexSpectrogram s = stft(x, cfg);

  for (std::size_t t = 1; t + 1 < s.frames(); ++t) {
    // Interior frames only: the last one is partly zero padding.
    if (t * cfg.hop + cfg.window_len > x.size()) continue;
    std::vector<double> frame(cfg.window_len);
    for (std::size_t i = 0; i < cfg.window_len; ++i)
      frame[i] = cfg.window[i] * x.samples[t * cfg.hop + i];
    const double peak = std::norm(testing::direct_dft_bin(frame, 32));
    EXPECT_NEAR(std::norm(s.at(t, 32)), peak, 1e-8 * peak);
    for (std::size_t k = 0; k < s.bins(); ++k) {
      EXPECT_LE(std::norm(s.at(t, k)), peak * (1.0 + 1e-12));
      if (k + 1 < 32 || k > 33) {
        EXPECT_LT(10.0 * std::log10(std::norm(s.at(t, k)) / peak + 1e-300),
                  -40.0)
            << "frame " << t << " bin " << k;
      }
    }
  }
}

TEST(IstftTest, ReconstructsRandomSignals) {
  Rng rng(11);
  for (std::size_t len : {256u, 257u, 1000u, 8000u, 16000u, 16001u}) {
    const Waveform x = testing::random_waveform(rng, len);
    const Waveform y = istft(stft(x, FramingConfig::defaults()));
    ASSERT_EQ(y.size(), len);
    EXPECT_LT(testing::rel_l2(y.samples, x.samples), 1e-6) << "len " << len;
  }
}

TEST(IstftTest, ReconstructsWithNonPowerOfTwoWindow) {
  Rng rng(12);
  const Waveform x = testing::random_waveform(rng, 3000);
  const Waveform y = istft(stft(x, FramingConfig::hann(200, 100)));
  EXPECT_LT(testing::rel_l2(y.samples, x.samples), 1e-6);
}

TEST(IstftTest, ZeroSpectrogramGivesZeroSignal) {
  Waveform x;
  x.samples.assign(1234, 0.0);
  ComplexSpectrogram s = stft(x, FramingConfig::defaults());
  const Waveform y = istft(s);
  ASSERT_EQ(y.size(), 1234u);
  for (double v : y.samples) EXPECT_EQ(v, 0.0);
}

TEST(IstftTest, RejectsCompressedInput) {
  Rng rng(3);
  const ComplexSpectrogram s =
      drc(stft(testing::random_waveform(rng, 512), FramingConfig::defaults()),
          0.5);
  EXPECT_THROW(istft(s), DomainError);
}

// The periodic Hann window is zero at n = 0, so without head padding the
// first sample never reaches any frame.
TEST(IstftTest, PeriodicHannLosesFirstSample) {
  FramingConfig cfg = FramingConfig::defaults();
  cfg.window = periodic_hann(cfg.window_len);
  Waveform x;
  x.samples.assign(1024, 0.0);
  x.samples[0] = 1.0;
  x.samples[500] = 1.0;
  const Waveform y = istft(stft(x, cfg));
  EXPECT_EQ(y.samples[0], 0.0);
  EXPECT_NEAR(y.samples[500], 1.0, 1e-9);
}

TEST(FftTest, MatchesDirectDft) {
  Rng rng(5);
  for (std::size_t n : {1u, 2u, 8u, 64u, 12u, 15u}) {
    std::vector<std::complex<double>> a(n);
    for (auto& z : a) z = {rng.uniform(), rng.uniform()};
    std::vector<std::complex<double>> b = a;
    fft(b);
    for (std::size_t k = 0; k < n; ++k) {
      std::complex<double> want = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        want += a[j] * std::polar(1.0, -2.0 * std::numbers::pi * j * k / n);
      EXPECT_NEAR(std::abs(b[k] - want), 0.0, 1e-12) << "n=" << n;
    }
    fft(b, /*inverse=*/true);
    for (std::size_t j = 0; j < n; ++j)
      EXPECT_NEAR(std::abs(b[j] / static_cast<double>(n) - a[j]), 0.0, 1e-13);
  }
}

TEST(DrcTest, WorkedBin) {
  const std::complex<double> z = compress_bin({3.0, 4.0}, 0.5);
  EXPECT_NEAR(z.real(), std::sqrt(5.0) * 3.0 / 5.0, 1e-12);
  EXPECT_NEAR(z.imag(), std::sqrt(5.0) * 4.0 / 5.0, 1e-12);
  EXPECT_NEAR(z.real(), 1.34164, 1e-5);
  EXPECT_NEAR(z.imag(), 1.78885, 1e-5);
}

TEST(DrcTest, ZeroStaysZero) {
  for (double alpha : {0.1, 0.5, 1.0}) {
    EXPECT_EQ(compress_bin(0.0, alpha), std::complex<double>(0.0));
    EXPECT_EQ(expand_bin(0.0, alpha), std::complex<double>(0.0));
  }
}

TEST(DrcTest, ExpandDoublesMagnitudeLaw) {
  const std::complex<double> z = std::polar(2.0, 0.7);
  const std::complex<double> w = expand_bin(z, 0.5);
  EXPECT_NEAR(std::abs(w), 4.0, 1e-12);
  EXPECT_NEAR(std::arg(w), 0.7, 1e-12);
}

TEST(DrcTest, AlphaOneIsExactIdentity) {
  Rng rng(9);
  const ComplexSpectrogram x =
      stft(testing::random_waveform(rng, 2000), FramingConfig::defaults());
  const ComplexSpectrogram c = drc(x, 1.0);
  EXPECT_EQ(c.real, x.real);
  EXPECT_EQ(c.imag, x.imag);
  const ComplexSpectrogram back = idrc(c);
  EXPECT_EQ(back.real, x.real);
  EXPECT_EQ(back.imag, x.imag);
}

TEST(DrcTest, RejectsAlphaOutsideUnitInterval) {
  Rng rng(1);
  const ComplexSpectrogram x =
      stft(testing::random_waveform(rng, 300), FramingConfig::defaults());
  for (double alpha : {0.0, -0.5, 1.5, std::nan("")})
    EXPECT_THROW(drc(x, alpha), ParameterError) << alpha;
}

TEST(DrcTest, DomainChecks) {
  Rng rng(1);
  const ComplexSpectrogram x =
      stft(testing::random_waveform(rng, 300), FramingConfig::defaults());
  EXPECT_THROW(idrc(x), DomainError);
  EXPECT_THROW(drc(drc(x, 0.5), 0.5), DomainError);
  EXPECT_EQ(drc(x, 0.3).compressed_with_alpha, 0.3);
  EXPECT_FALSE(idrc(drc(x, 0.3)).compressed());
}

TEST(DrcTest, PhaseAndMagnitudeLaws) {
  Rng rng(21);
  const ComplexSpectrogram x =
      stft(testing::random_waveform(rng, 4000), FramingConfig::defaults());
  for (double alpha : {0.2, 0.5, 0.9}) {
    const ComplexSpectrogram c = drc(x, alpha);
    const ComplexSpectrogram back = idrc(c);
    for (std::size_t t = 0; t < x.frames(); ++t)
      for (std::size_t f = 0; f < x.bins(); ++f) {
        const std::complex<double> z = x.at(t, f);
        const std::complex<double> w = c.at(t, f);
        ASSERT_GT(std::abs(z), 0.0);
        EXPECT_NEAR(std::abs(w), std::pow(std::abs(z), alpha),
                    1e-12 * std::max(1.0, std::abs(w)));
        EXPECT_NEAR(std::abs(w / std::abs(w) - z / std::abs(z)), 0.0, 1e-9);
        EXPECT_LT(std::abs(back.at(t, f) - z), 1e-6 * std::abs(z));
      }
  }
}

TEST(WaveformTest, ValidateRejectsNonFinite) {
  Waveform x;
  x.samples = {0.0, std::nan(""), 1.0};
  EXPECT_THROW(validate(x), DomainError);
  x.samples[1] = 0.5;
  EXPECT_NO_THROW(validate(x));
  x.sample_rate_hz = 0;
  EXPECT_THROW(validate(x), DomainError);
}

}  // namespace
}  // namespace cienet
