// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Fixed STFT analysis / WOLA synthesis and magnitude dynamic-range
// compression of complex spectra.

#ifndef CIENET_DSP_H_
#define CIENET_DSP_H_

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "cienet/tensor.h"

namespace cienet {

inline constexpr int kDefaultSampleRate = 8000;

struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = kDefaultSampleRate;

  std::size_t size() const { return samples.size(); }
};

// Throws DomainError if any sample is non-finite or the rate is not positive.
void validate(const Waveform& x);

struct FramingConfig {
  std::size_t window_len = 256;
  std::size_t hop = 128;
  std::vector<double> window;

  // Periodic Hann window: w[n] = 0.5 - 0.5 cos(2 pi n / window_len).
  static FramingConfig hann(std::size_t window_len, std::size_t hop);
  // 32 ms / 16 ms at 8 kHz.
  static FramingConfig defaults() { return hann(256, 128); }

  std::size_t bins() const { return window_len / 2 + 1; }

  bool operator==(const FramingConfig&) const = default;
};

std::vector<double> periodic_hann(std::size_t n);

// T x F complex spectrogram stored as separate real and imaginary planes.
struct ComplexSpectrogram {
  RealMatrix real;
  RealMatrix imag;
  FramingConfig framing;
  std::size_t original_len = 0;
  // Set once magnitudes have been raised to this power by drc().
  std::optional<double> compressed_with_alpha;

  std::size_t frames() const { return real.rows(); }
  std::size_t bins() const { return real.cols(); }
  bool compressed() const { return compressed_with_alpha.has_value(); }

  std::complex<double> at(std::size_t t, std::size_t f) const {
    return {real(t, f), imag(t, f)};
  }
  void set(std::size_t t, std::size_t f, std::complex<double> z) {
    real(t, f) = z.real();
    imag(t, f) = z.imag();
  }
};

// Number of frames produced for a signal of `len` samples (len >= window).
std::size_t frame_count(std::size_t len, const FramingConfig& cfg);

ComplexSpectrogram stft(const Waveform& x, const FramingConfig& cfg);

// Returns a waveform at `sample_rate_hz` truncated to X.original_len.
Waveform istft(const ComplexSpectrogram& X,
               int sample_rate_hz = kDefaultSampleRate);

ComplexSpectrogram drc(const ComplexSpectrogram& X, double alpha);
ComplexSpectrogram idrc(const ComplexSpectrogram& X);

// Single-bin forms of the compression law. Zero maps to zero.
std::complex<double> compress_bin(std::complex<double> z, double alpha);
std::complex<double> expand_bin(std::complex<double> z, double alpha);

// In-place radix-2 FFT for power-of-two sizes and a direct DFT otherwise.
// `inverse` computes the unnormalised inverse transform.
void fft(std::vector<std::complex<double>>& data, bool inverse = false);

}  // namespace cienet

#endif  // CIENET_DSP_H_
