// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/dsp.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cienet/errors.h"

namespace cienet {
namespace {

// Envelope values below this are clamped before the WOLA division. The
// squared edge value of the default 256-point window is ~1.4e-9.
constexpr double kEnvelopeFloor = 1e-12;

bool is_power_of_two(std::size_t n) { return n && !(n & (n - 1)); }

void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      // Twiddles computed directly rather than by recurrence to keep the
      // error at machine precision for long transforms.
      const double ang = sign * 2.0 * std::numbers::pi * k / len;
      const std::complex<double> w(std::cos(ang), std::sin(ang));
      for (std::size_t i = 0; i < n; i += len) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

void dft_direct(std::vector<std::complex<double>>& a, bool inverse) {
  const std::size_t n = a.size();
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>((j * k) % n) / n;
      acc += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = acc;
  }
  a = std::move(out);
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ParameterError("DRC exponent must lie in (0, 1], got " +
                         std::to_string(alpha));
  }
}

void check_framing(const FramingConfig& cfg) {
  if (cfg.window_len < 2 || cfg.hop == 0 || cfg.hop > cfg.window_len)
    throw ParameterError("invalid framing: window " +
                         std::to_string(cfg.window_len) + ", hop " +
                         std::to_string(cfg.hop));
  if (cfg.window.size() != cfg.window_len)
    throw ShapeError("window has " + std::to_string(cfg.window.size()) +
                     " coefficients, expected " +
                     std::to_string(cfg.window_len));
}

// Applies `law` to every nonzero bin magnitude, preserving phase.
template <typename Law>
ComplexSpectrogram map_magnitudes(const ComplexSpectrogram& x, Law law) {
  ComplexSpectrogram out = x;
  auto& re = out.real.data();
  auto& im = out.imag.data();
  for (std::size_t i = 0; i < re.size(); ++i) {
    const double mag = std::hypot(re[i], im[i]);
    if (mag == 0.0) {
      re[i] = 0.0;
      im[i] = 0.0;
      continue;
    }
    const double scale = law(mag) / mag;
    re[i] *= scale;
    im[i] *= scale;
  }
  return out;
}

}  // namespace

void validate(const Waveform& x) {
  if (x.sample_rate_hz <= 0)
    throw DomainError("sample rate must be positive, got " +
                      std::to_string(x.sample_rate_hz));
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    if (!std::isfinite(x.samples[i]))
      throw DomainError("non-finite sample at index " + std::to_string(i));
  }
}

std::vector<double> periodic_hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
  return w;
}

FramingConfig FramingConfig::hann(std::size_t window_len, std::size_t hop) {
  // Hann sampled at half-sample offsets: sums to one at 50% overlap like
  // the periodic form but never touches zero, so no input sample is lost.
  FramingConfig cfg;
  cfg.window_len = window_len;
  cfg.hop = hop;
  cfg.window.resize(window_len);
  for (std::size_t i = 0; i < window_len; ++i) {
    cfg.window[i] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * (i + 0.5) / window_len);
  }
  return cfg;
}

void fft(std::vector<std::complex<double>>& data, bool inverse) {
  if (data.size() <= 1) return;
  if (is_power_of_two(data.size()))
    fft_radix2(data, inverse);
  else
    dft_direct(data, inverse);
}

std::size_t frame_count(std::size_t len, const FramingConfig& cfg) {
  if (len < cfg.window_len)
    throw LengthError("signal of " + std::to_string(len) +
                      " samples is shorter than one window (" +
                      std::to_string(cfg.window_len) + ")");
  return (len - cfg.window_len + cfg.hop - 1) / cfg.hop + 1;
}

ComplexSpectrogram stft(const Waveform& x, const FramingConfig& cfg) {
  check_framing(cfg);
  const std::size_t frames = frame_count(x.size(), cfg);
  const std::size_t n = cfg.window_len;
  const std::size_t bins = cfg.bins();

  ComplexSpectrogram out;
  out.real = RealMatrix(frames, bins);
  out.imag = RealMatrix(frames, bins);
  out.framing = cfg;
  out.original_len = x.size();

  std::vector<std::complex<double>> buf(n);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t start = t * cfg.hop;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t idx = start + i;
      const double s = idx < x.size() ? x.samples[idx] : 0.0;
      buf[i] = cfg.window[i] * s;
    }
    fft(buf);
    for (std::size_t f = 0; f < bins; ++f) out.set(t, f, buf[f]);
  }
  return out;
}

Waveform istft(const ComplexSpectrogram& X, int sample_rate_hz) {
  if (X.compressed())
    throw DomainError("istft needs an uncompressed spectrogram; apply idrc");
  const FramingConfig& cfg = X.framing;
  check_framing(cfg);
  const std::size_t n = cfg.window_len;
  const std::size_t bins = cfg.bins();
  if (X.bins() != bins || X.imag.rows() != X.frames() ||
      X.imag.cols() != bins)
    throw ShapeError("spectrogram has " + std::to_string(X.bins()) +
                     " bins, framing implies " + std::to_string(bins));
  if (X.frames() == 0) throw ShapeError("spectrogram has no frames");

  const std::size_t padded = (X.frames() - 1) * cfg.hop + n;
  std::vector<double> acc(padded, 0.0);
  std::vector<double> envelope(padded, 0.0);
  std::vector<std::complex<double>> buf(n);

  for (std::size_t t = 0; t < X.frames(); ++t) {
    for (std::size_t f = 0; f < bins; ++f) buf[f] = X.at(t, f);
    // Hermitian completion of the one-sided spectrum.
    for (std::size_t f = bins; f < n; ++f) buf[f] = std::conj(buf[n - f]);
    buf[0] = buf[0].real();
    if (n % 2 == 0) buf[n / 2] = buf[n / 2].real();
    fft(buf, /*inverse=*/true);
    const std::size_t start = t * cfg.hop;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = cfg.window[i];
      acc[start + i] += w * buf[i].real() / static_cast<double>(n);
      envelope[start + i] += w * w;
    }
  }

  Waveform out;
  out.sample_rate_hz = sample_rate_hz;
  const std::size_t len = std::min(X.original_len, padded);
  out.samples.resize(X.original_len, 0.0);
  for (std::size_t i = 0; i < len; ++i)
    out.samples[i] = acc[i] / std::max(envelope[i], kEnvelopeFloor);
  return out;
}

std::complex<double> compress_bin(std::complex<double> z, double alpha) {
  const double mag = std::abs(z);
  if (mag == 0.0) return 0.0;
  return z * (std::pow(mag, alpha) / mag);
}

std::complex<double> expand_bin(std::complex<double> z, double alpha) {
  const double mag = std::abs(z);
  if (mag == 0.0) return 0.0;
  return z * (std::pow(mag, 1.0 / alpha) / mag);
}

ComplexSpectrogram drc(const ComplexSpectrogram& X, double alpha) {
  check_alpha(alpha);
  if (X.compressed())
    throw DomainError("spectrogram is already compressed");
  ComplexSpectrogram out =
      map_magnitudes(X, [alpha](double m) { return std::pow(m, alpha); });
  out.compressed_with_alpha = alpha;
  return out;
}

ComplexSpectrogram idrc(const ComplexSpectrogram& X) {
  if (!X.compressed())
    throw DomainError("idrc needs a compressed spectrogram");
  const double inv = 1.0 / *X.compressed_with_alpha;
  ComplexSpectrogram out =
      map_magnitudes(X, [inv](double m) { return std::pow(m, inv); });
  out.compressed_with_alpha.reset();
  return out;
}

}  // namespace cienet
