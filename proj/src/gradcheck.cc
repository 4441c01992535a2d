// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cienet/errors.h"
#include "cienet/interaction.h"
#include "cienet/metrics.h"
#include "cienet/netops.h"

namespace cienet {
namespace {

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double symmetric(std::mt19937_64& rng) { return 2.0 * unit_uniform(rng) - 1.0; }

std::size_t dim_between(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + rng() % (hi - lo + 1);
}

RealMatrix random_matrix(std::mt19937_64& rng, std::size_t rows,
                         std::size_t cols) {
  RealMatrix m(rows, cols);
  for (double& v : m.data()) v = symmetric(rng);
  return m;
}

double inner(const RealMatrix& a, const RealMatrix& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.data()[i] * b.data()[i];
  return s;
}

double rel_error(double analytic, double fd) {
  return std::abs(analytic - fd) / std::max(std::abs(fd), 1e-12);
}

// Max relative error between `analytic` and central differences of `f`
// taken coordinate by coordinate over `x`.
template <typename F>
double compare(std::vector<double>& x, const std::vector<double>& analytic,
               double eps, F&& f, std::size_t& checked) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    const double fd = central_difference(
        [&](double v) {
          x[i] = v;
          return f();
        },
        saved, eps);
    x[i] = saved;
    worst = std::max(worst, rel_error(analytic[i], fd));
    ++checked;
  }
  return worst;
}

GradReport check_interaction(std::mt19937_64& rng, std::uint64_t seed,
                             double eps) {
  const std::size_t ty = dim_between(rng, 1, 8);
  const std::size_t te = dim_between(rng, 1, 8);
  const std::size_t bins = dim_between(rng, 1, 8);
  RealMatrix y = random_matrix(rng, ty, bins);
  RealMatrix e = random_matrix(rng, te, bins);
  const RealMatrix up = random_matrix(rng, ty, bins);

  const InteractionGrads g = interaction_backward(y, e, up);
  auto f = [&] { return inner(up, consistent(y, e)); };
  GradReport r{"interaction", 0.0, eps, seed, 0, 0};
  r.max_rel_error = std::max(
      compare(y.data(), g.d_mixture.data(), eps, f, r.checked),
      compare(e.data(), g.d_enrollment.data(), eps, f, r.checked));
  return r;
}

GradReport check_drc(std::mt19937_64& rng, std::uint64_t seed, double eps) {
  const std::size_t frames = dim_between(rng, 1, 8);
  const std::size_t bins = dim_between(rng, 1, 8);
  const double alpha = 0.25 + 0.75 * unit_uniform(rng);

  // Magnitudes kept well above eps so differences stay on one smooth branch.
  ComplexSpectrogram x;
  x.real = RealMatrix(frames, bins);
  x.imag = RealMatrix(frames, bins);
  for (std::size_t t = 0; t < frames; ++t)
    for (std::size_t f = 0; f < bins; ++f)
      x.set(t, f, std::polar(0.1 + 0.9 * unit_uniform(rng),
                             std::numbers::pi * symmetric(rng)));
  ComplexSpectrogram up;
  up.real = random_matrix(rng, frames, bins);
  up.imag = random_matrix(rng, frames, bins);

  const ComplexSpectrogram g = drc_backward(x, alpha, up);
  auto f = [&] {
    const ComplexSpectrogram c = drc(x, alpha);
    return inner(up.real, c.real) + inner(up.imag, c.imag);
  };

  GradReport r{"drc", 0.0, eps, seed, 0, 0};
  for (std::size_t i = 0; i < x.real.size(); ++i) {
    double& re = x.real.data()[i];
    double& im = x.imag.data()[i];
    if (std::hypot(re, im) < kDrcMinMagnitude) {
      r.skipped += 2;
      continue;
    }
    for (auto [coord, analytic] :
         {std::pair{&re, g.real.data()[i]}, std::pair{&im, g.imag.data()[i]}}) {
      const double saved = *coord;
      const double fd = central_difference(
          [&](double v) {
            *coord = v;
            return f();
          },
          saved, eps);
      *coord = saved;
      r.max_rel_error = std::max(r.max_rel_error, rel_error(analytic, fd));
      ++r.checked;
    }
  }
  return r;
}

GradReport check_si_sdr(std::mt19937_64& rng, std::uint64_t seed, double eps) {
  constexpr std::size_t kLen = 64;
  std::vector<double> ref(kLen), est(kLen);
  for (std::size_t i = 0; i < kLen; ++i) {
    ref[i] = symmetric(rng);
    est[i] = ref[i] + 0.5 * symmetric(rng);
  }
  const LossGrad lg = si_sdr_loss_grad(est, ref);
  GradReport r{"si_sdr_loss", 0.0, eps, seed, 0, 0};
  r.max_rel_error = compare(
      est, lg.grad, eps, [&] { return -si_sdr(est, ref); }, r.checked);
  return r;
}

}  // namespace

InteractionGrads interaction_backward(const RealMatrix& mixture_part,
                                      const RealMatrix& enrollment_part,
                                      const RealMatrix& upstream) {
  const RealMatrix& y = mixture_part;
  const RealMatrix& e = enrollment_part;
  if (upstream.rows() != y.rows() || upstream.cols() != e.cols())
    throw ShapeError("upstream gradient must be T_Y x F");
  const RealMatrix a = weight(similarity(y, e)).weights;

  // F = A E, A = softmax(S), S = Y E^T.
  const RealMatrix d_a = matmul_transposed(upstream, e);  // G E^T
  RealMatrix d_s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double dot = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) dot += d_a(i, j) * a(i, j);
    for (std::size_t j = 0; j < a.cols(); ++j)
      d_s(i, j) = a(i, j) * (d_a(i, j) - dot);
  }

  InteractionGrads g;
  g.d_mixture = matmul(d_s, e);
  g.d_enrollment = matmul(a.transposed(), upstream);
  const RealMatrix via_similarity = matmul(d_s.transposed(), y);
  for (std::size_t i = 0; i < g.d_enrollment.size(); ++i)
    g.d_enrollment.data()[i] += via_similarity.data()[i];
  return g;
}

ComplexSpectrogram drc_backward(const ComplexSpectrogram& x, double alpha,
                                const ComplexSpectrogram& upstream) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ParameterError("DRC exponent must lie in (0, 1]");
  if (upstream.real.rows() != x.real.rows() ||
      upstream.real.cols() != x.real.cols() ||
      upstream.imag.size() != x.imag.size())
    throw ShapeError("upstream gradient shape differs from the spectrogram");

  ComplexSpectrogram g = x;
  g.compressed_with_alpha.reset();
  for (std::size_t i = 0; i < x.real.size(); ++i) {
    const double a = x.real.data()[i];
    const double b = x.imag.data()[i];
    const double m = std::hypot(a, b);
    if (m == 0.0) {
      g.real.data()[i] = 0.0;
      g.imag.data()[i] = 0.0;
      continue;
    }
    // out = m^(alpha - 1) (a, b); Jacobian is symmetric.
    const double base = std::pow(m, alpha - 1.0);
    const double k = (alpha - 1.0) * base / (m * m);
    const double daa = base + k * a * a;
    const double dab = k * a * b;
    const double dbb = base + k * b * b;
    const double ur = upstream.real.data()[i];
    const double ui = upstream.imag.data()[i];
    g.real.data()[i] = ur * daa + ui * dab;
    g.imag.data()[i] = ur * dab + ui * dbb;
  }
  return g;
}

double central_difference(const std::function<double(double)>& f, double x,
                          double eps) {
  return (f(x + eps) - f(x - eps)) / (2.0 * eps);
}

std::vector<GradReport> run_gradcheck(std::uint64_t seed, double eps) {
  if (!(eps >= 1e-6 && eps <= 1e-3))
    throw ParameterError("eps must lie in [1e-6, 1e-3], got " +
                         std::to_string(eps));
  std::mt19937_64 rng(seed);
  std::vector<GradReport> reports;
  reports.push_back(check_interaction(rng, seed, eps));
  reports.push_back(check_drc(rng, seed, eps));
  reports.push_back(check_si_sdr(rng, seed, eps));
  return reports;
}

}  // namespace cienet
