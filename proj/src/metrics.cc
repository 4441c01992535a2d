// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/metrics.h"

#include <cmath>
#include <numbers>
#include <string>

#include "cienet/errors.h"

namespace cienet {
namespace {

constexpr double kMaxRatio = 1e30;
constexpr double kMinRatio = 1e-30;

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b)
    throw ShapeError("signals differ in length: " + std::to_string(a) +
                     " vs " + std::to_string(b));
  if (a == 0) throw ShapeError("signals are empty");
}

std::vector<double> centred(std::span<const double> x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v -= mean;
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

MetricValue ratio_db(double signal, double noise) {
  if (noise == 0.0 || signal > kMaxRatio * noise)
    return {kMetricCapDb, true};
  if (signal == 0.0 || signal < kMinRatio * noise)
    return {-kMetricCapDb, true};
  return {10.0 * std::log10(signal / noise), false};
}

// Centred estimate and reference split into the scaled-reference target
// and the residual.
struct Projection {
  std::vector<double> est;
  std::vector<double> ref;
  double cross = 0.0;       // <est, ref>
  double ref_energy = 0.0;  // |ref|^2
  double target_energy = 0.0;
  std::vector<double> residual;
  double residual_energy = 0.0;
};

Projection project(std::span<const double> est, std::span<const double> ref) {
  check_lengths(est.size(), ref.size());
  Projection p;
  p.est = centred(est);
  p.ref = centred(ref);
  p.ref_energy = dot(p.ref, p.ref);
  if (p.ref_energy == 0.0)
    throw DegenerateError("reference is constant after mean removal");
  p.cross = dot(p.est, p.ref);
  const double scale = p.cross / p.ref_energy;
  p.target_energy = p.cross * scale;
  p.residual.resize(p.est.size());
  for (std::size_t i = 0; i < p.est.size(); ++i)
    p.residual[i] = p.est[i] - scale * p.ref[i];
  p.residual_energy = dot(p.residual, p.residual);
  return p;
}

}  // namespace

MetricValue si_sdr_value(std::span<const double> est,
                         std::span<const double> ref) {
  const Projection p = project(est, ref);
  return ratio_db(p.target_energy, p.residual_energy);
}

double si_sdr(std::span<const double> est, std::span<const double> ref) {
  return si_sdr_value(est, ref).db;
}

MetricValue sdr_simple_value(std::span<const double> est,
                             std::span<const double> ref) {
  check_lengths(est.size(), ref.size());
  const double ref_energy = dot(ref, ref);
  if (ref_energy == 0.0) throw DegenerateError("reference is all zeros");
  double err = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i)
    err += (ref[i] - est[i]) * (ref[i] - est[i]);
  return ratio_db(ref_energy, err);
}

double sdr_simple(std::span<const double> est, std::span<const double> ref) {
  return sdr_simple_value(est, ref).db;
}

EvalReport improvements(std::span<const double> est,
                        std::span<const double> mix,
                        std::span<const double> ref) {
  check_lengths(est.size(), mix.size());
  const MetricValue si_est = si_sdr_value(est, ref);
  const MetricValue si_mix = si_sdr_value(mix, ref);
  const MetricValue sdr_est = sdr_simple_value(est, ref);
  const MetricValue sdr_mix = sdr_simple_value(mix, ref);
  EvalReport r;
  r.si_sdr_db = si_est.db;
  r.si_sdri_db = si_est.db - si_mix.db;
  r.sdr_db = sdr_est.db;
  r.sdri_db = sdr_est.db - sdr_mix.db;
  r.capped = si_est.capped || si_mix.capped || sdr_est.capped ||
             sdr_mix.capped;
  return r;
}

LossGrad si_sdr_loss_grad(std::span<const double> est,
                          std::span<const double> ref) {
  const Projection p = project(est, ref);
  const MetricValue v = ratio_db(p.target_energy, p.residual_energy);
  if (v.capped || p.cross == 0.0)
    throw DegenerateError(
        "SI-SDR gradient undefined: estimate is a scaled copy of, or "
        "orthogonal to, the reference");

  // SI-SDR = c (ln <e,r>^2 - ln |r|^2 - ln |e - a r|^2), c = 10 / ln 10.
  // d/de = c (2 r / <e,r> - 2 n / |n|^2); the centring projection is a
  // no-op on this because r and n are already zero-mean.
  const double c = 10.0 / std::numbers::ln10;
  LossGrad out;
  out.loss = -10.0 * std::log10(p.target_energy / p.residual_energy);
  out.grad.resize(p.est.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < p.est.size(); ++i) {
    const double g = c * (2.0 * p.ref[i] / p.cross -
                          2.0 * p.residual[i] / p.residual_energy);
    out.grad[i] = -g;
    mean += out.grad[i];
  }
  mean /= static_cast<double>(out.grad.size());
  for (double& g : out.grad) g -= mean;
  return out;
}

}  // namespace cienet
