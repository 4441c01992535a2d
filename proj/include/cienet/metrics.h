// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CIENET_METRICS_H_
#define CIENET_METRICS_H_

#include <span>
#include <vector>

namespace cienet {

// Ratios are clamped to +/- this many dB instead of returning infinities.
inline constexpr double kMetricCapDb = 300.0;

struct MetricValue {
  double db = 0.0;
  bool capped = false;
};

// Mean-removed scale-invariant SDR. Throws ShapeError on length mismatch
// and DegenerateError when the centred reference is all zeros.
MetricValue si_sdr_value(std::span<const double> est,
                         std::span<const double> ref);
double si_sdr(std::span<const double> est, std::span<const double> ref);

// 10 log10(|ref|^2 / |ref - est|^2), no projection or mean removal.
MetricValue sdr_simple_value(std::span<const double> est,
                             std::span<const double> ref);
double sdr_simple(std::span<const double> est, std::span<const double> ref);

struct EvalReport {
  double si_sdr_db = 0.0;
  double si_sdri_db = 0.0;
  double sdr_db = 0.0;
  double sdri_db = 0.0;
  bool capped = false;
};

EvalReport improvements(std::span<const double> est,
                        std::span<const double> mix,
                        std::span<const double> ref);

struct LossGrad {
  double loss = 0.0;          // -SI-SDR in dB, uncapped
  std::vector<double> grad;   // d loss / d est
};

// Throws DegenerateError when est is (a shifted multiple of) ref or
// orthogonal to it, where the loss or its gradient is undefined.
LossGrad si_sdr_loss_grad(std::span<const double> est,
                          std::span<const double> ref);

}  // namespace cienet

#endif  // CIENET_METRICS_H_
