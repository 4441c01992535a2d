// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Analytic backward passes of the differentiable front end and their
// verification against central finite differences.

#ifndef CIENET_GRADCHECK_H_
#define CIENET_GRADCHECK_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cienet/dsp.h"
#include "cienet/tensor.h"

namespace cienet {

inline constexpr double kDefaultGradEps = 1e-4;
inline constexpr double kGradTolerance = 1e-4;
// Bins with smaller magnitude are skipped when checking DRC.
inline constexpr double kDrcMinMagnitude = 1e-6;

struct InteractionGrads {
  RealMatrix d_mixture;
  RealMatrix d_enrollment;
};

// Gradients of <upstream, softmax(Y E^T) E> with respect to Y and E.
InteractionGrads interaction_backward(const RealMatrix& mixture_part,
                                      const RealMatrix& enrollment_part,
                                      const RealMatrix& upstream);

// Gradient of <upstream, drc(X, alpha)> with respect to the real and
// imaginary parts of X. Zero bins receive zero gradient.
ComplexSpectrogram drc_backward(const ComplexSpectrogram& x, double alpha,
                                const ComplexSpectrogram& upstream);

// (f(x + eps) - f(x - eps)) / (2 eps)
double central_difference(const std::function<double(double)>& f, double x,
                          double eps);

struct GradReport {
  std::string component;
  double max_rel_error = 0.0;
  double eps = kDefaultGradEps;
  std::uint64_t seed = 0;
  std::size_t checked = 0;  // coordinates compared
  std::size_t skipped = 0;  // coordinates excluded (near-zero DRC bins)

  bool passed() const { return max_rel_error < kGradTolerance; }
  bool operator==(const GradReport&) const = default;
};

// Checks interaction, DRC and SI-SDR loss gradients on small seeded
// instances. Throws ParameterError if eps is outside [1e-6, 1e-3].
std::vector<GradReport> run_gradcheck(std::uint64_t seed,
                                      double eps = kDefaultGradEps);

}  // namespace cienet

#endif  // CIENET_GRADCHECK_H_
