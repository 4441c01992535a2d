// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/interaction.h"

#include <cmath>
#include <string>

#include "cienet/errors.h"
#include "cienet/netops.h"

namespace cienet {
namespace {

void check_parts(const RealMatrix& mixture_part,
                 const RealMatrix& enrollment_part) {
  if (mixture_part.cols() != enrollment_part.cols())
    throw ShapeError("interaction: mixture has " +
                     std::to_string(mixture_part.cols()) +
                     " bins, enrollment has " +
                     std::to_string(enrollment_part.cols()));
  if (enrollment_part.rows() == 0)
    throw ShapeError("interaction: enrollment has no frames");
}

}  // namespace

RealMatrix similarity(const RealMatrix& mixture_part,
                      const RealMatrix& enrollment_part) {
  check_parts(mixture_part, enrollment_part);
  return matmul_transposed(mixture_part, enrollment_part);
}

WeightingMatrix weight(const RealMatrix& sim) {
  for (double v : sim.data()) {
    if (!std::isfinite(v))
      throw DomainError("similarity matrix contains non-finite values");
  }
  return {softmax_rows(sim)};
}

RealMatrix consistent(const RealMatrix& mixture_part,
                      const RealMatrix& enrollment_part) {
  const WeightingMatrix a = weight(similarity(mixture_part, enrollment_part));
  return matmul(a.weights, enrollment_part);
}

ConsistentRepresentation interaction_block(
    const ComplexSpectrogram& mixture, const ComplexSpectrogram& enrollment) {
  if (!mixture.compressed() || !enrollment.compressed())
    throw DomainError("interaction expects DRC-compressed spectrograms");
  if (*mixture.compressed_with_alpha != *enrollment.compressed_with_alpha)
    throw DomainError("mixture and enrollment compressed with different "
                      "exponents");
  return {consistent(mixture.real, enrollment.real),
          consistent(mixture.imag, enrollment.imag)};
}

}  // namespace cienet
