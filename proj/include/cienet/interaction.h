// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Enrollment/mixture interaction. Every mixture frame attends over the
// enrollment frames of the same spectral part:
//
//   S = Y E^T        (T_Y x T_E, unscaled inner products)
//   A = softmax_rows(S)
//   F = A E          (T_Y x F, the consistent representation)
//
// Real and imaginary parts use independent weighting matrices.

#ifndef CIENET_INTERACTION_H_
#define CIENET_INTERACTION_H_

#include "cienet/dsp.h"
#include "cienet/tensor.h"

namespace cienet {

// Row-stochastic T_Y x T_E matrix.
struct WeightingMatrix {
  RealMatrix weights;
};

struct ConsistentRepresentation {
  RealMatrix real_part;
  RealMatrix imag_part;
};

RealMatrix similarity(const RealMatrix& mixture_part,
                      const RealMatrix& enrollment_part);

WeightingMatrix weight(const RealMatrix& similarity);

RealMatrix consistent(const RealMatrix& mixture_part,
                      const RealMatrix& enrollment_part);

// Both spectrograms must be compressed with the same alpha.
ConsistentRepresentation interaction_block(const ComplexSpectrogram& mixture,
                                           const ComplexSpectrogram& enrollment);

}  // namespace cienet

#endif  // CIENET_INTERACTION_H_
