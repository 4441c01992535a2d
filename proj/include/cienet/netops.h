// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Dense forward-only primitives used by the interaction block and the
// extractor. Sequences are RealMatrix values with one step per row.

#ifndef CIENET_NETOPS_H_
#define CIENET_NETOPS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "cienet/tensor.h"

namespace cienet {

inline constexpr double kLayerNormEps = 1e-5;

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b);
// a * b^T without materialising the transpose.
RealMatrix matmul_transposed(const RealMatrix& a, const RealMatrix& b);

RealMatrix softmax_rows(const RealMatrix& s);

std::vector<double> layer_norm(std::span<const double> x,
                               std::span<const double> gamma,
                               std::span<const double> beta,
                               double eps = kLayerNormEps);
// Normalises every row of `x` in place.
void layer_norm_rows(RealMatrix& x, std::span<const double> gamma,
                     std::span<const double> beta, double eps = kLayerNormEps);

struct Conv2dWeights {
  std::size_t out_channels = 0;
  std::size_t in_channels = 0;
  std::size_t kernel_h = 1;
  std::size_t kernel_w = 1;
  // [out][in][kh][kw]
  std::vector<double> values;

  double at(std::size_t o, std::size_t i, std::size_t y, std::size_t x) const {
    return values[((o * in_channels + i) * kernel_h + y) * kernel_w + x];
  }
};

// Zero "same" padded cross-correlation over the (frame, bin) plane.
FeatureTensor conv2d(const FeatureTensor& x, const Conv2dWeights& kernels,
                     std::span<const double> bias);

FeatureTensor relu(const FeatureTensor& x);
void relu_inplace(std::span<double> x);

struct FcParams {
  RealMatrix weight;  // out x in
  std::vector<double> bias;
};

std::vector<double> fc(std::span<const double> x, const FcParams& p);
// Applies the layer to every row: x * W^T + b.
RealMatrix fc_rows(const RealMatrix& x, const FcParams& p);

// Gate blocks are stacked in the order input, forget, cell, output.
struct LstmParams {
  RealMatrix w_ih;  // 4H x Din
  RealMatrix w_hh;  // 4H x H
  std::vector<double> bias;  // 4H

  std::size_t hidden() const { return w_hh.cols(); }
  std::size_t input_dim() const { return w_ih.cols(); }
};

struct BlstmParams {
  LstmParams forward;
  LstmParams backward;
};

// Unidirectional pass from zero state; `reverse` walks the sequence from
// the last step to the first and writes outputs at their original index.
RealMatrix lstm_forward(const RealMatrix& seq, const LstmParams& p,
                        bool reverse = false);

// S x Din -> S x 2H, each row [forward; backward].
RealMatrix blstm_forward(const RealMatrix& seq, const BlstmParams& p);

// Batched variant: `seqs` holds `batch` sequences of equal length stacked
// sequence-major ((b * steps + s) indexes a row). Same output layout.
RealMatrix blstm_forward_batch(const RealMatrix& seqs, std::size_t batch,
                               const BlstmParams& p);

struct MhaParams {
  FcParams query;
  FcParams key;
  FcParams value;
  FcParams output;

  std::size_t dim() const { return query.weight.rows(); }
};

RealMatrix mha(const RealMatrix& seq, const MhaParams& p, std::size_t heads);
// Per-head S x S attention weights for a single sequence.
std::vector<RealMatrix> mha_weights(const RealMatrix& seq, const MhaParams& p,
                                    std::size_t heads);
RealMatrix mha_batch(const RealMatrix& seqs, std::size_t batch,
                     const MhaParams& p, std::size_t heads);

}  // namespace cienet

#endif  // CIENET_NETOPS_H_
