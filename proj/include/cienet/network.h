// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Encoder, extractor and decoder forming the mapping from a mixture y and
// an enrollment e to the target estimate.

#ifndef CIENET_NETWORK_H_
#define CIENET_NETWORK_H_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "cienet/dsp.h"
#include "cienet/hyper_params.h"
#include "cienet/model_io.h"
#include "cienet/netops.h"
#include "cienet/tensor.h"

namespace cienet {

struct LayerNormParams {
  std::vector<double> gamma;
  std::vector<double> beta;
};

// One axis module of an mDPRNN block: BLSTM -> FC -> skip -> LN.
struct RnnAxisParams {
  BlstmParams blstm;
  FcParams fc;
  LayerNormParams norm;
};

// One axis module of an mDPTNet block:
// MHA -> skip -> LN -> FC/ReLU/FC -> skip -> LN.
struct TransformerAxisParams {
  MhaParams mha;
  LayerNormParams norm1;
  FcParams ff1;
  FcParams ff2;
  LayerNormParams norm2;
};

template <typename Axis>
struct DualAxis {
  Axis freq;
  Axis time;
};

using BlockParams =
    std::variant<DualAxis<RnnAxisParams>, DualAxis<TransformerAxisParams>>;

// Views into ModelParams by tensor name.
Conv2dWeights conv_weights(const ModelParams& p, const std::string& prefix);
BlockParams block_params(const ModelParams& p, std::size_t index);

FeatureTensor basic_block_mdprnn(const FeatureTensor& u,
                                 const DualAxis<RnnAxisParams>& bp);
FeatureTensor basic_block_mdptnet(const FeatureTensor& u,
                                  const DualAxis<TransformerAxisParams>& bp,
                                  std::size_t heads);

// Stacks [Y_R, Y_I, F_R, F_I], then conv 3x3 (4 -> L) and ReLU.
FeatureTensor encode_spectra(const ComplexSpectrogram& mixture_c,
                             const ComplexSpectrogram& enrollment_c,
                             const ModelParams& params);

FeatureTensor encode(const Waveform& y, const Waveform& e,
                     const ModelParams& params);

FeatureTensor extract_mask(const FeatureTensor& h, const ModelParams& params);

// Conv 3x3 (L -> 2), inverse DRC, inverse STFT.
Waveform decode(const FeatureTensor& h_hat, const ModelParams& params,
                std::size_t original_len);

Waveform extract(const Waveform& y, const Waveform& e,
                 const ModelParams& params);

}  // namespace cienet

#endif  // CIENET_NETWORK_H_
