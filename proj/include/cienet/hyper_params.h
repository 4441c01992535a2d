// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CIENET_HYPER_PARAMS_H_
#define CIENET_HYPER_PARAMS_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cienet/dsp.h"

namespace cienet {

enum class BlockKind { kMdprnn, kMdptnet };

std::string_view to_string(BlockKind kind);
// Accepts "mdprnn" / "mdptnet" (case-insensitive). Throws ConfigError.
BlockKind parse_block_kind(std::string_view name);

struct HyperParams {
  std::size_t encoder_channels = 256;  // L
  std::size_t block_channels = 64;     // W
  std::size_t num_blocks = 6;          // N
  std::size_t hidden = 128;            // BLSTM units per direction
  std::size_t heads = 4;               // MHA heads
  double alpha = 0.5;                  // DRC exponent
  BlockKind block_kind = BlockKind::kMdprnn;
  FramingConfig framing = FramingConfig::defaults();
  int sample_rate_hz = kDefaultSampleRate;

  // Throws ConfigError on any inconsistency. num_blocks may be zero.
  void validate() const;

  bool operator==(const HyperParams&) const = default;
};

enum class TensorRole { kWeight, kBias, kGain };

struct TensorSpec {
  std::string name;
  std::vector<std::size_t> shape;
  TensorRole role = TensorRole::kWeight;
  // Fans for Xavier-uniform initialisation of weights.
  std::size_t fan_in = 0;
  std::size_t fan_out = 0;
};

// Every parameter tensor the network expects for `hp`, in lexicographic
// name order.
std::vector<TensorSpec> parameter_layout(const HyperParams& hp);

// Name prefix of extractor block `index`, e.g. "extractor.blocks.03".
std::string block_prefix(std::size_t index);

}  // namespace cienet

#endif  // CIENET_HYPER_PARAMS_H_
