// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
//
// Parameter store and the `.cien` checkpoint format:
//
//   offset 0   "CIEN"                       4 bytes
//   offset 4   version = 1                  u32 little-endian
//   offset 8   header length n              u64 little-endian
//   offset 16  UTF-8 JSON header            n bytes
//              {"hyper": {...}, "tensors": [{"name", "shape"}, ...]}
//   then       float32 little-endian values, tensors in header order

#ifndef CIENET_MODEL_IO_H_
#define CIENET_MODEL_IO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cienet/hyper_params.h"

namespace cienet {

inline constexpr std::uint32_t kCienVersion = 1;

struct NamedTensor {
  std::vector<std::size_t> shape;
  std::vector<double> values;

  std::size_t numel() const;
  bool operator==(const NamedTensor&) const = default;
};

struct ModelParams {
  HyperParams hyper;
  // std::map keeps the canonical lexicographic order.
  std::map<std::string, NamedTensor> tensors;

  // Throws ConfigError naming the missing tensor.
  const NamedTensor& at(const std::string& name) const;
  bool operator==(const ModelParams&) const = default;
};

ModelParams init_params(const HyperParams& hp, std::uint64_t seed);

std::size_t param_count(const ModelParams& p);

// Throws ConfigError if names or shapes disagree with parameter_layout().
void check_layout(const ModelParams& p);

// Hyperparameters as the JSON object stored in the `.cien` header.
std::string hyper_json(const HyperParams& hp);

std::vector<std::uint8_t> serialize(const ModelParams& p);
ModelParams deserialize(const std::vector<std::uint8_t>& bytes);

void save(const ModelParams& p, const std::filesystem::path& path);
ModelParams load(const std::filesystem::path& path);

}  // namespace cienet

#endif  // CIENET_MODEL_IO_H_
