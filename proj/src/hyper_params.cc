// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/hyper_params.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <string>

#include "cienet/errors.h"

namespace cienet {
namespace {

class LayoutBuilder {
 public:
  void weight(std::string name, std::vector<std::size_t> shape,
              std::size_t fan_in, std::size_t fan_out) {
    specs_.push_back({std::move(name), std::move(shape), TensorRole::kWeight,
                      fan_in, fan_out});
  }
  void bias(std::string name, std::size_t n) {
    specs_.push_back({std::move(name), {n}, TensorRole::kBias, 0, 0});
  }
  void norm(const std::string& prefix, std::size_t n) {
    specs_.push_back({prefix + ".gamma", {n}, TensorRole::kGain, 0, 0});
    bias(prefix + ".beta", n);
  }
  void linear(const std::string& prefix, std::size_t out, std::size_t in) {
    weight(prefix + ".weight", {out, in}, in, out);
    bias(prefix + ".bias", out);
  }
  void conv(const std::string& prefix, std::size_t out, std::size_t in,
            std::size_t k) {
    weight(prefix + ".weight", {out, in, k, k}, in * k * k, out * k * k);
    bias(prefix + ".bias", out);
  }
  void lstm(const std::string& prefix, std::size_t in, std::size_t hidden) {
    weight(prefix + ".w_ih", {4 * hidden, in}, in, 4 * hidden);
    weight(prefix + ".w_hh", {4 * hidden, hidden}, hidden, 4 * hidden);
    bias(prefix + ".bias", 4 * hidden);
  }

  std::vector<TensorSpec> finish() {
    std::sort(specs_.begin(), specs_.end(),
              [](const TensorSpec& a, const TensorSpec& b) {
                return a.name < b.name;
              });
    return std::move(specs_);
  }

 private:
  std::vector<TensorSpec> specs_;
};

}  // namespace

std::string_view to_string(BlockKind kind) {
  return kind == BlockKind::kMdprnn ? "mdprnn" : "mdptnet";
}

BlockKind parse_block_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "mdprnn") return BlockKind::kMdprnn;
  if (lower == "mdptnet") return BlockKind::kMdptnet;
  throw ConfigError("unknown block kind '" + std::string(name) +
                    "' (expected mdprnn or mdptnet)");
}

void HyperParams::validate() const {
  if (encoder_channels == 0 || block_channels == 0 || hidden == 0 ||
      heads == 0)
    throw ConfigError("L, W, hidden and heads must be positive");
  if (block_channels % heads != 0)
    throw ConfigError("W = " + std::to_string(block_channels) +
                      " is not divisible by " + std::to_string(heads) +
                      " heads");
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw ConfigError("alpha must lie in (0, 1]");
  if (framing.window_len < 2 || framing.hop == 0 ||
      framing.hop > framing.window_len ||
      framing.window.size() != framing.window_len)
    throw ConfigError("invalid framing configuration");
  if (sample_rate_hz <= 0) throw ConfigError("sample rate must be positive");
}

std::string block_prefix(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "extractor.blocks.%02zu", index);
  return buf;
}

std::vector<TensorSpec> parameter_layout(const HyperParams& hp) {
  hp.validate();
  const std::size_t L = hp.encoder_channels;
  const std::size_t W = hp.block_channels;
  const std::size_t H = hp.hidden;

  LayoutBuilder b;
  b.conv("encoder.conv", L, 4, 3);
  b.norm("extractor.norm", L);
  b.conv("extractor.in_conv", W, L, 1);
  for (std::size_t i = 0; i < hp.num_blocks; ++i) {
    for (const char* axis : {".freq", ".time"}) {
      const std::string p = block_prefix(i) + axis;
      if (hp.block_kind == BlockKind::kMdprnn) {
        b.lstm(p + ".blstm.fwd", W, H);
        b.lstm(p + ".blstm.bwd", W, H);
        b.linear(p + ".fc", W, 2 * H);
        b.norm(p + ".norm", W);
      } else {
        for (const char* proj : {".query", ".key", ".value", ".output"})
          b.linear(p + ".mha" + proj, W, W);
        b.norm(p + ".norm1", W);
        b.linear(p + ".ff1", 4 * W, W);
        b.linear(p + ".ff2", W, 4 * W);
        b.norm(p + ".norm2", W);
      }
    }
  }
  b.conv("extractor.out_conv", L, W, 1);
  b.conv("decoder.conv", 2, L, 3);
  return b.finish();
}

}  // namespace cienet
