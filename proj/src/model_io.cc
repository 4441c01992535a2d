// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/model_io.h"

#include <bit>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "cienet/errors.h"
#include "cienet/wav.h"
#include "json.hpp"

namespace cienet {
namespace {

using json = nlohmann::json;

constexpr char kMagic[4] = {'C', 'I', 'E', 'N'};
constexpr std::size_t kPreambleBytes = 16;

// Uniform in [0, 1) from the top 53 bits; identical on every platform,
// unlike std::uniform_real_distribution.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string shape_str(const std::vector<std::size_t>& shape) {
  std::string s = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(shape[i]);
  }
  return s + "]";
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back((v >> (8 * i)) & 0xff);
}

std::uint64_t get_le(const std::vector<std::uint8_t>& in, std::size_t pos,
                     int nbytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < nbytes; ++i)
    v |= static_cast<std::uint64_t>(in[pos + i]) << (8 * i);
  return v;
}

json hyper_to_json(const HyperParams& hp) {
  json j = {{"L", hp.encoder_channels},
            {"W", hp.block_channels},
            {"N", hp.num_blocks},
            {"hidden", hp.hidden},
            {"heads", hp.heads},
            {"alpha", hp.alpha},
            {"block_kind", std::string(to_string(hp.block_kind))},
            {"window_len", hp.framing.window_len},
            {"hop", hp.framing.hop},
            {"sample_rate_hz", hp.sample_rate_hz}};
  const FramingConfig hann =
      FramingConfig::hann(hp.framing.window_len, hp.framing.hop);
  if (hp.framing.window == hann.window)
    j["window"] = "hann";
  else
    j["window"] = hp.framing.window;
  return j;
}

HyperParams hyper_from_json(const json& j) {
  HyperParams hp;
  hp.encoder_channels = j.at("L").get<std::size_t>();
  hp.block_channels = j.at("W").get<std::size_t>();
  hp.num_blocks = j.at("N").get<std::size_t>();
  hp.hidden = j.at("hidden").get<std::size_t>();
  hp.heads = j.at("heads").get<std::size_t>();
  hp.alpha = j.at("alpha").get<double>();
  hp.block_kind = parse_block_kind(j.at("block_kind").get<std::string>());
  const auto window_len = j.at("window_len").get<std::size_t>();
  const auto hop = j.at("hop").get<std::size_t>();
  hp.framing = FramingConfig::hann(window_len, hop);
  const json& w = j.at("window");
  if (w.is_array()) hp.framing.window = w.get<std::vector<double>>();
  else if (w != "hann") throw ConfigError("unknown window " + w.dump());
  hp.sample_rate_hz = j.at("sample_rate_hz").get<int>();
  hp.validate();
  return hp;
}

}  // namespace

std::size_t NamedTensor::numel() const {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         std::multiplies<>());
}

const NamedTensor& ModelParams::at(const std::string& name) const {
  const auto it = tensors.find(name);
  if (it == tensors.end())
    throw ConfigError("model has no tensor named '" + name + "'");
  return it->second;
}

ModelParams init_params(const HyperParams& hp, std::uint64_t seed) {
  ModelParams p;
  p.hyper = hp;
  std::mt19937_64 rng(seed);
  for (const TensorSpec& spec : parameter_layout(hp)) {
    NamedTensor t;
    t.shape = spec.shape;
    t.values.assign(t.numel(), 0.0);
    switch (spec.role) {
      case TensorRole::kWeight: {
        const double a =
            std::sqrt(6.0 / static_cast<double>(spec.fan_in + spec.fan_out));
        for (double& v : t.values) v = (2.0 * unit_uniform(rng) - 1.0) * a;
        break;
      }
      case TensorRole::kGain:
        std::fill(t.values.begin(), t.values.end(), 1.0);
        break;
      case TensorRole::kBias:
        break;
    }
    p.tensors.emplace(spec.name, std::move(t));
  }
  return p;
}

std::size_t param_count(const ModelParams& p) {
  std::size_t n = 0;
  for (const auto& [name, t] : p.tensors) n += t.numel();
  return n;
}

void check_layout(const ModelParams& p) {
  const std::vector<TensorSpec> layout = parameter_layout(p.hyper);
  if (layout.size() != p.tensors.size())
    throw ConfigError("model has " + std::to_string(p.tensors.size()) +
                      " tensors, hyperparameters imply " +
                      std::to_string(layout.size()));
  auto it = p.tensors.begin();
  for (const TensorSpec& spec : layout) {
    const auto& [name, t] = *it++;
    if (name != spec.name)
      throw ConfigError("unexpected tensor '" + name + "', expected '" +
                        spec.name + "'");
    if (t.shape != spec.shape)
      throw ConfigError("tensor '" + name + "' has shape " +
                        shape_str(t.shape) + ", expected " +
                        shape_str(spec.shape));
    if (t.values.size() != t.numel())
      throw ConfigError("tensor '" + name + "' holds " +
                        std::to_string(t.values.size()) + " values for shape " +
                        shape_str(t.shape));
  }
}

std::string hyper_json(const HyperParams& hp) {
  return hyper_to_json(hp).dump();
}

std::vector<std::uint8_t> serialize(const ModelParams& p) {
  json header;
  header["hyper"] = hyper_to_json(p.hyper);
  header["tensors"] = json::array();
  for (const auto& [name, t] : p.tensors) {
    if (t.values.size() != t.numel())
      throw ShapeError("tensor '" + name + "' value count disagrees with " +
                       shape_str(t.shape));
    header["tensors"].push_back({{"name", name}, {"shape", t.shape}});
  }
  const std::string text = header.dump();

  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u32(out, kCienVersion);
  put_u64(out, text.size());
  out.insert(out.end(), text.begin(), text.end());
  out.reserve(out.size() + 4 * param_count(p));
  for (const auto& [name, t] : p.tensors)
    for (double v : t.values)
      put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
  return out;
}

ModelParams deserialize(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4)
    throw FormatError("file truncated inside magic", bytes.size());
  if (!std::equal(kMagic, kMagic + 4, bytes.begin()))
    throw FormatError("bad magic, not a .cien file", 0);
  if (bytes.size() < 8)
    throw FormatError("file truncated inside version", bytes.size());
  const auto version = static_cast<std::uint32_t>(get_le(bytes, 4, 4));
  if (version != kCienVersion)
    throw FormatError("unsupported version " + std::to_string(version), 4);
  if (bytes.size() < kPreambleBytes)
    throw FormatError("file truncated inside header length", bytes.size());
  const std::uint64_t header_len = get_le(bytes, 8, 8);
  if (header_len > bytes.size() - kPreambleBytes)
    throw FormatError("header length " + std::to_string(header_len) +
                          " exceeds file size",
                      8);

  const auto header_begin = bytes.begin() + kPreambleBytes;
  const auto header_end = header_begin + static_cast<long>(header_len);
  json header;
  try {
    header = json::parse(header_begin, header_end);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON header: ") + e.what(),
                      kPreambleBytes + e.byte);
  }

  ModelParams p;
  std::size_t expected_values = 0;
  try {
    p.hyper = hyper_from_json(header.at("hyper"));
    for (const json& entry : header.at("tensors")) {
      NamedTensor t;
      t.shape = entry.at("shape").get<std::vector<std::size_t>>();
      const std::string name = entry.at("name").get<std::string>();
      expected_values += t.numel();
      if (!p.tensors.emplace(name, std::move(t)).second)
        throw ConfigError("duplicate tensor name '" + name + "'");
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid header: ") + e.what(),
                      kPreambleBytes);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("invalid header: ") + e.what(),
                      kPreambleBytes);
  }

  const std::size_t payload_at = kPreambleBytes + header_len;
  const std::size_t payload = bytes.size() - payload_at;
  if (payload != 4 * expected_values)
    throw FormatError("payload has " + std::to_string(payload) +
                          " bytes, header describes " +
                          std::to_string(4 * expected_values),
                      payload_at);

  // Tensors are stored in header order; walk the header again so a header
  // that is not sorted is still read correctly.
  std::size_t pos = payload_at;
  for (const json& entry : header.at("tensors")) {
    NamedTensor& t = p.tensors.at(entry.at("name").get<std::string>());
    t.values.resize(t.numel());
    for (double& v : t.values) {
      const float f =
          std::bit_cast<float>(static_cast<std::uint32_t>(get_le(bytes, pos, 4)));
      if (!std::isfinite(f))
        throw FormatError("non-finite parameter value", pos);
      v = f;
      pos += 4;
    }
  }

  try {
    check_layout(p);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("tensors disagree with hyperparameters: ") +
                          e.what(),
                      kPreambleBytes);
  }
  return p;
}

void save(const ModelParams& p, const std::filesystem::path& path) {
  write_file(path, serialize(p));
}

ModelParams load(const std::filesystem::path& path) {
  return deserialize(read_file(path));
}

}  // namespace cienet
