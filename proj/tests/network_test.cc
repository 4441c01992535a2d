// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/network.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "cienet/errors.h"
#include "cienet/interaction.h"
#include "test_util.h"

namespace cienet {
namespace {

using testing::Rng;

HyperParams tiny(BlockKind kind = BlockKind::kMdprnn) {
  HyperParams hp;
  hp.encoder_channels = 6;
  hp.block_channels = 4;
  hp.num_blocks = 2;
  hp.hidden = 3;
  hp.heads = 2;
  hp.block_kind = kind;
  return hp;
}

// Every tensor gets nonzero values, biases and gains included, so the
// composition checks below see all parameters.
ModelParams scrambled(const HyperParams& hp, std::uint64_t seed) {
  ModelParams p = init_params(hp, seed);
  Rng rng(seed + 1000);
  for (auto& [name, t] : p.tensors) {
    const bool gain = name.ends_with(".gamma");
    for (double& v : t.values)
      v = gain ? 1.0 + 0.3 * rng.uniform() : 0.5 * rng.uniform();
  }
  return p;
}

FeatureTensor random_tensor(Rng& rng, std::size_t c, std::size_t t,
                            std::size_t f) {
  FeatureTensor x(c, t, f);
  for (double& v : x.data()) v = rng.uniform();
  return x;
}

// One axis of a block by hand: for every line along `along_freq`, pull the
// W-vectors out, run `seq_fn`, and write back.
template <typename SeqFn>
FeatureTensor apply_lines(const FeatureTensor& u, bool along_freq,
                          SeqFn seq_fn) {
  FeatureTensor out = u;
  const std::size_t lines = along_freq ? u.frames() : u.bins();
  const std::size_t steps = along_freq ? u.bins() : u.frames();
  for (std::size_t l = 0; l < lines; ++l) {
    RealMatrix seq(steps, u.channels());
    for (std::size_t s = 0; s < steps; ++s)
      for (std::size_t c = 0; c < u.channels(); ++c)
        seq(s, c) = along_freq ? u(c, l, s) : u(c, s, l);
    const RealMatrix y = seq_fn(seq);
    for (std::size_t s = 0; s < steps; ++s)
      for (std::size_t c = 0; c < u.channels(); ++c)
        (along_freq ? out(c, l, s) : out(c, s, l)) = y(s, c);
  }
  return out;
}

RealMatrix plus_then_norm(RealMatrix y, const RealMatrix& skip,
                          const LayerNormParams& n) {
  for (std::size_t r = 0; r < y.rows(); ++r) {
    std::vector<double> row(y.cols());
    for (std::size_t c = 0; c < y.cols(); ++c) row[c] = y(r, c) + skip(r, c);
    const std::vector<double> normed = layer_norm(row, n.gamma, n.beta);
    std::copy(normed.begin(), normed.end(), y.row(r).begin());
  }
  return y;
}

RealMatrix rnn_reference(const RealMatrix& seq, const RnnAxisParams& p) {
  return plus_then_norm(fc_rows(blstm_forward(seq, p.blstm), p.fc), seq,
                        p.norm);
}

RealMatrix transformer_reference(const RealMatrix& seq,
                                 const TransformerAxisParams& p,
                                 std::size_t heads) {
  const RealMatrix a = plus_then_norm(mha(seq, p.mha, heads), seq, p.norm1);
  RealMatrix hidden = fc_rows(a, p.ff1);
  for (double& v : hidden.data()) v = std::max(v, 0.0);
  return plus_then_norm(fc_rows(hidden, p.ff2), a, p.norm2);
}

TEST(BlockTest, MdprnnMatchesComposition) {
  const ModelParams p = scrambled(tiny(), 1);
  const auto bp = std::get<DualAxis<RnnAxisParams>>(block_params(p, 1));
  Rng rng(2);
  const FeatureTensor u = random_tensor(rng, 4, 5, 7);
  FeatureTensor expect = apply_lines(
      u, true, [&](const RealMatrix& s) { return rnn_reference(s, bp.freq); });
  expect = apply_lines(expect, false, [&](const RealMatrix& s) {
    return rnn_reference(s, bp.time);
  });
  EXPECT_LT(testing::max_abs_diff(basic_block_mdprnn(u, bp).data(),
                                  expect.data()),
            1e-9);
}

TEST(BlockTest, MdptnetMatchesComposition) {
  const ModelParams p = scrambled(tiny(BlockKind::kMdptnet), 3);
  const auto bp =
      std::get<DualAxis<TransformerAxisParams>>(block_params(p, 0));
  Rng rng(4);
  const FeatureTensor u = random_tensor(rng, 4, 6, 5);
  FeatureTensor expect = apply_lines(u, true, [&](const RealMatrix& s) {
    return transformer_reference(s, bp.freq, 2);
  });
  expect = apply_lines(expect, false, [&](const RealMatrix& s) {
    return transformer_reference(s, bp.time, 2);
  });
  EXPECT_LT(testing::max_abs_diff(basic_block_mdptnet(u, bp, 2).data(),
                                  expect.data()),
            1e-9);
}

TEST(BlockTest, MdptnetSingleStepSequences) {
  const ModelParams p = scrambled(tiny(BlockKind::kMdptnet), 5);
  const auto bp =
      std::get<DualAxis<TransformerAxisParams>>(block_params(p, 0));
  Rng rng(6);
  const FeatureTensor u = random_tensor(rng, 4, 1, 1);
  const FeatureTensor v = basic_block_mdptnet(u, bp, 2);
  ASSERT_TRUE(v.same_shape(u));
  for (double x : v.data()) EXPECT_TRUE(std::isfinite(x));
}

TEST(BlockTest, ZeroRecurrenceLeavesDoubleNorm) {
  // Paper-default block sizes on a 1 s input: W = 64, T = 62, F = 129.
  ModelParams p = init_params(HyperParams{}, 7);
  for (auto& [name, t] : p.tensors)
    if (name.find(".blstm.") != std::string::npos ||
        name.find(".fc.") != std::string::npos)
      std::fill(t.values.begin(), t.values.end(), 0.0);
  const auto bp = std::get<DualAxis<RnnAxisParams>>(block_params(p, 0));
  Rng rng(8);
  const FeatureTensor u = random_tensor(rng, 64, 62, 129);
  const FeatureTensor v = basic_block_mdprnn(u, bp);
  ASSERT_EQ(v.channels(), 64u);
  ASSERT_EQ(v.frames(), 62u);
  ASSERT_EQ(v.bins(), 129u);
  const std::vector<double> ones(64, 1.0), zeros(64, 0.0);
  double worst = 0.0;
  for (std::size_t t = 0; t < 62; t += 7)
    for (std::size_t f = 0; f < 129; f += 5) {
      std::vector<double> col(64);
      for (std::size_t c = 0; c < 64; ++c) col[c] = u(c, t, f);
      const std::vector<double> twice =
          layer_norm(layer_norm(col, ones, zeros), ones, zeros);
      for (std::size_t c = 0; c < 64; ++c)
        worst = std::max(worst, std::abs(v(c, t, f) - twice[c]));
    }
  EXPECT_LT(worst, 1e-12);
}

ComplexSpectrogram compressed_of(const Waveform& w, double alpha = 0.5) {
  return drc(stft(w, FramingConfig::defaults()), alpha);
}

TEST(EncodeTest, ShapeAndNonNegative) {
  Rng rng(9);
  const Waveform y = testing::random_waveform(rng, 8000);
  const Waveform e = testing::random_waveform(rng, 16000);
  const FeatureTensor h = encode(y, e, init_params(HyperParams{}, 1));
  EXPECT_EQ(h.channels(), 256u);
  EXPECT_EQ(h.frames(), 62u);
  EXPECT_EQ(h.bins(), 129u);
  std::size_t positive = 0;
  for (double v : h.data()) {
    EXPECT_GE(v, 0.0);
    positive += v > 0.0;
  }
  EXPECT_GT(positive, h.size() / 4);
}

TEST(EncodeTest, ZeroConvGivesZero) {
  ModelParams p = init_params(tiny(), 2);
  for (const char* n : {"encoder.conv.weight", "encoder.conv.bias"})
    std::fill(p.tensors.at(n).values.begin(), p.tensors.at(n).values.end(),
              0.0);
  Rng rng(10);
  const FeatureTensor h = encode(testing::random_waveform(rng, 1000),
                                 testing::random_waveform(rng, 600), p);
  for (double v : h.data()) EXPECT_EQ(v, 0.0);
}

TEST(EncodeTest, StacksMixtureAndInteraction) {
  // With a 1x1 centre tap per input channel and no bias, H recovers the
  // four stacked planes (up to the ReLU).
  ModelParams p = init_params(tiny(), 3);
  auto& w = p.tensors.at("encoder.conv.weight").values;
  std::fill(w.begin(), w.end(), 0.0);
  for (std::size_t c = 0; c < 4; ++c) w[((c * 4 + c) * 3 + 1) * 3 + 1] = 1.0;
  Rng rng(11);
  const Waveform y = testing::random_waveform(rng, 1200);
  const Waveform e = testing::random_waveform(rng, 900);
  const FeatureTensor h = encode(y, e, p);
  const ComplexSpectrogram yc = compressed_of(y), ec = compressed_of(e);
  const ConsistentRepresentation rep = interaction_block(yc, ec);
  const RealMatrix* planes[4] = {&yc.real, &yc.imag, &rep.real_part,
                                 &rep.imag_part};
  for (std::size_t c = 0; c < 4; ++c)
    for (std::size_t i = 0; i < h.plane(); ++i)
      EXPECT_NEAR(h.channel(c)[i], std::max(planes[c]->data()[i], 0.0), 1e-12);
}

TEST(EncodeTest, EnrollmentFramePermutationInvariance) {
  const ModelParams p = scrambled(tiny(), 4);
  Rng rng(12);
  const ComplexSpectrogram yc =
      compressed_of(testing::random_waveform(rng, 2000));
  const ComplexSpectrogram ec =
      compressed_of(testing::random_waveform(rng, 3000));
  std::vector<std::size_t> perm(ec.frames());
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = perm.size(); i > 1; --i)
    std::swap(perm[i - 1], perm[rng.index(i)]);
  ComplexSpectrogram shuffled = ec;
  for (std::size_t t = 0; t < ec.frames(); ++t)
    for (std::size_t f = 0; f < ec.bins(); ++f)
      shuffled.set(t, f, ec.at(perm[t], f));
  const FeatureTensor a = encode_spectra(yc, ec, p);
  const FeatureTensor b = encode_spectra(yc, shuffled, p);
  EXPECT_LT(testing::max_abs_diff(a.data(), b.data()), 1e-9);
  const FeatureTensor ma = extract_mask(a, p), mb = extract_mask(b, p);
  EXPECT_LT(testing::max_abs_diff(ma.data(), mb.data()), 1e-9);
}

TEST(EncodeTest, Validation) {
  const ModelParams p = init_params(tiny(), 5);
  Rng rng(13);
  Waveform y = testing::random_waveform(rng, 1000);
  const Waveform e = testing::random_waveform(rng, 1000);
  Waveform fast = y;
  fast.sample_rate_hz = 16000;
  EXPECT_THROW(encode(fast, e, p), DomainError);
  EXPECT_THROW(encode(y, fast, p), DomainError);
  const Waveform short_y = testing::random_waveform(rng, 255);
  EXPECT_THROW(encode(short_y, e, p), LengthError);
  EXPECT_THROW(encode(y, short_y, p), LengthError);
  // 32 ms of enrollment is one frame and is enough.
  EXPECT_NO_THROW(encode(y, testing::random_waveform(rng, 256), p));
}

TEST(MaskTest, NonNegativeAndShaped) {
  for (BlockKind kind : {BlockKind::kMdprnn, BlockKind::kMdptnet}) {
    for (std::size_t blocks : {std::size_t{0}, std::size_t{2}}) {
      HyperParams hp = tiny(kind);
      hp.num_blocks = blocks;
      const ModelParams p = scrambled(hp, 6);
      Rng rng(14);
      FeatureTensor h = random_tensor(rng, 6, 9, 129);
      for (double& v : h.data()) v = std::abs(v);
      const FeatureTensor m = extract_mask(h, p);
      ASSERT_TRUE(m.same_shape(h));
      std::size_t positive = 0;
      for (double v : m.data()) {
        EXPECT_GE(v, 0.0);
        positive += v > 0.0;
      }
      EXPECT_GT(positive, 0u);
    }
  }
}

TEST(MaskTest, WrongChannelCount) {
  const ModelParams p = init_params(tiny(), 7);
  EXPECT_THROW(extract_mask(FeatureTensor(5, 2, 129), p), ShapeError);
}

TEST(DecodeTest, ZeroInputGivesSilence) {
  ModelParams p = scrambled(tiny(), 8);
  auto& bias = p.tensors.at("decoder.conv.bias").values;
  std::fill(bias.begin(), bias.end(), 0.0);
  const Waveform w = decode(FeatureTensor(6, 62, 129), p, 8000);
  ASSERT_EQ(w.size(), 8000u);
  for (double v : w.samples) EXPECT_EQ(v, 0.0);
}

TEST(DecodeTest, LengthContract) {
  const ModelParams p = scrambled(tiny(), 9);
  Rng rng(15);
  for (std::size_t len : {std::size_t{8000}, std::size_t{20000},
                          std::size_t{32000}}) {
    const FeatureTensor h =
        random_tensor(rng, 6, frame_count(len, FramingConfig::defaults()), 129);
    const Waveform w = decode(h, p, len);
    EXPECT_EQ(w.size(), len);
    EXPECT_EQ(w.sample_rate_hz, 8000);
    for (double v : w.samples) ASSERT_TRUE(std::isfinite(v));
  }
  EXPECT_THROW(decode(FeatureTensor(6, 61, 129), p, 8000), ShapeError);
  EXPECT_THROW(decode(FeatureTensor(7, 62, 129), p, 8000), ShapeError);
}

TEST(ExtractTest, SmokeDeterministicAndLengthPreserving) {
  for (BlockKind kind : {BlockKind::kMdprnn, BlockKind::kMdptnet}) {
    const ModelParams p = init_params(tiny(kind), 10);
    const Waveform y = testing::synthetic_voice(1, 8000, 100, 180);
    const Waveform e = testing::synthetic_voice(2, 16000, 100, 180);
    const Waveform a = extract(y, e, p);
    EXPECT_EQ(a.size(), y.size());
    for (double v : a.samples) ASSERT_TRUE(std::isfinite(v));
    EXPECT_EQ(extract(y, e, p).samples, a.samples);
  }
}

TEST(ExtractTest, RejectsIncompleteModel) {
  ModelParams p = init_params(tiny(), 11);
  p.tensors.erase("extractor.out_conv.weight");
  Rng rng(16);
  EXPECT_THROW(extract(testing::random_waveform(rng, 1000),
                       testing::random_waveform(rng, 1000), p),
               ConfigError);
}

}  // namespace
}  // namespace cienet
