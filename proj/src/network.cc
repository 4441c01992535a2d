// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/network.h"

#include <cmath>
#include <string>

#include "cienet/errors.h"
#include "cienet/interaction.h"

namespace cienet {
namespace {

RealMatrix matrix_of(const ModelParams& p, const std::string& name) {
  const NamedTensor& t = p.at(name);
  if (t.shape.size() != 2)
    throw ShapeError("tensor '" + name + "' is not a matrix");
  return RealMatrix(t.shape[0], t.shape[1], t.values);
}

const std::vector<double>& vector_of(const ModelParams& p,
                                     const std::string& name) {
  return p.at(name).values;
}

FcParams fc_of(const ModelParams& p, const std::string& prefix) {
  return {matrix_of(p, prefix + ".weight"), vector_of(p, prefix + ".bias")};
}

LayerNormParams norm_of(const ModelParams& p, const std::string& prefix) {
  return {vector_of(p, prefix + ".gamma"), vector_of(p, prefix + ".beta")};
}

LstmParams lstm_of(const ModelParams& p, const std::string& prefix) {
  return {matrix_of(p, prefix + ".w_ih"), matrix_of(p, prefix + ".w_hh"),
          vector_of(p, prefix + ".bias")};
}

RnnAxisParams rnn_axis_of(const ModelParams& p, const std::string& prefix) {
  return {{lstm_of(p, prefix + ".blstm.fwd"), lstm_of(p, prefix + ".blstm.bwd")},
          fc_of(p, prefix + ".fc"),
          norm_of(p, prefix + ".norm")};
}

TransformerAxisParams transformer_axis_of(const ModelParams& p,
                                          const std::string& prefix) {
  return {{fc_of(p, prefix + ".mha.query"), fc_of(p, prefix + ".mha.key"),
           fc_of(p, prefix + ".mha.value"), fc_of(p, prefix + ".mha.output")},
          norm_of(p, prefix + ".norm1"),
          fc_of(p, prefix + ".ff1"),
          fc_of(p, prefix + ".ff2"),
          norm_of(p, prefix + ".norm2")};
}

enum class Axis { kFreq, kTime };

// Lays U (W x T x F) out as sequences of W-dim vectors. Along the
// frequency axis there is one sequence per frame (row t * F + f), along
// the time axis one per bin (row f * T + t).
RealMatrix gather(const FeatureTensor& u, Axis axis) {
  const std::size_t w = u.channels(), tn = u.frames(), fn = u.bins();
  RealMatrix seq(tn * fn, w);
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t t = 0; t < tn; ++t)
      for (std::size_t f = 0; f < fn; ++f) {
        const std::size_t row = axis == Axis::kFreq ? t * fn + f : f * tn + t;
        seq(row, c) = u(c, t, f);
      }
  return seq;
}

void scatter(const RealMatrix& seq, Axis axis, FeatureTensor& u) {
  const std::size_t w = u.channels(), tn = u.frames(), fn = u.bins();
  for (std::size_t c = 0; c < w; ++c)
    for (std::size_t t = 0; t < tn; ++t)
      for (std::size_t f = 0; f < fn; ++f) {
        const std::size_t row = axis == Axis::kFreq ? t * fn + f : f * tn + t;
        u(c, t, f) = seq(row, c);
      }
}

void add_inplace(RealMatrix& a, const RealMatrix& b) {
  auto& x = a.data();
  const auto& y = b.data();
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
}

RealMatrix rnn_axis(const RealMatrix& x, std::size_t batch,
                    const RnnAxisParams& p) {
  RealMatrix y = fc_rows(blstm_forward_batch(x, batch, p.blstm), p.fc);
  add_inplace(y, x);
  layer_norm_rows(y, p.norm.gamma, p.norm.beta);
  return y;
}

RealMatrix transformer_axis(const RealMatrix& x, std::size_t batch,
                            const TransformerAxisParams& p,
                            std::size_t heads) {
  RealMatrix a = mha_batch(x, batch, p.mha, heads);
  add_inplace(a, x);
  layer_norm_rows(a, p.norm1.gamma, p.norm1.beta);
  RealMatrix hidden = fc_rows(a, p.ff1);
  relu_inplace(hidden.data());
  RealMatrix y = fc_rows(hidden, p.ff2);
  add_inplace(y, a);
  layer_norm_rows(y, p.norm2.gamma, p.norm2.beta);
  return y;
}

void check_rate(const Waveform& w, const HyperParams& hp, const char* what) {
  if (w.sample_rate_hz != hp.sample_rate_hz)
    throw DomainError(std::string(what) + " sampled at " +
                      std::to_string(w.sample_rate_hz) + " Hz, model expects " +
                      std::to_string(hp.sample_rate_hz) + " Hz");
}

ComplexSpectrogram analyse(const Waveform& w, const HyperParams& hp,
                           const char* what) {
  check_rate(w, hp, what);
  validate(w);
  if (w.size() < hp.framing.window_len)
    throw LengthError(std::string(what) + " has " + std::to_string(w.size()) +
                      " samples, shorter than one window (" +
                      std::to_string(hp.framing.window_len) + ")");
  return drc(stft(w, hp.framing), hp.alpha);
}

}  // namespace

Conv2dWeights conv_weights(const ModelParams& p, const std::string& prefix) {
  const NamedTensor& t = p.at(prefix + ".weight");
  if (t.shape.size() != 4)
    throw ShapeError("tensor '" + prefix + ".weight' is not a 4-D kernel");
  return {t.shape[0], t.shape[1], t.shape[2], t.shape[3], t.values};
}

BlockParams block_params(const ModelParams& p, std::size_t index) {
  const std::string prefix = block_prefix(index);
  if (p.hyper.block_kind == BlockKind::kMdprnn)
    return DualAxis<RnnAxisParams>{rnn_axis_of(p, prefix + ".freq"),
                                   rnn_axis_of(p, prefix + ".time")};
  return DualAxis<TransformerAxisParams>{
      transformer_axis_of(p, prefix + ".freq"),
      transformer_axis_of(p, prefix + ".time")};
}

FeatureTensor basic_block_mdprnn(const FeatureTensor& u,
                                 const DualAxis<RnnAxisParams>& bp) {
  FeatureTensor v = u;
  scatter(rnn_axis(gather(v, Axis::kFreq), v.frames(), bp.freq), Axis::kFreq,
          v);
  scatter(rnn_axis(gather(v, Axis::kTime), v.bins(), bp.time), Axis::kTime, v);
  return v;
}

FeatureTensor basic_block_mdptnet(const FeatureTensor& u,
                                  const DualAxis<TransformerAxisParams>& bp,
                                  std::size_t heads) {
  FeatureTensor v = u;
  scatter(transformer_axis(gather(v, Axis::kFreq), v.frames(), bp.freq, heads),
          Axis::kFreq, v);
  scatter(transformer_axis(gather(v, Axis::kTime), v.bins(), bp.time, heads),
          Axis::kTime, v);
  return v;
}

FeatureTensor encode_spectra(const ComplexSpectrogram& mixture_c,
                             const ComplexSpectrogram& enrollment_c,
                             const ModelParams& params) {
  const ConsistentRepresentation rep =
      interaction_block(mixture_c, enrollment_c);
  const std::size_t frames = mixture_c.frames();
  const std::size_t bins = mixture_c.bins();
  FeatureTensor stacked(4, frames, bins);
  const RealMatrix* planes[4] = {&mixture_c.real, &mixture_c.imag,
                                 &rep.real_part, &rep.imag_part};
  for (std::size_t c = 0; c < 4; ++c)
    std::copy(planes[c]->data().begin(), planes[c]->data().end(),
              stacked.channel(c).begin());
  FeatureTensor h = conv2d(stacked, conv_weights(params, "encoder.conv"),
                           params.at("encoder.conv.bias").values);
  relu_inplace(h.data());
  return h;
}

FeatureTensor encode(const Waveform& y, const Waveform& e,
                     const ModelParams& params) {
  const HyperParams& hp = params.hyper;
  return encode_spectra(analyse(y, hp, "mixture"), analyse(e, hp, "enrollment"),
                        params);
}

FeatureTensor extract_mask(const FeatureTensor& h, const ModelParams& params) {
  const HyperParams& hp = params.hyper;
  if (h.channels() != hp.encoder_channels)
    throw ShapeError("encoder output has " + std::to_string(h.channels()) +
                     " channels, model expects " +
                     std::to_string(hp.encoder_channels));

  // Channel-wise LN at every (t, f).
  const LayerNormParams norm = norm_of(params, "extractor.norm");
  FeatureTensor normed(h.channels(), h.frames(), h.bins());
  std::vector<double> column(h.channels());
  for (std::size_t pos = 0; pos < h.plane(); ++pos) {
    for (std::size_t c = 0; c < h.channels(); ++c)
      column[c] = h.data()[c * h.plane() + pos];
    const std::vector<double> out = layer_norm(column, norm.gamma, norm.beta);
    for (std::size_t c = 0; c < h.channels(); ++c)
      normed.data()[c * h.plane() + pos] = out[c];
  }

  FeatureTensor u = conv2d(normed, conv_weights(params, "extractor.in_conv"),
                           params.at("extractor.in_conv.bias").values);
  for (std::size_t i = 0; i < hp.num_blocks; ++i) {
    const BlockParams bp = block_params(params, i);
    if (const auto* rnn = std::get_if<DualAxis<RnnAxisParams>>(&bp))
      u = basic_block_mdprnn(u, *rnn);
    else
      u = basic_block_mdptnet(
          u, std::get<DualAxis<TransformerAxisParams>>(bp), hp.heads);
  }
  FeatureTensor mask = conv2d(u, conv_weights(params, "extractor.out_conv"),
                              params.at("extractor.out_conv.bias").values);
  relu_inplace(mask.data());
  return mask;
}

Waveform decode(const FeatureTensor& h_hat, const ModelParams& params,
                std::size_t original_len) {
  const HyperParams& hp = params.hyper;
  if (h_hat.channels() != hp.encoder_channels)
    throw ShapeError("decoder input has " + std::to_string(h_hat.channels()) +
                     " channels, model expects " +
                     std::to_string(hp.encoder_channels));
  if (h_hat.bins() != hp.framing.bins() ||
      h_hat.frames() != frame_count(original_len, hp.framing))
    throw ShapeError("decoder input " + std::to_string(h_hat.frames()) + "x" +
                     std::to_string(h_hat.bins()) +
                     " does not match a signal of " +
                     std::to_string(original_len) + " samples");

  const FeatureTensor spec =
      conv2d(h_hat, conv_weights(params, "decoder.conv"),
             params.at("decoder.conv.bias").values);
  const std::size_t frames = h_hat.frames();
  const std::size_t bins = h_hat.bins();
  ComplexSpectrogram compressed;
  compressed.real = RealMatrix(
      frames, bins, {spec.channel(0).begin(), spec.channel(0).end()});
  compressed.imag = RealMatrix(
      frames, bins, {spec.channel(1).begin(), spec.channel(1).end()});
  compressed.framing = hp.framing;
  compressed.original_len = original_len;
  compressed.compressed_with_alpha = hp.alpha;
  return istft(idrc(compressed), hp.sample_rate_hz);
}

Waveform extract(const Waveform& y, const Waveform& e,
                 const ModelParams& params) {
  check_layout(params);
  const FeatureTensor h = encode(y, e, params);
  FeatureTensor h_hat = extract_mask(h, params);
  for (std::size_t i = 0; i < h_hat.size(); ++i)
    h_hat.data()[i] *= h.data()[i];
  return decode(h_hat, params, y.size());
}

}  // namespace cienet
