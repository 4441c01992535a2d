// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/netops.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "cienet/errors.h"

namespace cienet {
namespace {

using RowMat =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMat>;
using MutMap = Eigen::Map<RowMat>;
using ConstVecMap = Eigen::Map<const Eigen::RowVectorXd>;

ConstMap view(const RealMatrix& m) {
  return ConstMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                  static_cast<Eigen::Index>(m.cols()));
}

MutMap view(RealMatrix& m) {
  return MutMap(m.data().data(), static_cast<Eigen::Index>(m.rows()),
                static_cast<Eigen::Index>(m.cols()));
}

std::string dims(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void softmax_inplace(std::span<double> row) {
  if (row.empty()) return;
  const double mx = *std::max_element(row.begin(), row.end());
  double sum = 0.0;
  for (double& v : row) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : row) v /= sum;
}

void check_fc(const FcParams& p) {
  if (p.bias.size() != p.weight.rows())
    throw ShapeError("fc bias has " + std::to_string(p.bias.size()) +
                     " entries for " + std::to_string(p.weight.rows()) +
                     " outputs");
}

void check_lstm(const LstmParams& p, std::size_t din) {
  const std::size_t h = p.hidden();
  if (p.w_ih.rows() != 4 * h || p.w_hh.rows() != 4 * h ||
      p.bias.size() != 4 * h)
    throw ShapeError("LSTM gate blocks inconsistent with hidden size " +
                     std::to_string(h));
  if (p.w_ih.cols() != din)
    throw ShapeError("LSTM expects input dim " +
                     std::to_string(p.w_ih.cols()) + ", got " +
                     std::to_string(din));
}

// Runs one direction over `batch` equal-length sequences and writes the
// hidden states into columns [col0, col0 + H) of `out`.
void lstm_batch_into(const RealMatrix& seqs, std::size_t batch,
                     const LstmParams& p, bool reverse, RealMatrix& out,
                     std::size_t col0) {
  const std::size_t steps = seqs.rows() / batch;
  const std::size_t h = p.hidden();
  const auto eb = static_cast<Eigen::Index>(batch);
  const auto eh = static_cast<Eigen::Index>(h);

  // Input projections for every step at once.
  RowMat pre = view(seqs) * view(p.w_ih).transpose();
  pre.rowwise() += ConstVecMap(p.bias.data(), 4 * eh);

  RowMat hs = RowMat::Zero(eb, eh);
  RowMat cs = RowMat::Zero(eb, eh);
  RowMat gates(eb, 4 * eh);
  const auto w_hh_t = view(p.w_hh).transpose();

  for (std::size_t k = 0; k < steps; ++k) {
    const std::size_t s = reverse ? steps - 1 - k : k;
    gates.noalias() = hs * w_hh_t;
    for (std::size_t b = 0; b < batch; ++b) {
      const auto row = static_cast<Eigen::Index>(b * steps + s);
      const auto eb_i = static_cast<Eigen::Index>(b);
      gates.row(eb_i) += pre.row(row);
      for (Eigen::Index j = 0; j < eh; ++j) {
        const double in = sigmoid(gates(eb_i, j));
        const double forget = sigmoid(gates(eb_i, eh + j));
        const double cell = std::tanh(gates(eb_i, 2 * eh + j));
        const double outg = sigmoid(gates(eb_i, 3 * eh + j));
        const double c = forget * cs(eb_i, j) + in * cell;
        cs(eb_i, j) = c;
        hs(eb_i, j) = outg * std::tanh(c);
      }
      std::copy(hs.row(eb_i).data(), hs.row(eb_i).data() + h,
                out.row(b * steps + s).data() + col0);
    }
  }
}

void check_batch(const RealMatrix& seqs, std::size_t batch) {
  if (batch == 0 || seqs.rows() % batch != 0)
    throw ShapeError(std::to_string(seqs.rows()) +
                     " rows cannot be split into " + std::to_string(batch) +
                     " equal sequences");
}

void check_mha(const MhaParams& p, std::size_t dim, std::size_t heads) {
  if (heads == 0 || p.dim() % heads != 0)
    throw ConfigError("model dim " + std::to_string(p.dim()) +
                      " is not divisible by " + std::to_string(heads) +
                      " heads");
  for (const FcParams* fcp : {&p.query, &p.key, &p.value, &p.output}) {
    check_fc(*fcp);
    if (fcp->weight.rows() != p.dim() || fcp->weight.cols() != p.dim())
      throw ShapeError("MHA projections must be square " +
                       dims(p.dim(), p.dim()));
  }
  if (dim != p.dim())
    throw ShapeError("MHA dim " + std::to_string(p.dim()) + ", input dim " +
                     std::to_string(dim));
}

}  // namespace

RealMatrix matmul(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows())
    throw ShapeError("matmul " + dims(a.rows(), a.cols()) + " by " +
                     dims(b.rows(), b.cols()));
  RealMatrix c(a.rows(), b.cols());
  if (a.cols() == 0) return c;
  view(c).noalias() = view(a) * view(b);
  return c;
}

RealMatrix matmul_transposed(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.cols())
    throw ShapeError("matmul_transposed " + dims(a.rows(), a.cols()) +
                     " by (" + dims(b.rows(), b.cols()) + ")^T");
  RealMatrix c(a.rows(), b.rows());
  if (a.cols() == 0) return c;
  view(c).noalias() = view(a) * view(b).transpose();
  return c;
}

RealMatrix softmax_rows(const RealMatrix& s) {
  RealMatrix out = s;
  for (std::size_t r = 0; r < out.rows(); ++r) softmax_inplace(out.row(r));
  return out;
}

std::vector<double> layer_norm(std::span<const double> x,
                               std::span<const double> gamma,
                               std::span<const double> beta, double eps) {
  if (gamma.size() != x.size() || beta.size() != x.size())
    throw ShapeError("layer_norm over " + std::to_string(x.size()) +
                     " values with gains of " + std::to_string(gamma.size()) +
                     "/" + std::to_string(beta.size()));
  if (!(eps > 0.0)) throw ParameterError("layer_norm eps must be positive");
  std::vector<double> out(x.begin(), x.end());
  if (x.empty()) return out;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= static_cast<double>(x.size());
  const double inv = 1.0 / std::sqrt(var + eps);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] = (x[i] - mean) * inv * gamma[i] + beta[i];
  return out;
}

void layer_norm_rows(RealMatrix& x, std::span<const double> gamma,
                     std::span<const double> beta, double eps) {
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const std::vector<double> y = layer_norm(x.row(r), gamma, beta, eps);
    std::copy(y.begin(), y.end(), x.row(r).begin());
  }
}

FeatureTensor conv2d(const FeatureTensor& x, const Conv2dWeights& k,
                     std::span<const double> bias) {
  if (x.channels() != k.in_channels)
    throw ShapeError("conv2d expects " + std::to_string(k.in_channels) +
                     " input channels, got " + std::to_string(x.channels()));
  if (k.kernel_h % 2 == 0 || k.kernel_w % 2 == 0)
    throw ShapeError("conv2d kernel sizes must be odd");
  if (k.values.size() !=
      k.out_channels * k.in_channels * k.kernel_h * k.kernel_w)
    throw ShapeError("conv2d weight count does not match its shape");
  if (bias.size() != k.out_channels)
    throw ShapeError("conv2d bias has " + std::to_string(bias.size()) +
                     " entries for " + std::to_string(k.out_channels) +
                     " outputs");

  const std::size_t frames = x.frames();
  const std::size_t bins = x.bins();
  const std::size_t plane = x.plane();
  const auto ecin = static_cast<Eigen::Index>(k.in_channels);
  const auto ecout = static_cast<Eigen::Index>(k.out_channels);
  const auto eplane = static_cast<Eigen::Index>(plane);

  FeatureTensor out(k.out_channels, frames, bins);
  MutMap acc(out.data().data(), ecout, eplane);
  for (std::size_t o = 0; o < k.out_channels; ++o)
    acc.row(static_cast<Eigen::Index>(o)).setConstant(bias[o]);

  const ConstMap input(x.data().data(), ecin, eplane);
  const std::size_t ph = k.kernel_h / 2;
  const std::size_t pw = k.kernel_w / 2;
  RowMat tap(ecout, ecin);
  RowMat shifted;

  for (std::size_t dy = 0; dy < k.kernel_h; ++dy) {
    for (std::size_t dx = 0; dx < k.kernel_w; ++dx) {
      for (std::size_t o = 0; o < k.out_channels; ++o)
        for (std::size_t i = 0; i < k.in_channels; ++i)
          tap(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i)) =
              k.at(o, i, dy, dx);
      if (dy == ph && dx == pw) {
        acc.noalias() += tap * input;
        continue;
      }
      // Input plane shifted by (dy - ph, dx - pw) with zero fill.
      shifted.setZero(ecin, eplane);
      const long oy = static_cast<long>(dy) - static_cast<long>(ph);
      const long ox = static_cast<long>(dx) - static_cast<long>(pw);
      for (std::size_t c = 0; c < k.in_channels; ++c) {
        const double* src = x.channel(c).data();
        double* dst = shifted.row(static_cast<Eigen::Index>(c)).data();
        for (std::size_t t = 0; t < frames; ++t) {
          const long st = static_cast<long>(t) + oy;
          if (st < 0 || st >= static_cast<long>(frames)) continue;
          const long f_lo = std::max(0L, -ox);
          const long f_hi = std::min(static_cast<long>(bins),
                                     static_cast<long>(bins) - ox);
          for (long f = f_lo; f < f_hi; ++f)
            dst[t * bins + f] = src[st * static_cast<long>(bins) + f + ox];
        }
      }
      acc.noalias() += tap * shifted;
    }
  }
  return out;
}

FeatureTensor relu(const FeatureTensor& x) {
  FeatureTensor out = x;
  relu_inplace(out.data());
  return out;
}

void relu_inplace(std::span<double> x) {
  for (double& v : x) v = v > 0.0 ? v : 0.0;
}

std::vector<double> fc(std::span<const double> x, const FcParams& p) {
  check_fc(p);
  if (x.size() != p.weight.cols())
    throw ShapeError("fc expects " + std::to_string(p.weight.cols()) +
                     " inputs, got " + std::to_string(x.size()));
  std::vector<double> y(p.bias);
  for (std::size_t o = 0; o < y.size(); ++o) {
    const auto w = p.weight.row(o);
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * x[i];
    y[o] += acc;
  }
  return y;
}

RealMatrix fc_rows(const RealMatrix& x, const FcParams& p) {
  check_fc(p);
  RealMatrix y = matmul_transposed(x, p.weight);
  auto ym = view(y);
  ym.rowwise() +=
      ConstVecMap(p.bias.data(), static_cast<Eigen::Index>(p.bias.size()));
  return y;
}

RealMatrix lstm_forward(const RealMatrix& seq, const LstmParams& p,
                        bool reverse) {
  check_lstm(p, seq.cols());
  RealMatrix out(seq.rows(), p.hidden());
  if (seq.rows() == 0) return out;
  lstm_batch_into(seq, 1, p, reverse, out, 0);
  return out;
}

RealMatrix blstm_forward(const RealMatrix& seq, const BlstmParams& p) {
  return blstm_forward_batch(seq, 1, p);
}

RealMatrix blstm_forward_batch(const RealMatrix& seqs, std::size_t batch,
                               const BlstmParams& p) {
  check_batch(seqs, batch);
  check_lstm(p.forward, seqs.cols());
  check_lstm(p.backward, seqs.cols());
  const std::size_t h = p.forward.hidden();
  if (p.backward.hidden() != h)
    throw ShapeError("BLSTM directions have different hidden sizes");
  RealMatrix out(seqs.rows(), 2 * h);
  if (seqs.rows() == 0) return out;
  lstm_batch_into(seqs, batch, p.forward, false, out, 0);
  lstm_batch_into(seqs, batch, p.backward, true, out, h);
  return out;
}

std::vector<RealMatrix> mha_weights(const RealMatrix& seq, const MhaParams& p,
                                    std::size_t heads) {
  check_mha(p, seq.cols(), heads);
  const std::size_t d = p.dim();
  const std::size_t dh = d / heads;
  const RealMatrix q = fc_rows(seq, p.query);
  const RealMatrix k = fc_rows(seq, p.key);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));
  std::vector<RealMatrix> out;
  for (std::size_t h = 0; h < heads; ++h) {
    const auto col = static_cast<Eigen::Index>(h * dh);
    const auto edh = static_cast<Eigen::Index>(dh);
    RealMatrix w(seq.rows(), seq.rows());
    view(w).noalias() = view(q).middleCols(col, edh) *
                        view(k).middleCols(col, edh).transpose() * scale;
    out.push_back(softmax_rows(w));
  }
  return out;
}

RealMatrix mha(const RealMatrix& seq, const MhaParams& p, std::size_t heads) {
  return mha_batch(seq, 1, p, heads);
}

RealMatrix mha_batch(const RealMatrix& seqs, std::size_t batch,
                     const MhaParams& p, std::size_t heads) {
  check_batch(seqs, batch);
  check_mha(p, seqs.cols(), heads);
  const std::size_t d = p.dim();
  const std::size_t dh = d / heads;
  const std::size_t steps = seqs.rows() / batch;
  const RealMatrix q = fc_rows(seqs, p.query);
  const RealMatrix k = fc_rows(seqs, p.key);
  const RealMatrix v = fc_rows(seqs, p.value);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dh));

  RealMatrix concat(seqs.rows(), d);
  auto cm = view(concat);
  const auto qm = view(q);
  const auto km = view(k);
  const auto vm = view(v);
  const auto es = static_cast<Eigen::Index>(steps);
  const auto edh = static_cast<Eigen::Index>(dh);
  RealMatrix scores(steps, steps);
  for (std::size_t b = 0; b < batch; ++b) {
    const auto row = static_cast<Eigen::Index>(b * steps);
    for (std::size_t h = 0; h < heads; ++h) {
      const auto col = static_cast<Eigen::Index>(h * dh);
      view(scores).noalias() = qm.block(row, col, es, edh) *
                               km.block(row, col, es, edh).transpose() * scale;
      for (std::size_t r = 0; r < steps; ++r) softmax_inplace(scores.row(r));
      cm.block(row, col, es, edh).noalias() =
          view(scores) * vm.block(row, col, es, edh);
    }
  }
  return fc_rows(concat, p.output);
}

}  // namespace cienet
