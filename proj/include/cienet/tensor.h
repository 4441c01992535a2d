// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef CIENET_TENSOR_H_
#define CIENET_TENSOR_H_

#include <cstddef>
#include <span>
#include <vector>

namespace cienet {

// Dense row-major matrix of doubles.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  // Throws ShapeError if data.size() != rows * cols.
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  static RealMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  RealMatrix transposed() const;

  bool operator==(const RealMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// C x T x F feature tensor, channel-major then frame then bin.
class FeatureTensor {
 public:
  FeatureTensor() = default;
  FeatureTensor(std::size_t channels, std::size_t frames, std::size_t bins,
                double fill = 0.0)
      : channels_(channels),
        frames_(frames),
        bins_(bins),
        data_(channels * frames * bins, fill) {}
  FeatureTensor(std::size_t channels, std::size_t frames, std::size_t bins,
                std::vector<double> data);

  std::size_t channels() const { return channels_; }
  std::size_t frames() const { return frames_; }
  std::size_t bins() const { return bins_; }
  std::size_t size() const { return data_.size(); }
  // Elements in one channel plane (frames * bins).
  std::size_t plane() const { return frames_ * bins_; }

  double& operator()(std::size_t c, std::size_t t, std::size_t f) {
    return data_[(c * frames_ + t) * bins_ + f];
  }
  double operator()(std::size_t c, std::size_t t, std::size_t f) const {
    return data_[(c * frames_ + t) * bins_ + f];
  }

  std::span<double> channel(std::size_t c) {
    return {data_.data() + c * plane(), plane()};
  }
  std::span<const double> channel(std::size_t c) const {
    return {data_.data() + c * plane(), plane()};
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  bool same_shape(const FeatureTensor& o) const {
    return channels_ == o.channels_ && frames_ == o.frames_ &&
           bins_ == o.bins_;
  }

  bool operator==(const FeatureTensor&) const = default;

 private:
  std::size_t channels_ = 0;
  std::size_t frames_ = 0;
  std::size_t bins_ = 0;
  std::vector<double> data_;
};

}  // namespace cienet

#endif  // CIENET_TENSOR_H_
