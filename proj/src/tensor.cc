// Copyright 2026 The CIENet Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "cienet/tensor.h"

#include <string>
#include <utility>

#include "cienet/errors.h"

namespace cienet {

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols,
                       std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw ShapeError("RealMatrix: " + std::to_string(data_.size()) +
                     " values for a " + std::to_string(rows_) + "x" +
                     std::to_string(cols_) + " matrix");
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::transposed() const {
  RealMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

FeatureTensor::FeatureTensor(std::size_t channels, std::size_t frames,
                             std::size_t bins, std::vector<double> data)
    : channels_(channels), frames_(frames), bins_(bins),
      data_(std::move(data)) {
  if (data_.size() != channels_ * frames_ * bins_) {
    throw ShapeError("FeatureTensor: " + std::to_string(data_.size()) +
                     " values for shape " + std::to_string(channels_) + "x" +
                     std::to_string(frames_) + "x" + std::to_string(bins_));
  }
}

}  // namespace cienet
