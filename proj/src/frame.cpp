// Copyright 2026 The Framekit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "framekit/frame.hpp"

#include "framekit/error.hpp"

namespace framekit {

Frame::Frame(Matrix columns) : columns_(std::move(columns)) {
  if (columns_.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "frame dimension M must be >= 1");
  }
  if (!columns_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "frame has non-finite entries");
  }
}

Frame Frame::Partial(std::size_t n) const {
  if (n > N()) {
    throw Error(ErrorCode::kDimensionMismatch, "partial frame longer than N");
  }
  return Frame(columns_.leftCols(static_cast<Eigen::Index>(n)));
}

Matrix Frame::FrameOperator() const {
  return columns_ * columns_.transpose();
}

Matrix Frame::Gram() const { return columns_.transpose() * columns_; }

Frame Frame::Scaled(double c) const { return Frame(c * columns_); }

Frame Frame::Appended(const Matrix& extra) const {
  if (extra.cols() > 0 && extra.rows() != columns_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "appended vectors have the wrong dimension");
  }
  Matrix out(columns_.rows(), columns_.cols() + extra.cols());
  out << columns_, extra;
  return Frame(std::move(out));
}

std::vector<double> Frame::SquaredNorms() const {
  std::vector<double> out(N());
  for (Eigen::Index n = 0; n < columns_.cols(); ++n) {
    out[static_cast<std::size_t>(n)] = columns_.col(n).squaredNorm();
  }
  return out;
}

}  // namespace framekit
