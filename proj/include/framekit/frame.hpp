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

#ifndef FRAMEKIT_FRAME_HPP_
#define FRAMEKIT_FRAME_HPP_

#include <cstddef>
#include <vector>

#include "framekit/numerics.hpp"

namespace framekit {

/// Synthesis operator of a finite sequence of vectors in R^M: the M x N
/// matrix whose columns are the frame vectors f_1, ..., f_N.
class Frame {
 public:
  Frame() = default;
  /// Throws ErrorCode::kInvalidArgument for non-finite entries or M == 0.
  explicit Frame(Matrix columns);

  std::size_t M() const { return static_cast<std::size_t>(columns_.rows()); }
  std::size_t N() const { return static_cast<std::size_t>(columns_.cols()); }
  const Matrix& matrix() const { return columns_; }
  /// Column n, 0-based.
  Vector column(std::size_t n) const {
    return columns_.col(static_cast<Eigen::Index>(n));
  }

  /// F_n: the first `n` vectors.
  Frame Partial(std::size_t n) const;
  /// F F^*, the sum of the outer products f_n f_n^*.
  Matrix FrameOperator() const;
  /// F^* F, the table of inner products.
  Matrix Gram() const;
  /// c F.
  Frame Scaled(double c) const;
  /// This frame followed by the columns of `extra`.
  Frame Appended(const Matrix& extra) const;
  /// ||f_n||^2 for every n.
  std::vector<double> SquaredNorms() const;

 private:
  Matrix columns_;
};

}  // namespace framekit

#endif  // FRAMEKIT_FRAME_HPP_
