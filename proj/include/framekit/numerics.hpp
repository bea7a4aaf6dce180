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

// Numeric kernels shared by the rest of the library: a sorted spectrum type,
// symmetric eigendecomposition, interlacing predicates, tolerant multiset
// cancellation and the trace-of-inverse functional.

#ifndef FRAMEKIT_NUMERICS_HPP_
#define FRAMEKIT_NUMERICS_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace framekit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Eigenvalues within this of zero are clamped to zero; at or below it an
/// operator is treated as singular.
inline constexpr double kTolEig = 1e-9;
/// Slack allowed in every interlacing inequality.
inline constexpr double kTolInt = 1e-9;
/// Maximum absolute asymmetry accepted by SymEig.
inline constexpr double kTolSym = 1e-10;
/// Default tolerance for matching equal eigenvalues in MultisetDiff.
inline constexpr double kTolCancel = 1e-9;

/// Nonincreasing list of nonnegative eigenvalues.
///
/// Construction rejects values below -kTolEig and orderings that are off by
/// more than kTolInt. Values in [-kTolEig, 0) become 0 and tiny misorderings
/// are resolved by sorting.
class Spectrum {
 public:
  Spectrum() = default;
  explicit Spectrum(std::vector<double> values);
  Spectrum(std::initializer_list<double> values)
      : Spectrum(std::vector<double>(values)) {}

  /// Sorts arbitrary nonnegative values into a spectrum.
  static Spectrum FromUnsorted(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> span() const { return values_; }

  double Sum() const;
  /// Largest eigenvalue; the optimal upper frame bound.
  double Max() const { return values_.front(); }
  /// Smallest eigenvalue; the optimal lower frame bound.
  double Min() const { return values_.back(); }

  /// Every eigenvalue multiplied by `factor`.
  Spectrum Scaled(double factor) const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> values_;
};

struct EigenDecomposition {
  /// Eigenvalues, nonincreasing. May be negative for indefinite input.
  std::vector<double> values;
  /// Orthonormal eigenvectors; column k pairs with values[k].
  Matrix vectors;

  /// The eigenvalues as a Spectrum; throws unless they are nonnegative up to
  /// kTolEig.
  Spectrum ToSpectrum() const { return Spectrum(values); }
};

/// Eigendecomposition of a symmetric matrix, eigenvalues nonincreasing.
///
/// Within a group of eigenvalues equal to kTolEig the eigenvectors are ordered
/// by the coordinate index of their largest-magnitude component, and every
/// eigenvector is signed so that this component is positive. Throws
/// ErrorCode::kNotSymmetric when asymmetry exceeds kTolSym and
/// ErrorCode::kDimensionMismatch for non-square input.
EigenDecomposition SymEig(const Matrix& g);

/// Spectrum of a positive-semidefinite matrix.
Spectrum PsdSpectrum(const Matrix& g);

/// `alpha` (length n-1) interlaces on `beta` (length n):
/// beta[m+1] <= alpha[m] <= beta[m] for every m, up to kTolInt.
bool InterlacesGrow(std::span<const double> alpha, std::span<const double> beta);

/// Equal-length interlacing, the shape produced by a rank-one update of an
/// M x M operator: alpha[M-1] <= beta[M-1] and beta[m+1] <= alpha[m] <= beta[m].
bool InterlacesEq(std::span<const double> alpha, std::span<const double> beta);

/// Which of several equal candidates the cancellation scan removes.
enum class CancelRule {
  /// Lowest position (modern MATLAB `ismember`). Default.
  kFirstOccurrence,
  /// Highest position (MATLAB `ismember` before R2013a).
  kLastOccurrence,
};

struct MultisetDiff {
  /// Surviving positions in the first list, increasing.
  std::vector<std::size_t> first;
  /// Surviving positions in the second list, increasing.
  std::vector<std::size_t> second;
};

/// Cancels equal values between two equal-length nonincreasing lists.
///
/// Scans `e1` in order; each value that matches (within `tol`) a not yet
/// cancelled entry of `e2` cancels one occurrence in each list, selected per
/// `rule`. Returns the surviving index sets, which always have equal size.
MultisetDiff MultisetDiffTol(std::span<const double> e1,
                             std::span<const double> e2,
                             double tol = kTolCancel,
                             CancelRule rule = CancelRule::kFirstOccurrence);

/// Sum of reciprocal eigenvalues, i.e. Tr[S^-1] for an operator S with this
/// spectrum. Throws ErrorCode::kSingular if any eigenvalue is <= kTolEig.
double TraceInverse(const Spectrum& lambda);

/// Largest absolute entry of `a - b`.
double MaxAbsDiff(const Matrix& a, const Matrix& b);

}  // namespace framekit

#endif  // FRAMEKIT_NUMERICS_HPP_
