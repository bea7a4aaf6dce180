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

#include "framekit/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "framekit/error.hpp"

namespace framekit {

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double& v = values_[i];
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "spectrum entry is not finite");
    }
    if (v < -kTolEig) {
      std::ostringstream os;
      os << "spectrum entry " << i << " is negative (" << v << ")";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
    if (v < 0.0) v = 0.0;
    if (i > 0 && v > values_[i - 1] + kTolInt) {
      std::ostringstream os;
      os << "spectrum is not nonincreasing at entry " << i;
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
  std::stable_sort(values_.begin(), values_.end(), std::greater<>());
}

Spectrum Spectrum::FromUnsorted(std::vector<double> values) {
  std::sort(values.begin(), values.end(), std::greater<>());
  return Spectrum(std::move(values));
}

double Spectrum::Sum() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

Spectrum Spectrum::Scaled(double factor) const {
  std::vector<double> out = values_;
  for (double& v : out) v *= factor;
  return Spectrum(std::move(out));
}

namespace {

Eigen::Index DominantIndex(const Eigen::Ref<const Vector>& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (std::abs(v(i)) > std::abs(v(best)) + 1e-12) best = i;
  }
  return best;
}

}  // namespace

EigenDecomposition SymEig(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "sym_eig requires a nonempty square matrix");
  }
  if (!g.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "matrix has non-finite entries");
  }
  const double asym = (g - g.transpose()).cwiseAbs().maxCoeff();
  if (asym > kTolSym) {
    std::ostringstream os;
    os << "matrix is not symmetric (max asymmetry " << asym << ")";
    throw Error(ErrorCode::kNotSymmetric, os.str());
  }
  const Matrix sym = 0.5 * (g + g.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kTolerance, "symmetric eigensolver did not converge");
  }
  const Eigen::Index n = g.rows();

  // Eigen sorts ascending; we want nonincreasing.
  std::vector<double> values(static_cast<std::size_t>(n));
  Matrix vectors(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    values[static_cast<std::size_t>(k)] = solver.eigenvalues()(n - 1 - k);
    vectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }

  std::vector<Eigen::Index> dominant(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index d = DominantIndex(vectors.col(k));
    if (vectors(d, k) < 0.0) vectors.col(k) *= -1.0;
    dominant[static_cast<std::size_t>(k)] = d;
  }

  // Order each cluster of (numerically) equal eigenvalues by dominant index.
  std::size_t begin = 0;
  while (begin < values.size()) {
    std::size_t end = begin + 1;
    while (end < values.size() && values[end - 1] - values[end] <= kTolEig) {
      ++end;
    }
    if (end - begin > 1) {
      std::vector<std::size_t> order(end - begin);
      std::iota(order.begin(), order.end(), begin);
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return dominant[a] < dominant[b];
                       });
      const Matrix block = vectors.middleCols(static_cast<Eigen::Index>(begin),
                                              static_cast<Eigen::Index>(end - begin));
      for (std::size_t k = 0; k < order.size(); ++k) {
        vectors.col(static_cast<Eigen::Index>(begin + k)) =
            block.col(static_cast<Eigen::Index>(order[k] - begin));
      }
    }
    begin = end;
  }
  return {std::move(values), std::move(vectors)};
}

Spectrum PsdSpectrum(const Matrix& g) { return SymEig(g).ToSpectrum(); }

bool InterlacesGrow(std::span<const double> alpha,
                    std::span<const double> beta) {
  if (alpha.size() + 1 != beta.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "interlaces_grow needs lengths n-1 and n");
  }
  for (std::size_t m = 0; m < alpha.size(); ++m) {
    if (beta[m + 1] > alpha[m] + kTolInt) return false;
    if (alpha[m] > beta[m] + kTolInt) return false;
  }
  return true;
}

bool InterlacesEq(std::span<const double> alpha,
                  std::span<const double> beta) {
  if (alpha.size() != beta.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "interlaces_eq needs equal lengths");
  }
  const std::size_t n = alpha.size();
  if (n == 0) return true;
  if (alpha[n - 1] > beta[n - 1] + kTolInt) return false;
  for (std::size_t m = 0; m + 1 < n; ++m) {
    if (beta[m + 1] > alpha[m] + kTolInt) return false;
    if (alpha[m] > beta[m] + kTolInt) return false;
  }
  return true;
}

MultisetDiff MultisetDiffTol(std::span<const double> e1,
                             std::span<const double> e2, double tol,
                             CancelRule rule) {
  if (e1.size() != e2.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "multiset_diff_tol needs equal lengths");
  }
  const std::size_t n = e1.size();
  std::vector<bool> gone1(n, false);
  std::vector<bool> gone2(n, false);

  auto find = [&](std::span<const double> list, const std::vector<bool>& gone,
                  double value) -> std::ptrdiff_t {
    std::ptrdiff_t hit = -1;
    for (std::size_t k = 0; k < list.size(); ++k) {
      if (gone[k] || std::abs(list[k] - value) > tol) continue;
      hit = static_cast<std::ptrdiff_t>(k);
      if (rule == CancelRule::kFirstOccurrence) break;
    }
    return hit;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::ptrdiff_t in2 = find(e2, gone2, e1[i]);
    if (in2 < 0) continue;
    const std::ptrdiff_t in1 = find(e1, gone1, e1[i]);
    if (in1 < 0) continue;
    gone1[static_cast<std::size_t>(in1)] = true;
    gone2[static_cast<std::size_t>(in2)] = true;
  }

  MultisetDiff out;
  for (std::size_t k = 0; k < n; ++k) {
    if (!gone1[k]) out.first.push_back(k);
    if (!gone2[k]) out.second.push_back(k);
  }
  return out;
}

double TraceInverse(const Spectrum& lambda) {
  double sum = 0.0;
  for (std::size_t m = 0; m < lambda.size(); ++m) {
    if (lambda[m] <= kTolEig) {
      std::ostringstream os;
      os << "frame operator is singular (eigenvalue " << m << " is "
         << lambda[m] << ")";
      throw Error(ErrorCode::kSingular, os.str());
    }
    sum += 1.0 / lambda[m];
  }
  return sum;
}

double MaxAbsDiff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix shapes differ");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace framekit
