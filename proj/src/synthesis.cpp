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

#include "framekit/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "framekit/error.hpp"

namespace framekit {
namespace {

constexpr double kRadicandSlack = 1e-10;

double CheckedSqrt(double radicand, const char* which, std::size_t i) {
  if (!(radicand >= -kRadicandSlack)) {
    std::ostringstream os;
    os << "negative radicand " << radicand << " for " << which << "_" << i + 1;
    throw Error(ErrorCode::kNegativeRadicand, os.str());
  }
  return std::sqrt(std::max(radicand, 0.0));
}

// prod_j (x - num_j) / prod_{j != skip} (x - den_j), evaluated as a product of
// paired ratios so long lists neither overflow nor underflow. `num` has one
// more factor than `den` once `skip` is removed.
double RatioProduct(double x, const std::vector<double>& num,
                    const std::vector<double>& den, std::size_t skip) {
  double out = 1.0;
  std::size_t d = 0;
  for (std::size_t j = 0; j < num.size(); ++j) {
    if (d == skip) ++d;
    out *= x - num[j];
    if (d < den.size()) {
      out /= x - den[d];
      ++d;
    }
  }
  return out;
}

void RequireInterlacing(const Spectrum& prev, const Spectrum& next) {
  if (prev.size() != next.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "consecutive spectra must have the same length");
  }
  if (!InterlacesEq(prev.span(), next.span())) {
    throw Error(ErrorCode::kInterlacing,
                "previous spectrum does not interlace on the next one");
  }
}

bool IsOrthogonal(const Matrix& u, double tol) {
  return MaxAbsDiff(u.transpose() * u,
                    Matrix::Identity(u.rows(), u.cols())) <= tol;
}

// Nearest orthogonal matrix in the Frobenius norm.
Matrix Reorthogonalize(const Matrix& u) {
  Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

EigenbasisStep ConstructU(const Spectrum& prev, const Spectrum& next,
                          CancelRule rule, double tol) {
  RequireInterlacing(prev, next);
  if (next.Sum() < prev.Sum() - tol) {
    throw Error(ErrorCode::kInterlacing, "trace decreases between steps");
  }
  const std::size_t M = prev.size();
  const MultisetDiff diff = MultisetDiffTol(prev.span(), next.span(), tol, rule);
  const std::size_t survivors = diff.first.size();

  std::vector<double> r1(survivors), r2(survivors);
  for (std::size_t i = 0; i < survivors; ++i) {
    r1[i] = prev[diff.first[i]];
    r2[i] = next[diff.second[i]];
  }

  Vector p(static_cast<Eigen::Index>(survivors));
  Vector q(static_cast<Eigen::Index>(survivors));
  for (std::size_t i = 0; i < survivors; ++i) {
    p(static_cast<Eigen::Index>(i)) =
        CheckedSqrt(-RatioProduct(r1[i], r2, r1, i), "P", i);
    q(static_cast<Eigen::Index>(i)) =
        CheckedSqrt(RatioProduct(r2[i], r1, r2, i), "Q", i);
  }

  EigenbasisStep step;
  step.u_rel = Matrix::Zero(static_cast<Eigen::Index>(M),
                            static_cast<Eigen::Index>(M));
  step.f_rel = Vector::Zero(static_cast<Eigen::Index>(M));
  for (std::size_t i = 0; i < survivors; ++i) {
    const auto row = static_cast<Eigen::Index>(diff.first[i]);
    step.f_rel(row) = p(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < survivors; ++j) {
      step.u_rel(row, static_cast<Eigen::Index>(diff.second[j])) =
          p(static_cast<Eigen::Index>(i)) * q(static_cast<Eigen::Index>(j)) /
          (r2[j] - r1[i]);
    }
  }
  // Cancelled eigenvalues keep their eigenvectors: pair the k-th cancelled
  // position of `prev` with the k-th cancelled position of `next`.
  {
    std::size_t a = 0, b = 0, s1 = 0, s2 = 0;
    while (a < M && b < M) {
      if (s1 < survivors && diff.first[s1] == a) {
        ++a, ++s1;
        continue;
      }
      if (s2 < survivors && diff.second[s2] == b) {
        ++b, ++s2;
        continue;
      }
      step.u_rel(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          1.0;
      ++a, ++b;
    }
  }

  Matrix diag_prev = Matrix::Zero(static_cast<Eigen::Index>(M),
                                  static_cast<Eigen::Index>(M));
  Matrix diag_next = diag_prev;
  for (std::size_t m = 0; m < M; ++m) {
    diag_prev(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) =
        prev[m];
    diag_next(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) =
        next[m];
  }
  const double scale = std::max(1.0, next.empty() ? 0.0 : next.Max());
  const double residual =
      MaxAbsDiff(step.u_rel * diag_next * step.u_rel.transpose(),
                 diag_prev + step.f_rel * step.f_rel.transpose());
  if (residual > 1e-7 * scale) {
    std::ostringstream os;
    os << "eigenbasis update residual " << residual << " exceeds tolerance";
    throw Error(ErrorCode::kTolerance, os.str());
  }
  return step;
}

Frame ConstructFrame(const OuterEigenstepTable& table, const Matrix& u1,
                     CancelRule rule) {
  if (ValidationReport r = ValidateOuter(table); !r.ok) {
    throw Error(ErrorCode::kInfeasible,
                "table is not a valid outer eigenstep table: " + r.message);
  }
  const auto M = static_cast<Eigen::Index>(table.M);
  if (u1.rows() != M || u1.cols() != M) {
    throw Error(ErrorCode::kDimensionMismatch, "U1 must be M x M");
  }
  if (!IsOrthogonal(u1, 1e-8)) {
    throw Error(ErrorCode::kNotOrthogonal, "U1 is not orthogonal");
  }

  Matrix frame(M, static_cast<Eigen::Index>(table.N));
  if (table.N == 0) return Frame(std::move(frame));
  frame.col(0) = std::sqrt(table.mu[0]) * u1.col(0);
  Matrix basis = u1;
  for (std::size_t n = 1; n < table.N; ++n) {
    const EigenbasisStep step =
        ConstructU(table.Row(n), table.Row(n + 1), rule);
    frame.col(static_cast<Eigen::Index>(n)) = basis * step.f_rel;
    basis = basis * step.u_rel;
    if (!IsOrthogonal(basis, 1e-8)) basis = Reorthogonalize(basis);
  }
  return Frame(std::move(frame));
}

std::vector<ResidueTarget> ResidueNormTargets(const Spectrum& prev,
                                              const Spectrum& next,
                                              double tol) {
  RequireInterlacing(prev, next);
  const std::size_t M = prev.size();
  std::vector<ResidueTarget> out;
  std::size_t begin = 0;
  while (begin < M) {
    std::size_t end = begin + 1;
    while (end < M && prev[begin] - prev[end] <= tol) ++end;
    const double lambda = prev[begin];
    const std::size_t mult_prev = end - begin;

    // Roots of p_prev and p_next away from lambda.
    std::vector<double> others_prev, others_next;
    for (std::size_t m = 0; m < M; ++m) {
      if (m < begin || m >= end) others_prev.push_back(prev[m]);
      if (std::abs(next[m] - lambda) > tol) others_next.push_back(next[m]);
    }
    const std::size_t mult_next = M - others_next.size();

    ResidueTarget t{lambda, mult_prev, 0.0};
    // Interlacing gives mult_next >= mult_prev - 1; the limit is nonzero only
    // when p_prev / p_next keeps exactly one factor (x - lambda).
    if (mult_next + 1 == mult_prev) {
      double value = 1.0;
      std::size_t j = 0;
      for (; j < others_prev.size(); ++j) {
        value *= (lambda - others_next[j]) / (lambda - others_prev[j]);
      }
      for (; j < others_next.size(); ++j) value *= lambda - others_next[j];
      value = -value;
      if (value < -kRadicandSlack) {
        std::ostringstream os;
        os << "negative residue " << value << " at eigenvalue " << lambda;
        throw Error(ErrorCode::kNegativeRadicand, os.str());
      }
      t.target = std::max(value, 0.0);
    }
    out.push_back(t);
    begin = end;
  }
  return out;
}

ValidationReport VerifyFrame(const Frame& frame,
                             const OuterEigenstepTable& table, double tol) {
  if (frame.M() != table.M || frame.N() != table.N ||
      table.rows.size() != table.N + 1 || table.mu.size() != table.N) {
    return ValidationReport::Fail("shape", 0, 0,
                                  "frame and table dimensions differ");
  }
  std::vector<EigenDecomposition> eig(table.N + 1);
  for (std::size_t n = 1; n <= table.N; ++n) {
    const double norm2 = frame.column(n - 1).squaredNorm();
    if (std::abs(norm2 - table.mu[n - 1]) > tol) {
      std::ostringstream os;
      os << "||f_" << n << "||^2 = " << norm2 << " but mu_" << n << " = "
         << table.mu[n - 1];
      return ValidationReport::Fail("norm", n, 0, os.str());
    }
    eig[n] = SymEig(frame.Partial(n).FrameOperator());
    for (std::size_t m = 0; m < table.M; ++m) {
      if (std::abs(eig[n].values[m] - table.rows[n][m]) > tol) {
        std::ostringstream os;
        os << "eigenvalue " << m + 1 << " of F_" << n << " F_" << n
           << "^* is " << eig[n].values[m] << ", table has "
           << table.rows[n][m];
        return ValidationReport::Fail("spectrum", n, m + 1, os.str());
      }
    }
  }
  for (std::size_t n = 1; n < table.N; ++n) {
    const std::vector<ResidueTarget> targets =
        ResidueNormTargets(table.Row(n), table.Row(n + 1));
    const Vector next = frame.column(n);
    std::size_t first = 0;
    for (const ResidueTarget& t : targets) {
      // Eigenvectors are sorted like the table row, so the block of this
      // eigenvalue spans the matching eigenspace.
      const Matrix block = eig[n].vectors.middleCols(
          static_cast<Eigen::Index>(first),
          static_cast<Eigen::Index>(t.multiplicity));
      const double projected = (block.transpose() * next).squaredNorm();
      if (std::abs(projected - t.target) > tol) {
        std::ostringstream os;
        os << "||P f_" << n + 1 << "||^2 = " << projected
           << " on eigenvalue " << t.eigenvalue << " of F_" << n
           << " F_" << n << "^*, expected " << t.target;
        return ValidationReport::Fail("residue", n, first + 1, os.str());
      }
      first += t.multiplicity;
    }
  }
  return ValidationReport::Pass();
}

}  // namespace framekit
