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

#include "framekit/eigensteps.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "framekit/error.hpp"

namespace framekit {

NormSequence::NormSequence(std::vector<double> mu) : mu_(std::move(mu)) {
  for (std::size_t n = 0; n < mu_.size(); ++n) {
    if (!std::isfinite(mu_[n]) || mu_[n] < 0.0) {
      std::ostringstream os;
      os << "norm " << n + 1 << " must be finite and nonnegative";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
}

bool NormSequence::IsNonincreasing() const {
  return std::is_sorted(mu_.begin(), mu_.end(), std::greater<>());
}

double NormSequence::PartialSum(std::size_t n) const {
  return std::accumulate(mu_.begin(),
                         mu_.begin() + static_cast<std::ptrdiff_t>(
                                           std::min(n, mu_.size())),
                         0.0);
}

OuterEigenstepTable OuterEigenstepTable::FromSteps(
    std::vector<std::vector<double>> steps, NormSequence mu) {
  if (steps.empty() || steps.front().empty()) {
    throw Error(ErrorCode::kDimensionMismatch, "eigenstep table is empty");
  }
  OuterEigenstepTable table;
  table.M = steps.front().size();
  table.N = steps.size();
  table.lambda = steps.back();
  table.rows.reserve(steps.size() + 1);
  table.rows.emplace_back(table.M, 0.0);
  for (auto& row : steps) table.rows.push_back(std::move(row));
  table.mu = std::move(mu);
  return table;
}

double TraceTolerance(const NormSequence& mu) {
  return 1e-8 * std::max(1.0, mu.Sum());
}

namespace {

std::string Describe(const char* what, std::size_t n, std::size_t m) {
  std::ostringstream os;
  os << what << " at n=" << n;
  if (m > 0) os << ", m=" << m;
  return os.str();
}

// First position (1-based) where `row` is negative or increasing; 0 if none.
std::size_t FirstNonSpectrumEntry(const std::vector<double>& row) {
  for (std::size_t m = 0; m < row.size(); ++m) {
    if (!std::isfinite(row[m]) || row[m] < -kTolEig) return m + 1;
    if (m > 0 && row[m] > row[m - 1] + kTolInt) return m + 1;
  }
  return 0;
}

// First m (1-based) where beta[m+1] <= alpha[m] <= beta[m] fails, reading
// beta[size] as 0 when alpha and beta have equal length. 0 if none.
std::size_t FirstInterlacingViolation(const std::vector<double>& alpha,
                                      const std::vector<double>& beta) {
  for (std::size_t m = 0; m < alpha.size(); ++m) {
    const double below = m + 1 < beta.size() ? beta[m + 1] : 0.0;
    if (below > alpha[m] + kTolInt || alpha[m] > beta[m] + kTolInt) {
      return m + 1;
    }
  }
  return 0;
}

double Sum(const std::vector<double>& row) {
  return std::accumulate(row.begin(), row.end(), 0.0);
}

}  // namespace

ValidationReport ValidateOuter(const OuterEigenstepTable& t) {
  if (t.rows.size() != t.N + 1 || t.mu.size() != t.N ||
      t.lambda.size() != t.M) {
    throw Error(ErrorCode::kDimensionMismatch,
                "outer table needs N+1 rows, N norms and M final eigenvalues");
  }
  for (const auto& row : t.rows) {
    if (row.size() != t.M) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "outer table rows must all have length M");
    }
  }
  const double trace_tol = TraceTolerance(t.mu);

  for (std::size_t m = 0; m < t.M; ++m) {
    if (std::abs(t.rows[0][m]) > kTolEig) {
      return ValidationReport::Fail("i", 0, m + 1,
                                    Describe("row 0 is not zero", 0, m + 1));
    }
  }
  for (std::size_t m = 0; m < t.M; ++m) {
    if (std::abs(t.rows[t.N][m] - t.lambda[m]) > trace_tol) {
      return ValidationReport::Fail(
          "ii", t.N, m + 1,
          Describe("last row differs from the final spectrum", t.N, m + 1));
    }
  }
  for (std::size_t n = 1; n <= t.N; ++n) {
    if (std::size_t m = FirstNonSpectrumEntry(t.rows[n]); m != 0) {
      return ValidationReport::Fail(
          "iii", n, m, Describe("row is not nonnegative nonincreasing", n, m));
    }
    if (std::size_t m = FirstInterlacingViolation(t.rows[n - 1], t.rows[n]);
        m != 0) {
      return ValidationReport::Fail(
          "iii", n, m,
          Describe("row n-1 does not interlace on row n", n, m));
    }
  }
  for (std::size_t n = 1; n <= t.N; ++n) {
    const double sum = Sum(t.rows[n]);
    if (std::abs(sum - t.mu.PartialSum(n)) > trace_tol) {
      std::ostringstream os;
      os << "row sum " << sum << " != norm sum " << t.mu.PartialSum(n)
         << " at n=" << n;
      return ValidationReport::Fail("iv", n, 0, os.str());
    }
  }
  return ValidationReport::Pass();
}

ValidationReport ValidateInner(const InnerEigenstepTable& t) {
  if (t.rows.size() != t.N || t.mu.size() != t.N || t.lambda.size() != t.N) {
    throw Error(ErrorCode::kDimensionMismatch,
                "inner table needs N rows, N norms and N final eigenvalues");
  }
  for (std::size_t n = 1; n <= t.N; ++n) {
    if (t.rows[n - 1].size() != n) {
      std::ostringstream os;
      os << "inner row " << n << " must have exactly " << n << " entries";
      throw Error(ErrorCode::kDimensionMismatch, os.str());
    }
  }
  const double trace_tol = TraceTolerance(t.mu);
  if (t.N == 0) return ValidationReport::Pass();

  for (std::size_t m = 0; m < t.N; ++m) {
    if (std::abs(t.rows[t.N - 1][m] - t.lambda[m]) > trace_tol) {
      return ValidationReport::Fail(
          "i", t.N, m + 1,
          Describe("last row differs from the final spectrum", t.N, m + 1));
    }
  }
  for (std::size_t n = 1; n <= t.N; ++n) {
    if (std::size_t m = FirstNonSpectrumEntry(t.rows[n - 1]); m != 0) {
      return ValidationReport::Fail(
          "ii", n, m, Describe("row is not nonnegative nonincreasing", n, m));
    }
    if (n >= 2) {
      if (std::size_t m =
              FirstInterlacingViolation(t.rows[n - 2], t.rows[n - 1]);
          m != 0) {
        return ValidationReport::Fail(
            "ii", n, m, Describe("row n-1 does not interlace on row n", n, m));
      }
    }
  }
  for (std::size_t n = 1; n <= t.N; ++n) {
    const double sum = Sum(t.rows[n - 1]);
    if (std::abs(sum - t.mu.PartialSum(n)) > trace_tol) {
      std::ostringstream os;
      os << "row sum " << sum << " != norm sum " << t.mu.PartialSum(n)
         << " at n=" << n;
      return ValidationReport::Fail("iii", n, 0, os.str());
    }
  }
  return ValidationReport::Pass();
}

namespace {

std::vector<double> Resized(const std::vector<double>& row, std::size_t size) {
  std::vector<double> out(size, 0.0);
  std::copy_n(row.begin(), std::min(size, row.size()), out.begin());
  return out;
}

}  // namespace

InnerEigenstepTable OuterToInner(const OuterEigenstepTable& table) {
  if (ValidationReport r = ValidateOuter(table); !r.ok) {
    throw Error(ErrorCode::kInfeasible, "not outer eigensteps: " + r.message);
  }
  InnerEigenstepTable inner;
  inner.N = table.N;
  inner.mu = table.mu;
  inner.rows.reserve(table.N);
  for (std::size_t n = 1; n <= table.N; ++n) {
    inner.rows.push_back(Resized(table.rows[n], n));
  }
  inner.lambda = Resized(table.lambda, table.N);
  return inner;
}

OuterEigenstepTable InnerToOuter(const InnerEigenstepTable& table,
                                 std::size_t M) {
  if (M == 0) {
    throw Error(ErrorCode::kInvalidArgument, "ambient dimension must be >= 1");
  }
  if (ValidationReport r = ValidateInner(table); !r.ok) {
    throw Error(ErrorCode::kInfeasible, "not inner eigensteps: " + r.message);
  }
  OuterEigenstepTable outer;
  outer.M = M;
  outer.N = table.N;
  outer.mu = table.mu;
  outer.rows.reserve(table.N + 1);
  outer.rows.emplace_back(M, 0.0);
  for (std::size_t n = 1; n <= table.N; ++n) {
    const auto& row = table.rows[n - 1];
    for (std::size_t m = M; m < row.size(); ++m) {
      if (row[m] > kTolEig) {
        std::ostringstream os;
        os << "entry lambda_{" << n << ";" << m + 1 << "}=" << row[m]
           << " would be truncated to fit dimension " << M;
        throw Error(ErrorCode::kTruncation, os.str());
      }
    }
    outer.rows.push_back(Resized(row, M));
  }
  outer.lambda = Resized(table.lambda, M);
  return outer;
}

OuterEigenstepTable SampleEigensteps(const Spectrum& lambda,
                                     const NormSequence& mu,
                                     std::uint64_t seed) {
  const std::size_t M = lambda.size();
  const std::size_t N = mu.size();
  if (M == 0 || N == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "sampling needs a nonempty spectrum and norm sequence");
  }
  if (!mu.IsNonincreasing()) {
    throw Error(ErrorCode::kInvalidArgument, "norms must be nonincreasing");
  }
  const double tol = TraceTolerance(mu);
  if (std::abs(lambda.Sum() - mu.Sum()) > tol) {
    std::ostringstream os;
    os << "trace mismatch: sum(lambda)=" << lambda.Sum()
       << " but sum(mu)=" << mu.Sum();
    throw Error(ErrorCode::kInfeasible, os.str());
  }
  {
    double lambda_prefix = 0.0;
    for (std::size_t k = 1; k <= std::max(M, N); ++k) {
      if (k <= M) lambda_prefix += lambda[k - 1];
      if (lambda_prefix < mu.PartialSum(k) - tol) {
        std::ostringstream os;
        os << "spectrum does not majorize the norms (prefix " << k << ")";
        throw Error(ErrorCode::kInfeasible, os.str());
      }
    }
  }

  std::mt19937_64 rng(seed);
  auto uniform01 = [&rng] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };

  std::vector<std::vector<double>> rows(N + 1, std::vector<double>(M, 0.0));
  rows[N] = lambda.values();

  for (std::size_t n = N - 1; n >= 1; --n) {
    const std::vector<double>& next = rows[n + 1];
    const double total = mu.PartialSum(n);
    std::vector<double> lower(M), upper(M), target(M);
    for (std::size_t m = 0; m < M; ++m) {
      lower[m] = m + 1 < M ? next[m + 1] : 0.0;
      // Row n has rank at most n.
      upper[m] = m < n ? next[m] : 0.0;
      // Majorization: sum of the first k entries >= mu_1 + ... + mu_k.
      target[m] = mu.PartialSum(std::min(m + 1, n));
      if (lower[m] > upper[m] + tol) {
        std::ostringstream os;
        os << "empty interlacing interval at n=" << n << ", m=" << m + 1;
        throw Error(ErrorCode::kInfeasible, os.str());
      }
      lower[m] = std::min(lower[m], upper[m]);
    }
    std::vector<double> upper_tail(M + 1, 0.0), lower_tail(M + 1, 0.0);
    for (std::size_t m = M; m-- > 0;) {
      upper_tail[m] = upper_tail[m + 1] + upper[m];
      lower_tail[m] = lower_tail[m + 1] + lower[m];
    }

    std::vector<double>& row = rows[n];
    double prefix = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      double lo = std::max(lower[m], total - prefix - upper_tail[m + 1]);
      double reach = 0.0;
      for (std::size_t k = m; k < M; ++k) {
        lo = std::max(lo, target[k] - prefix - reach);
        if (k + 1 < M) reach += upper[k + 1];
      }
      const double hi =
          std::min(upper[m], total - prefix - lower_tail[m + 1]);
      if (lo > hi + tol) {
        std::ostringstream os;
        os << "empty feasible interval at n=" << n << ", m=" << m + 1;
        throw Error(ErrorCode::kInfeasible, os.str());
      }
      double x = hi > lo ? lo + uniform01() * (hi - lo) : hi;
      x = std::clamp(x, lower[m], upper[m]);
      row[m] = x;
      prefix += x;
    }
  }
  return OuterEigenstepTable::FromSteps(
      std::vector<std::vector<double>>(rows.begin() + 1, rows.end()), mu);
}

}  // namespace framekit
