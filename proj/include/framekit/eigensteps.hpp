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

// Outer and inner eigenstep tables: validation, conversion between the two
// forms by zero padding, and seeded sampling of outer tables.

#ifndef FRAMEKIT_EIGENSTEPS_HPP_
#define FRAMEKIT_EIGENSTEPS_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "framekit/numerics.hpp"

namespace framekit {

/// Squared norms mu_n = ||f_n||^2 of the frame vectors. Entries are
/// nonnegative; validators and the sampler additionally need them
/// nonincreasing.
class NormSequence {
 public:
  NormSequence() = default;
  explicit NormSequence(std::vector<double> mu);
  NormSequence(std::initializer_list<double> mu)
      : NormSequence(std::vector<double>(mu)) {}

  std::size_t size() const { return mu_.size(); }
  double operator[](std::size_t n) const { return mu_[n]; }
  const std::vector<double>& values() const { return mu_; }
  bool IsNonincreasing() const;
  /// Sum of the first `n` norms.
  double PartialSum(std::size_t n) const;
  double Sum() const { return PartialSum(mu_.size()); }

  friend bool operator==(const NormSequence&, const NormSequence&) = default;

 private:
  std::vector<double> mu_;
};

/// Spectra lambda_{n;m} of the frame operators F_n F_n^* of the partial
/// frames, n = 0..N, each of length M. Row 0 is all zeros and row N the final
/// spectrum.
struct OuterEigenstepTable {
  std::size_t M = 0;
  std::size_t N = 0;
  /// N + 1 rows of M entries.
  std::vector<std::vector<double>> rows;
  NormSequence mu;
  std::vector<double> lambda;

  /// Builds a table from rows 1..N; row 0 is inserted and `lambda` is taken
  /// from row N.
  static OuterEigenstepTable FromSteps(std::vector<std::vector<double>> steps,
                                       NormSequence mu);

  Spectrum Row(std::size_t n) const { return Spectrum(rows.at(n)); }

  friend bool operator==(const OuterEigenstepTable&,
                         const OuterEigenstepTable&) = default;
};

/// Spectra lambda_{n;m} of the Gram matrices F_n^* F_n, n = 1..N; row n has
/// exactly n entries. `rows[0]` holds n = 1.
struct InnerEigenstepTable {
  std::size_t N = 0;
  std::vector<std::vector<double>> rows;
  NormSequence mu;
  /// Length N, zero padded past the ambient dimension.
  std::vector<double> lambda;

  friend bool operator==(const InnerEigenstepTable&,
                         const InnerEigenstepTable&) = default;
};

/// Outcome of a validator. On failure `clause` names the violated property
/// and (n, m) its location (m is 1-based, 0 when the whole row is at fault).
struct ValidationReport {
  bool ok = true;
  std::string clause;
  std::size_t n = 0;
  std::size_t m = 0;
  std::string message;

  static ValidationReport Pass() { return {}; }
  static ValidationReport Fail(std::string clause, std::size_t n,
                               std::size_t m, std::string message) {
    return {false, std::move(clause), n, m, std::move(message)};
  }
};

/// Absolute trace tolerance used by the validators: 1e-8 * max(1, sum(mu)).
double TraceTolerance(const NormSequence& mu);

/// Checks clauses (i)-(iv) of outer eigensteps. Clause names are "i", "ii",
/// "iii", "iv", plus "spectrum" for a row that is negative or unsorted.
/// Throws ErrorCode::kDimensionMismatch for inconsistent shapes.
ValidationReport ValidateOuter(const OuterEigenstepTable& table);

/// Checks clauses (i)-(iii) of inner eigensteps. Throws
/// ErrorCode::kDimensionMismatch unless the rows are exactly triangular.
ValidationReport ValidateInner(const InnerEigenstepTable& table);

/// Keeps the first min(n, M) entries of outer row n and zero pads to n.
/// Throws ErrorCode::kInfeasible unless the table is valid.
InnerEigenstepTable OuterToInner(const OuterEigenstepTable& table);

/// Truncates or zero pads each inner row to length M and prepends row 0.
/// Throws ErrorCode::kTruncation if a dropped entry exceeds kTolEig and
/// ErrorCode::kInfeasible if the input is not a valid inner table.
OuterEigenstepTable InnerToOuter(const InnerEigenstepTable& table,
                                 std::size_t M);

/// Draws an outer eigenstep table ending at `lambda` with trace increments
/// `mu`.
///
/// Rows are sampled backwards from row N. Each coordinate of row n is drawn
/// uniformly from the interval that keeps it interlacing with row n + 1, keeps
/// the row sum at mu_1 + ... + mu_n, and keeps row n majorizing
/// (mu_1, ..., mu_n) so that the earlier rows stay constructible. The result
/// is a deterministic function of the inputs and `seed`. Throws
/// ErrorCode::kInfeasible when sum(lambda) != sum(mu), when lambda does not
/// majorize mu, or when an interval is empty; ErrorCode::kInvalidArgument for
/// increasing mu.
OuterEigenstepTable SampleEigensteps(const Spectrum& lambda,
                                     const NormSequence& mu,
                                     std::uint64_t seed);

}  // namespace framekit

#endif  // FRAMEKIT_EIGENSTEPS_HPP_
