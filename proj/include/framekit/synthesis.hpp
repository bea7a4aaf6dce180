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

// Frame synthesis from eigensteps: each new vector is written in the
// eigenbasis of the current frame operator, with components fixed by the
// residues of p_{n+1}(x) / p_n(x), p_n being the characteristic polynomial of
// F_n F_n^*. The eigenbasis is carried forward by an explicit orthogonal
// update rather than recomputed.

#ifndef FRAMEKIT_SYNTHESIS_HPP_
#define FRAMEKIT_SYNTHESIS_HPP_

#include <cstddef>
#include <vector>

#include "framekit/eigensteps.hpp"
#include "framekit/frame.hpp"
#include "framekit/numerics.hpp"

namespace framekit {

/// One synthesis step in the coordinates of the current eigenbasis U_n.
struct EigenbasisStep {
  /// U_n^* U_{n+1}; orthogonal.
  Matrix u_rel;
  /// U_n^* f_{n+1}.
  Vector f_rel;
};

/// Computes the step taking a frame operator with spectrum `prev` to one with
/// spectrum `next` by adding a single vector.
///
/// Shared eigenvalues are cancelled with MultisetDiffTol; for the surviving
/// values r1 (from `prev`) and r2 (from `next`)
///
///   p_i = sqrt(-prod_j (r1_i - r2_j) / prod_{j != i} (r1_i - r1_j))
///   q_i = sqrt( prod_j (r2_i - r1_j) / prod_{j != i} (r2_i - r2_j))
///   w_ij = p_i q_j / (r2_j - r1_i)
///
/// and u_rel places w on the surviving rows/columns and the identity on the
/// cancelled ones. The result satisfies
/// u_rel diag(next) u_rel^T = diag(prev) + f_rel f_rel^T.
///
/// Throws ErrorCode::kInterlacing if `prev` does not interlace on `next` or
/// the trace decreases, ErrorCode::kNegativeRadicand if a radicand is below
/// -1e-10 and ErrorCode::kTolerance if the identity above fails by more than
/// 1e-7 * max(1, max(next)).
EigenbasisStep ConstructU(const Spectrum& prev, const Spectrum& next,
                          CancelRule rule = CancelRule::kFirstOccurrence,
                          double tol = kTolCancel);

/// Builds the frame realizing an outer eigenstep table.
///
/// f_1 = sqrt(mu_1) times the first column of `u1`; afterwards
/// f_{n+1} = U_n f_rel and U_{n+1} = U_n u_rel. The accumulated basis is
/// projected back onto the orthogonal matrices whenever ||U^T U - I||_max
/// exceeds 1e-8. Throws ErrorCode::kInfeasible for an invalid table,
/// ErrorCode::kNotOrthogonal when `u1` is not orthogonal within 1e-8, and
/// anything ConstructU throws.
Frame ConstructFrame(const OuterEigenstepTable& table, const Matrix& u1,
                     CancelRule rule = CancelRule::kFirstOccurrence);

/// Target ||P_lambda f_{n+1}||^2 for one distinct eigenvalue of `prev`.
struct ResidueTarget {
  double eigenvalue = 0.0;
  std::size_t multiplicity = 0;
  double target = 0.0;
};

/// For every distinct eigenvalue lambda of `prev` (values closer than `tol`
/// are one eigenvalue), the negated limit of (x - lambda) p_next(x) /
/// p_prev(x) as x -> lambda, with p_prev and p_next the monic polynomials
/// whose roots are `prev` and `next`. Evaluated by cancelling shared roots,
/// never by numeric limits. Entries follow `prev` order; values within 1e-10
/// below zero are clamped to zero. Throws ErrorCode::kInterlacing unless
/// `prev` interlaces on `next`.
std::vector<ResidueTarget> ResidueNormTargets(const Spectrum& prev,
                                              const Spectrum& next,
                                              double tol = kTolCancel);

/// Checks a frame against an outer table: for each n the squared norm of f_n
/// matches mu_n, the spectrum of F_n F_n^* matches row n, and for n < N each
/// eigenspace projection ||P_{n;lambda} f_{n+1}||^2 matches
/// ResidueNormTargets(row n, row n + 1), all within `tol`. Clause names are
/// "shape", "norm", "spectrum" and "residue".
ValidationReport VerifyFrame(const Frame& frame,
                             const OuterEigenstepTable& table,
                             double tol = 1e-7);

}  // namespace framekit

#endif  // FRAMEKIT_SYNTHESIS_HPP_
