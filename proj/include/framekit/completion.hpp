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

// Norm-constrained frame completion: append vectors of prescribed squared
// norms to an existing frame so that Tr[(F F^*)^{-1}] of the completed frame
// is as small as possible.
//
// The objective depends on the completed frame only through the spectrum of
// its frame operator, so the search runs over chains of spectra, each
// interlacing on the next with trace increment equal to one prescribed norm.
// The best chain found is then realized vector by vector with the eigenstep
// synthesis step.

#ifndef FRAMEKIT_COMPLETION_HPP_
#define FRAMEKIT_COMPLETION_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "framekit/frame.hpp"
#include "framekit/numerics.hpp"

namespace framekit {

struct CompletionOptions {
  /// Smallest line-search step, relative to the sum of the new norms.
  double grid = 1e-3;
  /// Random restarts on top of the greedy start.
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  /// Allowed deviation of the synthesized final spectrum from the optimum.
  double tolerance = 1e-6;
  /// Coordinate-descent sweeps per restart.
  std::size_t max_sweeps = 100;
  /// Brute-force samples for the certificate; 0 disables it.
  std::size_t oracle_samples = 0;
};

struct CompletionProblem {
  Frame initial;
  /// Squared norms of the vectors to append, in column order.
  std::vector<double> mu_new;
  CompletionOptions options;

  /// Throws ErrorCode::kInvalidArgument unless mu_new is nonempty and
  /// strictly positive.
  void Validate() const;
};

struct OracleCertificate {
  double oracle_objective = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  /// objective <= oracle_objective + 1e-3.
  bool dominates = false;
};

struct CompletionResult {
  /// Appended vectors as columns; column k has squared norm mu_new[k].
  Matrix appended;
  /// Initial columns followed by the appended ones.
  Frame completed;
  Spectrum final_spectrum;
  /// Tr[(F_N F_N^*)^{-1}]; +inf when the completed frame does not span.
  double objective = 0.0;
  /// Spectra of the frame operator after 0, 1, ..., k appended vectors, in
  /// the order the vectors were synthesized.
  std::vector<Spectrum> chain;
  /// Trace increment of each chain step.
  std::vector<double> chain_norms;
  std::optional<OracleCertificate> certificate;
};

/// Sum of reciprocal eigenvalues, +inf if any is <= kTolEig.
double CompletionObjective(const Spectrum& lambda);

/// Spectrum of F0 F0^*; F0 need not span.
Spectrum InitialSpectrum(const Frame& initial);

struct SpectrumOptimization {
  std::vector<Spectrum> chain;
  double objective = 0.0;
  /// Objective after each accepted move of the winning restart.
  std::vector<double> history;
  std::size_t restart = 0;
};

/// Minimizes sum(1 / lambda) over the spectra reachable from `start` by
/// sequential rank-one steps with trace increments `increments`, taken in
/// the order given.
///
/// Single steps are solved exactly by water-filling inside the interlacing
/// caps. Chains start from the greedy sequence of such steps (and from random
/// feasible chains for the restarts) and are improved by moving mass between
/// two coordinates of one intermediate spectrum and re-filling the later
/// steps. Deterministic given options.seed.
SpectrumOptimization OptimizeChain(const Spectrum& start,
                                   const std::vector<double>& increments,
                                   const CompletionOptions& options);

/// OptimizeChain with the norms sorted nonincreasing; returns the final
/// spectrum and chain.
SpectrumOptimization OptimizeFinalSpectrum(const Spectrum& lambda0,
                                           const std::vector<double>& mu_new,
                                           const CompletionOptions& options);

/// Solves a completion problem: optimize the spectrum chain, synthesize one
/// vector per step in the eigenbasis of the running frame operator, and check
/// the final spectrum against the optimum within options.tolerance. A failed
/// check is retried once with near-equal chain entries snapped together,
/// then raises ErrorCode::kTolerance.
CompletionResult CompleteFrame(const CompletionProblem& problem);

/// Random-search reference: draws `samples` tuples of vectors uniformly from
/// the spheres of radius sqrt(mu_new[k]) and keeps the best. Allowed when
/// M <= 3 and at most two vectors are appended, or samples <= 1e6; otherwise
/// throws ErrorCode::kGuard.
CompletionResult BruteForceCompletion(const CompletionProblem& problem,
                                      std::size_t samples, std::uint64_t seed);

}  // namespace framekit

#endif  // FRAMEKIT_COMPLETION_HPP_
