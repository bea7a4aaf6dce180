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

// Reconstruction quality of a frame: canonical dual, frame bounds and the
// mean square error of dual-frame reconstruction under additive iid noise,
// both in closed form and by Monte-Carlo simulation.

#ifndef FRAMEKIT_ANALYSIS_HPP_
#define FRAMEKIT_ANALYSIS_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "framekit/frame.hpp"
#include "framekit/numerics.hpp"

namespace framekit {

enum class NoiseDistribution { kGaussian, kUniform };

NoiseDistribution ParseNoiseDistribution(std::string_view name);
std::string_view NoiseDistributionName(NoiseDistribution d);

/// Zero-mean iid noise with per-entry variance sigma2. The uniform variant is
/// supported on [-sigma sqrt(3), sigma sqrt(3)].
struct NoiseModel {
  NoiseModel(double sigma2, NoiseDistribution distribution,
             std::uint64_t seed);

  double sigma2;
  NoiseDistribution distribution;
  std::uint64_t seed;
};

/// A dual frame G of F, meaning F G^* = I.
struct DualFrame {
  Matrix matrix;
};

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// (F F^*)^{-1} F. Throws ErrorCode::kSingular if F does not span R^M.
DualFrame CanonicalDual(const Frame& frame);

/// Smallest and largest eigenvalue of F F^*. F is a frame iff lower > kTolEig.
FrameBounds GetFrameBounds(const Frame& frame);

/// sigma2 Tr[(F F^*)^{-1}] through the eigenvalues of F F^*.
double MseClosedForm(const Frame& frame, const NoiseModel& noise);

/// sigma2 Tr[(F F^*)^{-1}] through an explicit inverse; a second route used to
/// cross-check MseClosedForm.
double MseByInversion(const Frame& frame, const NoiseModel& noise);

/// sigma2 M^2 / N, the error of any unit norm tight frame.
double MseUntf(std::size_t M, std::size_t N, double sigma2);

/// Unit-norm columns and max - min eigenvalue of F F^* both within `tol`.
bool IsUntf(const Frame& frame, double tol);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::size_t trials = 0;
};

/// Sample mean of ||G e||^2 over `trials` noise draws e in R^N, with its
/// standard error. Trial t draws from a generator seeded by (noise.seed, t),
/// so the result does not depend on `threads`. Throws ErrorCode::kDuality if
/// ||F G^* - I||_max > 1e-6.
MonteCarloEstimate MonteCarloMse(const Frame& frame, const DualFrame& dual,
                                 const NoiseModel& noise, std::size_t trials,
                                 unsigned threads = 1);

}  // namespace framekit

#endif  // FRAMEKIT_ANALYSIS_HPP_
