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

#include "framekit/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "framekit/error.hpp"

namespace framekit {

NoiseDistribution ParseNoiseDistribution(std::string_view name) {
  if (name == "gaussian") return NoiseDistribution::kGaussian;
  if (name == "uniform") return NoiseDistribution::kUniform;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown noise distribution '" + std::string(name) + "'");
}

std::string_view NoiseDistributionName(NoiseDistribution d) {
  return d == NoiseDistribution::kGaussian ? "gaussian" : "uniform";
}

NoiseModel::NoiseModel(double sigma2, NoiseDistribution distribution,
                       std::uint64_t seed)
    : sigma2(sigma2), distribution(distribution), seed(seed) {
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
    throw Error(ErrorCode::kInvalidArgument, "noise variance must be > 0");
  }
}

DualFrame CanonicalDual(const Frame& frame) {
  const Matrix s = frame.FrameOperator();
  // Throws on a singular operator before the solve.
  TraceInverse(PsdSpectrum(s));
  return {s.ldlt().solve(frame.matrix())};
}

FrameBounds GetFrameBounds(const Frame& frame) {
  const Spectrum spectrum = PsdSpectrum(frame.FrameOperator());
  return {spectrum.Min(), spectrum.Max()};
}

double MseClosedForm(const Frame& frame, const NoiseModel& noise) {
  return noise.sigma2 * TraceInverse(PsdSpectrum(frame.FrameOperator()));
}

double MseByInversion(const Frame& frame, const NoiseModel& noise) {
  const Matrix s = frame.FrameOperator();
  Eigen::FullPivLU<Matrix> lu(s);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::kSingular, "frame operator is not invertible");
  }
  return noise.sigma2 * lu.inverse().trace();
}

double MseUntf(std::size_t M, std::size_t N, double sigma2) {
  if (M == 0 || M > N) {
    throw Error(ErrorCode::kInvalidArgument,
                "a unit norm tight frame needs 1 <= M <= N");
  }
  if (!(sigma2 > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise variance must be > 0");
  }
  const double m = static_cast<double>(M);
  return sigma2 * m * m / static_cast<double>(N);
}

bool IsUntf(const Frame& frame, double tol) {
  for (double norm2 : frame.SquaredNorms()) {
    if (std::abs(norm2 - 1.0) > tol) return false;
  }
  const Spectrum spectrum = PsdSpectrum(frame.FrameOperator());
  return spectrum.Max() - spectrum.Min() <= tol && spectrum.Min() > kTolEig;
}

namespace {

// SplitMix64 finalizer; decorrelates (seed, trial) pairs.
std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double TrialError(const Matrix& dual, const NoiseModel& noise,
                  std::size_t trial) {
  std::mt19937_64 rng(Mix(Mix(noise.seed) ^ static_cast<std::uint64_t>(trial)));
  Vector eps(dual.cols());
  const double sigma = std::sqrt(noise.sigma2);
  if (noise.distribution == NoiseDistribution::kGaussian) {
    std::normal_distribution<double> dist(0.0, sigma);
    for (Eigen::Index i = 0; i < eps.size(); ++i) eps(i) = dist(rng);
  } else {
    const double half_width = sigma * std::sqrt(3.0);
    std::uniform_real_distribution<double> dist(-half_width, half_width);
    for (Eigen::Index i = 0; i < eps.size(); ++i) eps(i) = dist(rng);
  }
  return (dual * eps).squaredNorm();
}

}  // namespace

MonteCarloEstimate MonteCarloMse(const Frame& frame, const DualFrame& dual,
                                 const NoiseModel& noise, std::size_t trials,
                                 unsigned threads) {
  if (trials == 0) {
    throw Error(ErrorCode::kInvalidArgument, "trials must be >= 1");
  }
  if (dual.matrix.rows() != frame.matrix().rows() ||
      dual.matrix.cols() != frame.matrix().cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "dual has the wrong shape");
  }
  const double defect =
      MaxAbsDiff(frame.matrix() * dual.matrix.transpose(),
                 Matrix::Identity(frame.matrix().rows(), frame.matrix().rows()));
  if (defect > 1e-6) {
    std::ostringstream os;
    os << "not a dual frame: ||F G^* - I||_max = " << defect;
    throw Error(ErrorCode::kDuality, os.str());
  }

  std::vector<double> errors(trials);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      errors[t] = TrialError(dual.matrix, noise, t);
    }
  };
  if (workers == 1) {
    run(0, trials);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(trials, w * chunk);
      const std::size_t end = std::min(trials, begin + chunk);
      pool.emplace_back(run, begin, end);
    }
  }

  // Sequential reduction keeps the result independent of `threads`.
  double mean = 0.0;
  for (double e : errors) mean += e;
  mean /= static_cast<double>(trials);
  double var = 0.0;
  for (double e : errors) var += (e - mean) * (e - mean);
  MonteCarloEstimate out;
  out.estimate = mean;
  out.trials = trials;
  out.standard_error =
      trials > 1 ? std::sqrt(var / static_cast<double>(trials - 1) /
                             static_cast<double>(trials))
                 : 0.0;
  return out;
}

}  // namespace framekit
