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

#include <cmath>
#include <random>

#include "framekit/error.hpp"
#include "framekit/synthesis.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace framekit {
namespace {

using testing::ExampleTable;
using testing::RandomVector;

Frame ExactExample() {
  return ConstructFrame(ExampleTable(), Matrix::Identity(3, 3));
}

Frame RandomFrame(std::mt19937_64& rng, int M, int N) {
  Matrix f(M, N);
  for (int n = 0; n < N; ++n) f.col(n) = RandomVector(rng, M);
  return Frame(f);
}

// Canonical dual as the transpose of the Moore-Penrose pseudo-inverse.
Matrix PseudoInverseDual(const Frame& frame) {
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(frame.matrix());
  return cod.pseudoInverse().transpose();
}

TEST(DualTest, TightExampleDualIsScaledFrame) {
  const Frame f = ExactExample();
  const DualFrame g = CanonicalDual(f);
  EXPECT_LT(MaxAbsDiff(g.matrix, 0.6 * f.matrix()), 1e-12);
}

TEST(DualTest, MatchesPseudoInverse) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const int M = 1 + trial % 5;
    const Frame f = RandomFrame(rng, M, M + trial % 4);
    const DualFrame g = CanonicalDual(f);
    EXPECT_LT(MaxAbsDiff(g.matrix, PseudoInverseDual(f)), 1e-8);
    EXPECT_LT(MaxAbsDiff(f.matrix() * g.matrix.transpose(),
                         Matrix::Identity(M, M)),
              1e-8);
  }
}

TEST(DualTest, SingularOperatorIsRejected) {
  Matrix f = Matrix::Zero(2, 3);
  f.row(0).setOnes();
  try {
    CanonicalDual(Frame(f));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingular);
  }
}

TEST(BoundsTest, Examples) {
  const FrameBounds b = GetFrameBounds(ExactExample());
  EXPECT_NEAR(b.lower, 5.0 / 3, 1e-12);
  EXPECT_NEAR(b.upper, 5.0 / 3, 1e-12);
  Matrix f(2, 2);
  f << std::sqrt(2.0), 0, 0, 1;
  const FrameBounds d = GetFrameBounds(Frame(f));
  EXPECT_NEAR(d.lower, 1.0, 1e-15);
  EXPECT_NEAR(d.upper, 2.0, 1e-15);
}

TEST(MseTest, Examples) {
  const NoiseModel noise(1.0, NoiseDistribution::kGaussian, 0);
  EXPECT_NEAR(MseClosedForm(ExactExample(), noise), 1.8, 1e-12);
  EXPECT_NEAR(MseClosedForm(testing::PrintedFrame(), noise), 1.8, 1e-3);
  Matrix f(2, 2);
  f << std::sqrt(2.0), 0, 0, 1;
  EXPECT_NEAR(MseClosedForm(Frame(f), noise), 1.5, 1e-14);
  EXPECT_DOUBLE_EQ(MseUntf(3, 5, 0.01), 0.018);
  EXPECT_DOUBLE_EQ(MseUntf(2, 4, 1.0), 1.0);
  EXPECT_THROW(MseUntf(3, 2, 1.0), Error);
  EXPECT_THROW(NoiseModel(0.0, NoiseDistribution::kGaussian, 0), Error);
}

TEST(MseTest, ClosedFormMatchesInversion) {
  std::mt19937_64 rng(4);
  const NoiseModel noise(0.3, NoiseDistribution::kGaussian, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int M = 1 + trial % 6;
    const Frame f = RandomFrame(rng, M, M + 1 + trial % 3);
    const double a = MseClosedForm(f, noise), b = MseByInversion(f, noise);
    EXPECT_NEAR(a, b, 1e-8 * std::max(1.0, b));
  }
}

TEST(MseTest, AddingAVectorNeverHurts) {
  std::mt19937_64 rng(6);
  const NoiseModel noise(1.0, NoiseDistribution::kGaussian, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int M = 1 + trial % 5;
    const Frame f = RandomFrame(rng, M, M + trial % 3);
    const Frame g = f.Appended(RandomVector(rng, M));
    EXPECT_LE(MseClosedForm(g, noise),
              MseClosedForm(f, noise) * (1 + 1e-10));
  }
}

TEST(MseTest, ScalingLaw) {
  std::mt19937_64 rng(10);
  const NoiseModel noise(1.0, NoiseDistribution::kGaussian, 0);
  const Frame f = RandomFrame(rng, 3, 6);
  for (double c : {0.5, 2.0, 10.0}) {
    const double base = MseClosedForm(f, noise);
    EXPECT_NEAR(MseClosedForm(f.Scaled(c), noise), base / (c * c),
                1e-10 * base / (c * c));
    const FrameBounds b = GetFrameBounds(f), s = GetFrameBounds(f.Scaled(c));
    EXPECT_NEAR(s.lower, c * c * b.lower, 1e-10 * c * c * b.upper);
    EXPECT_NEAR(s.upper, c * c * b.upper, 1e-10 * c * c * b.upper);
  }
}

TEST(UntfTest, Detection) {
  EXPECT_TRUE(IsUntf(ExactExample(), 1e-9));
  EXPECT_TRUE(IsUntf(testing::PrintedFrame(), 5e-4));
  Matrix f(2, 2);
  f << std::sqrt(2.0), 0, 0, 1;
  EXPECT_FALSE(IsUntf(Frame(f), 1e-6));
}

TEST(MonteCarloTest, AgreesWithClosedForm) {
  const Frame f = ExactExample();
  const DualFrame g = CanonicalDual(f);
  for (auto dist : {NoiseDistribution::kGaussian, NoiseDistribution::kUniform}) {
    const NoiseModel noise(0.01, dist, 17);
    const MonteCarloEstimate mc = MonteCarloMse(f, g, noise, 20000);
    EXPECT_EQ(mc.trials, 20000u);
    EXPECT_NEAR(mc.estimate, 0.018, 4 * mc.standard_error);
    EXPECT_GT(mc.standard_error, 0.0);
  }
}

TEST(MonteCarloTest, DeterministicAndThreadIndependent) {
  const Frame f = ExactExample();
  const DualFrame g = CanonicalDual(f);
  const NoiseModel noise(0.01, NoiseDistribution::kGaussian, 3);
  const MonteCarloEstimate a = MonteCarloMse(f, g, noise, 5000, 1);
  const MonteCarloEstimate b = MonteCarloMse(f, g, noise, 5000, 1);
  const MonteCarloEstimate c = MonteCarloMse(f, g, noise, 5000, 3);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.estimate, c.estimate);
  EXPECT_EQ(a.standard_error, c.standard_error);
  const MonteCarloEstimate d =
      MonteCarloMse(f, g, NoiseModel(0.01, NoiseDistribution::kGaussian, 4),
                    5000);
  EXPECT_NE(a.estimate, d.estimate);
}

TEST(MonteCarloTest, RejectsNonDual) {
  const Frame f = ExactExample();
  DualFrame g = CanonicalDual(f);
  g.matrix *= 1.1;
  const NoiseModel noise(0.01, NoiseDistribution::kGaussian, 0);
  try {
    MonteCarloMse(f, g, noise, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuality);
  }
  EXPECT_THROW(MonteCarloMse(f, CanonicalDual(f), noise, 0), Error);
}

TEST(NoiseTest, NamesRoundTrip) {
  for (auto d : {NoiseDistribution::kGaussian, NoiseDistribution::kUniform}) {
    EXPECT_EQ(ParseNoiseDistribution(NoiseDistributionName(d)), d);
  }
  EXPECT_THROW(ParseNoiseDistribution("laplace"), Error);
}

}  // namespace
}  // namespace framekit
