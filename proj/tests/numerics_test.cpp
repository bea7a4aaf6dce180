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

#include <cmath>
#include <random>

#include "framekit/error.hpp"
#include "gtest/gtest.h"
#include "test_util.hpp"

namespace framekit {
namespace {

using testing::PrintedFrame;
using testing::RandomSymmetric;
using testing::RandomVector;

TEST(SpectrumTest, ClampsTinyNegativesAndRejectsRealOnes) {
  const Spectrum s{2.0, 1.0, -1e-12};
  EXPECT_EQ(s[2], 0.0);
  EXPECT_THROW(Spectrum({1.0, -1e-6}), Error);
  EXPECT_THROW(Spectrum({1.0, 2.0}), Error);
  EXPECT_EQ(Spectrum::FromUnsorted({1.0, 3.0, 2.0}), (Spectrum{3.0, 2.0, 1.0}));
}

TEST(SymEigTest, DiagonalInputGivesIdentityBasis) {
  Matrix g = Matrix::Zero(3, 3);
  g(0, 0) = 1.0;
  const EigenDecomposition eig = SymEig(g);
  EXPECT_EQ(eig.values, (std::vector<double>{1.0, 0.0, 0.0}));
  // Degenerate zero eigenspace ordered by dominant coordinate.
  EXPECT_LT(MaxAbsDiff(eig.vectors, Matrix::Identity(3, 3)), 1e-15);
}

TEST(SymEigTest, TwoByTwo) {
  Matrix g(2, 2);
  g << 2, 1, 1, 2;
  const EigenDecomposition eig = SymEig(g);
  EXPECT_NEAR(eig.values[0], 3.0, 1e-14);
  EXPECT_NEAR(eig.values[1], 1.0, 1e-14);
}

TEST(SymEigTest, PrintedExampleFrameIsTight) {
  const Spectrum s = PsdSpectrum(PrintedFrame().FrameOperator());
  for (double v : s.values()) EXPECT_NEAR(v, 5.0 / 3, 5e-4);
}

TEST(SymEigTest, RejectsBadInput) {
  EXPECT_THROW(SymEig(Matrix::Zero(2, 3)), Error);
  Matrix g = Matrix::Identity(2, 2);
  g(0, 1) = 1e-9;
  try {
    SymEig(g);
    FAIL() << "asymmetric input accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSymmetric);
  }
  g(0, 1) = 5e-11;  // within tolerance
  EXPECT_NO_THROW(SymEig(g));
}

TEST(SymEigTest, ReconstructsRandomSymmetricMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const Matrix g = RandomSymmetric(rng, n);
    const EigenDecomposition eig = SymEig(g);
    Vector values(n);
    for (int i = 0; i < n; ++i) values(i) = eig.values[i];
    const Matrix rebuilt =
        eig.vectors * values.asDiagonal() * eig.vectors.transpose();
    const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    EXPECT_LE(MaxAbsDiff(rebuilt, g), 1e-8 * scale);
    EXPECT_LE(MaxAbsDiff(eig.vectors.transpose() * eig.vectors,
                         Matrix::Identity(n, n)),
              1e-8);
    EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end(),
                               std::greater<>()));
  }
}

TEST(InterlacingTest, RankOneUpdateInterlaces) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 8;
    const Matrix g = RandomSymmetric(rng, n);
    const Vector f = RandomVector(rng, n);
    const auto before = SymEig(g).values;
    const auto after = SymEig(g + f * f.transpose()).values;
    EXPECT_TRUE(InterlacesEq(before, after)) << "trial " << trial;
  }
}

TEST(InterlacingTest, GrowExamples) {
  EXPECT_TRUE(InterlacesGrow(Spectrum{1}.span(), Spectrum{2, 0.5}.span()));
  EXPECT_FALSE(InterlacesGrow(Spectrum{1}.span(), Spectrum{0.9, 0.5}.span()));
  EXPECT_TRUE(InterlacesGrow(Spectrum{5.0 / 3, 1.0 / 3, 0}.span(),
                             Spectrum{5.0 / 3, 4.0 / 3, 0, 0}.span()));
  EXPECT_THROW(InterlacesGrow(Spectrum{1, 1}.span(), Spectrum{1, 1}.span()),
               Error);
}

TEST(InterlacingTest, EqualLengthExamples) {
  EXPECT_TRUE(InterlacesEq(Spectrum{1, 1}.span(), Spectrum{2, 1}.span()));
  EXPECT_TRUE(InterlacesEq(Spectrum{2, 0}.span(), Spectrum{2, 1}.span()));
  EXPECT_FALSE(InterlacesEq(Spectrum{2, 0}.span(), Spectrum{1.5, 1.5}.span()));
  // Smallest eigenvalue can not decrease.
  EXPECT_FALSE(InterlacesEq(Spectrum{1, 1}.span(), Spectrum{3, 0.5}.span()));
  EXPECT_THROW(InterlacesEq(Spectrum{1}.span(), Spectrum{1, 0}.span()), Error);
}

TEST(InterlacingTest, ToleranceSlack) {
  EXPECT_TRUE(InterlacesEq(Spectrum{1 + 5e-10, 0}.span(),
                           Spectrum{1, 1}.span()));
  EXPECT_FALSE(InterlacesEq(Spectrum{1 + 5e-9, 0}.span(),
                            Spectrum{1, 1}.span()));
}

TEST(MultisetDiffTest, Examples) {
  const Spectrum a{1, 0, 0}, b{5.0 / 3, 1.0 / 3, 0};
  MultisetDiff d = MultisetDiffTol(a.span(), b.span());
  EXPECT_EQ(d.first, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(d.second, (std::vector<std::size_t>{0, 1}));

  d = MultisetDiffTol(Spectrum{1, 1}.span(), Spectrum{1, 1}.span());
  EXPECT_TRUE(d.first.empty());
  EXPECT_TRUE(d.second.empty());

  d = MultisetDiffTol(Spectrum{5.0 / 3, 4.0 / 3, 0}.span(),
                      Spectrum{5.0 / 3, 5.0 / 3, 2.0 / 3}.span());
  EXPECT_EQ(d.first, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(d.second, (std::vector<std::size_t>{1, 2}));
}

TEST(MultisetDiffTest, LastOccurrenceRule) {
  const MultisetDiff d =
      MultisetDiffTol(Spectrum{1, 0, 0}.span(), Spectrum{5.0 / 3, 1.0 / 3, 0}.span(),
                      kTolCancel, CancelRule::kLastOccurrence);
  EXPECT_EQ(d.first, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(d.second, (std::vector<std::size_t>{0, 1}));
}

TEST(MultisetDiffTest, ToleranceMatchesNearlyEqualValues) {
  const MultisetDiff d = MultisetDiffTol(Spectrum{2, 1 + 1e-12}.span(),
                                         Spectrum{2.5, 1}.span());
  EXPECT_EQ(d.first, (std::vector<std::size_t>{0}));
  EXPECT_EQ(d.second, (std::vector<std::size_t>{0}));
  EXPECT_THROW(MultisetDiffTol(Spectrum{1}.span(), Spectrum{1, 0}.span()),
               Error);
}

TEST(MultisetDiffTest, SurvivorsAreDisjoint) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coin(0, 2);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 6;
    // Integer-valued PSD matrices give plenty of shared eigenvalues.
    Matrix g = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) g(i, i) = coin(rng);
    Vector f = Vector::Zero(n);
    f(trial % n) = 1.0;
    if (coin(rng) == 0) f = RandomVector(rng, n);
    const auto e1 = SymEig(g).values;
    const auto e2 = SymEig(g + f * f.transpose()).values;
    const MultisetDiff d = MultisetDiffTol(e1, e2);
    ASSERT_EQ(d.first.size(), d.second.size());
    for (std::size_t i : d.first) {
      for (std::size_t j : d.second) {
        EXPECT_GT(std::abs(e1[i] - e2[j]), kTolCancel);
      }
    }
  }
}

TEST(TraceInverseTest, Examples) {
  EXPECT_DOUBLE_EQ(TraceInverse(Spectrum{5.0 / 3, 5.0 / 3, 5.0 / 3}), 1.8);
  EXPECT_DOUBLE_EQ(TraceInverse(Spectrum{2, 1}), 1.5);
  try {
    TraceInverse(Spectrum{1, 0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingular);
  }
}

TEST(TraceInverseTest, ScalingLaw) {
  const Spectrum s{3.5, 2.0, 0.25};
  for (double c : {0.5, 2.0, 10.0}) {
    EXPECT_NEAR(TraceInverse(s.Scaled(c * c)), TraceInverse(s) / (c * c),
                1e-12 * TraceInverse(s));
  }
}

}  // namespace
}  // namespace framekit
