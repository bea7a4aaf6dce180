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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "framekit/analysis.hpp"
#include "framekit/completion.hpp"
#include "framekit/eigensteps.hpp"
#include "framekit/error.hpp"
#include "framekit/synthesis.hpp"
#include "test_util.hpp"

namespace framekit {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void Require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string Str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// 1. The example table validates and the printed frame verifies at 5e-4.
Outcome WorkedExample() {
  Outcome o;
  const auto start = Clock::now();
  const OuterEigenstepTable table = testing::ExampleTable();
  const ValidationReport v = ValidateOuter(table);
  o.Require(v.ok, "table: " + v.message);
  const ValidationReport f = VerifyFrame(testing::PrintedFrame(), table, 5e-4);
  o.Require(f.ok, "printed frame: " + f.message);
  const double t = Seconds(start);
  o.Require(t < 1.0, "took " + Str(t) + " s");
  if (o.ok) o.detail = "validate + verify(5e-4) in " + Str(t) + " s";
  return o;
}

// 2. Synthesis from U1 = I: verify at 1e-7, unit norms, tight spectrum, and
// agreement with the reference port under both cancellation rules.
Outcome Synthesis() {
  Outcome o;
  const OuterEigenstepTable table = testing::ExampleTable();
  const Matrix eye = Matrix::Identity(3, 3);
  const Frame f = ConstructFrame(table, eye);
  const ValidationReport r = VerifyFrame(f, table, 1e-7);
  o.Require(r.ok, r.message);
  for (double n : f.SquaredNorms()) {
    o.Require(std::abs(n - 1.0) <= 1e-7, "norm " + Str(n));
  }
  const Spectrum s = PsdSpectrum(f.FrameOperator());
  for (double v : s.values()) {
    o.Require(std::abs(v - 5.0 / 3) <= 1e-7, "eigenvalue " + Str(v));
  }
  const double first =
      MaxAbsDiff(f.matrix(), testing::ReferenceFrameFirstOccurrence());
  const double last = MaxAbsDiff(
      ConstructFrame(table, eye, CancelRule::kLastOccurrence).matrix(),
      testing::ReferenceFrameLastOccurrence());
  o.Require(first <= 1e-6, "reference (first) off by " + Str(first));
  o.Require(last <= 1e-6, "reference (last) off by " + Str(last));
  if (o.ok) {
    o.detail = "reference port max diff " + Str(std::max(first, last));
  }
  return o;
}

// 3. Closed-form MSE of sampled UNTFs equals M^2/N.
Outcome UntfMse() {
  Outcome o;
  const NoiseModel noise(1.0, NoiseDistribution::kGaussian, 0);
  double worst = 0.0;
  double at35 = 0.0;
  for (auto [M, N] : std::vector<std::pair<std::size_t, std::size_t>>{
           {2, 3}, {3, 5}, {4, 7}, {2, 8}}) {
    const Spectrum lambda(std::vector<double>(
        M, static_cast<double>(N) / static_cast<double>(M)));
    const NormSequence mu(std::vector<double>(N, 1.0));
    const OuterEigenstepTable t = SampleEigensteps(lambda, mu, 1000 + M * N);
    const Frame f = ConstructFrame(
        t, Matrix::Identity(static_cast<Eigen::Index>(M),
                            static_cast<Eigen::Index>(M)));
    o.Require(IsUntf(f, 1e-7), "not a UNTF at M=" + std::to_string(M));
    const double mse = MseClosedForm(f, noise);
    const double expected = static_cast<double>(M * M) / static_cast<double>(N);
    const double rel = std::abs(mse - expected) / expected;
    worst = std::max(worst, rel);
    o.Require(rel <= 1e-7, "M=" + std::to_string(M) + " N=" +
                               std::to_string(N) + " mse " + Str(mse));
    if (M == 3) at35 = mse;
  }
  if (o.ok) {
    o.detail = "(3,5) -> " + Str(at35) + ", worst rel err " + Str(worst);
  }
  return o;
}

// 4. Monte-Carlo MSE within 3% of 0.018 for both noise laws.
Outcome MonteCarlo() {
  Outcome o;
  const auto start = Clock::now();
  const Frame f = ConstructFrame(testing::ExampleTable(), Matrix::Identity(3, 3));
  const DualFrame g = CanonicalDual(f);
  std::ostringstream detail;
  for (auto d : {NoiseDistribution::kGaussian, NoiseDistribution::kUniform}) {
    const MonteCarloEstimate mc =
        MonteCarloMse(f, g, NoiseModel(0.01, d, 2024), 100000);
    const double rel = std::abs(mc.estimate - 0.018) / 0.018;
    o.Require(rel <= 0.03, std::string(NoiseDistributionName(d)) + " gave " +
                               Str(mc.estimate));
    detail << NoiseDistributionName(d) << " " << Str(mc.estimate) << " ";
  }
  const double t = Seconds(start);
  o.Require(t < 10.0, "took " + Str(t) + " s");
  if (o.ok) o.detail = detail.str() + "in " + Str(t) + " s";
  return o;
}

// 5. Outer/inner round trips on 200 sampled tables.
Outcome RoundTrips() {
  Outcome o;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const OuterEigenstepTable outer = testing::RandomTable(seed).table;
    const std::string tag = "seed " + std::to_string(seed);
    o.Require(ValidateOuter(outer).ok, tag + ": outer invalid");
    const InnerEigenstepTable inner = OuterToInner(outer);
    o.Require(ValidateInner(inner).ok, tag + ": inner invalid");
    o.Require(InnerToOuter(inner, outer.M) == outer,
              tag + ": outer->inner->outer differs");
    o.Require(OuterToInner(InnerToOuter(inner, outer.M)) == inner,
              tag + ": inner->outer->inner differs");
  }
  if (o.ok) o.detail = "200 tables bit-identical";
  return o;
}

// 6. Projection norms of each new vector onto the eigenspaces of the running
// frame operator match the residue targets.
Outcome Residues() {
  Outcome o;
  double worst = 0.0, worst_sum = 0.0;
  std::size_t checks = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const OuterEigenstepTable t = testing::RandomTable(1000 + seed).table;
    const Frame f = ConstructFrame(
        t, Matrix::Identity(static_cast<Eigen::Index>(t.M),
                            static_cast<Eigen::Index>(t.M)));
    const std::string tag = "seed " + std::to_string(1000 + seed);
    const ValidationReport r = VerifyFrame(f, t, 1e-6);
    o.Require(r.ok, tag + ": " + r.message);
    for (std::size_t n = 1; n < t.N; ++n) {
      const auto targets = ResidueNormTargets(t.Row(n), t.Row(n + 1));
      const EigenDecomposition eig = SymEig(f.Partial(n).FrameOperator());
      const Vector next = f.column(n);
      std::size_t first = 0;
      double sum = 0.0;
      for (const ResidueTarget& target : targets) {
        const Matrix block = eig.vectors.middleCols(
            static_cast<Eigen::Index>(first),
            static_cast<Eigen::Index>(target.multiplicity));
        const double projected = (block.transpose() * next).squaredNorm();
        worst = std::max(worst, std::abs(projected - target.target));
        o.Require(std::abs(projected - target.target) <= 1e-6,
                  tag + ": projection " + Str(projected) + " vs target " +
                      Str(target.target));
        first += target.multiplicity;
        sum += target.target;
        ++checks;
      }
      worst_sum = std::max(worst_sum, std::abs(sum - t.mu[n]));
      o.Require(std::abs(sum - t.mu[n]) <= 1e-8, tag + ": targets sum " +
                                                     Str(sum));
    }
  }
  if (o.ok) {
    o.detail = std::to_string(checks) + " projections, worst " + Str(worst) +
               ", worst sum err " + Str(worst_sum);
  }
  return o;
}

double TraceInverseOf(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
  double out = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    if (eig.eigenvalues()(i) <= 1e-12) return INFINITY;
    out += 1.0 / eig.eigenvalues()(i);
  }
  return out;
}

Vector Unit(double theta) {
  Vector v(2);
  v << std::cos(theta), std::sin(theta);
  return v;
}

// Best objective over angle grids for one or two appended vectors in R^2.
double AngleOracle(const Matrix& s, const std::vector<double>& mu) {
  constexpr int kSteps = 2000;
  double best = INFINITY;
  for (int i = 0; i < kSteps; ++i) {
    const Vector a = std::sqrt(mu[0]) * Unit(std::numbers::pi * i / kSteps);
    const Matrix sa = s + a * a.transpose();
    if (mu.size() == 1) {
      best = std::min(best, TraceInverseOf(sa));
      continue;
    }
    for (int j = 0; j < kSteps; j += 4) {
      const Vector b = std::sqrt(mu[1]) * Unit(std::numbers::pi * j / kSteps);
      best = std::min(best, TraceInverseOf(sa + b * b.transpose()));
    }
  }
  return best;
}

// 7. Completion: the three small instances against the angle oracle, then
// 20 random guarded instances against brute force with 1e5 samples.
Outcome Completion() {
  Outcome o;
  const auto start = Clock::now();
  struct Instance {
    Matrix initial;
    std::vector<double> mu;
    double expected;
  };
  Matrix e1(2, 1), e1e1(2, 2);
  e1 << 1, 0;
  e1e1 << 1, 1, 0, 0;
  const std::vector<Instance> fixed = {
      {e1, {1.0}, 2.0},
      {e1e1, {1.0}, 1.5},
      {Matrix::Identity(2, 2), {1.0, 1.0}, 1.0},
  };
  std::ostringstream detail;
  for (const Instance& in : fixed) {
    const double oracle = AngleOracle(in.initial * in.initial.transpose(), in.mu);
    o.Require(std::abs(oracle - in.expected) <= 1e-6,
              "angle oracle gave " + Str(oracle));
    const CompletionResult r =
        CompleteFrame(CompletionProblem{Frame(in.initial), in.mu, {}});
    o.Require(std::abs(r.objective - oracle) <= 1e-3,
              "objective " + Str(r.objective) + " vs oracle " + Str(oracle));
    detail << Str(r.objective) << " ";
  }

  double worst_margin = -INFINITY;
  int non_spanning = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::mt19937_64 rng(5000 + seed);
    std::uniform_int_distribution<int> pick_m(2, 3), pick_n0(1, 3), pick_k(1, 2);
    std::uniform_real_distribution<double> pick_mu(0.25, 2.0);
    const int M = pick_m(rng), n0 = pick_n0(rng);
    Matrix f(M, n0);
    for (int n = 0; n < n0; ++n) f.col(n) = testing::RandomVector(rng, M);
    std::vector<double> mu(static_cast<std::size_t>(pick_k(rng)));
    for (double& m : mu) m = pick_mu(rng);
    CompletionProblem p{Frame(f), mu, {}};
    p.options.seed = seed;
    const CompletionResult r = CompleteFrame(p);
    const CompletionResult b = BruteForceCompletion(p, 100000, seed);
    // Both infinite when the completed frame can not span.
    const bool spans = std::isfinite(b.objective) || std::isfinite(r.objective);
    const double margin = spans ? r.objective - b.objective : 0.0;
    if (spans) {
      worst_margin = std::max(worst_margin, margin);
    } else {
      ++non_spanning;
    }
    o.Require(margin <= 1e-3, "seed " + std::to_string(seed) + ": " +
                                  Str(r.objective) + " vs brute force " +
                                  Str(b.objective));
  }
  const double t = Seconds(start);
  o.Require(t < 60.0, "took " + Str(t) + " s");
  if (o.ok) {
    o.detail = "fixed " + detail.str() + "| worst margin vs brute force " +
               Str(worst_margin) + " (" + std::to_string(non_spanning) +
               " non-spanning) | " + Str(t) + " s";
  }
  return o;
}

// 8. Rank-one monotonicity, MSE scaling and frame bound scaling.
Outcome Scaling() {
  Outcome o;
  std::mt19937_64 rng(77);
  const NoiseModel noise(1.0, NoiseDistribution::kGaussian, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int M = 1 + trial % 5;
    Matrix m(M, M + trial % 3);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m.col(j) = testing::RandomVector(rng, M);
    }
    const Frame f(m);
    const Spectrum before = PsdSpectrum(f.FrameOperator());
    const Frame g = f.Appended(testing::RandomVector(rng, M));
    const double grown = TraceInverse(PsdSpectrum(g.FrameOperator()));
    o.Require(grown < TraceInverse(before), "adding a vector did not help");

    const double base = MseClosedForm(f, noise);
    const FrameBounds bounds = GetFrameBounds(f);
    for (double c : {0.5, 2.0, 10.0}) {
      const double scaled = MseClosedForm(f.Scaled(c), noise);
      o.Require(std::abs(scaled - base / (c * c)) <= 1e-10 * base / (c * c),
                "mse scaling at c=" + Str(c));
      const FrameBounds sb = GetFrameBounds(f.Scaled(c));
      const double tol = 1e-10 * c * c * bounds.upper;
      o.Require(std::abs(sb.lower - c * c * bounds.lower) <= tol &&
                    std::abs(sb.upper - c * c * bounds.upper) <= tol,
                "bound scaling at c=" + Str(c));
    }
  }
  if (o.ok) o.detail = "100 random frames";
  return o;
}

}  // namespace
}  // namespace framekit

int main() {
  using framekit::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria =
      {
          {"worked example validation", framekit::WorkedExample},
          {"synthesis reproduction", framekit::Synthesis},
          {"closed-form MSE of UNTFs", framekit::UntfMse},
          {"Monte-Carlo agreement", framekit::MonteCarlo},
          {"outer/inner round trips", framekit::RoundTrips},
          {"residue identity", framekit::Residues},
          {"completion oracle dominance", framekit::Completion},
          {"monotonicity and scaling", framekit::Scaling},
      };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %d. %s: %s\n", o.ok ? "PASS" : "FAIL", index, name,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
