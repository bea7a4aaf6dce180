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

#include "framekit/completion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "framekit/error.hpp"
#include "framekit/synthesis.hpp"

namespace framekit {
namespace {

using Row = std::vector<double>;
using Chain = std::vector<Row>;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Objective(const Row& lambda) {
  double sum = 0.0;
  for (double v : lambda) {
    if (v <= kTolEig) return kInf;
    sum += 1.0 / v;
  }
  return sum;
}

// Interlacing caps for the spectrum following `prev`: x_m in
// [prev_m, prev_{m-1}], with no upper cap on the largest eigenvalue.
double Lower(const Row& prev, std::size_t m) { return prev[m]; }
double Upper(const Row& prev, std::size_t m) {
  return m == 0 ? kInf : prev[m - 1];
}

double Sum(const Row& row) {
  return std::accumulate(row.begin(), row.end(), 0.0);
}

// Exact minimizer of sum(1/x) over one step: x_m = clamp(t, caps) with the
// level t set by the trace.
Row WaterFill(const Row& prev, double increment) {
  const std::size_t M = prev.size();
  const double target = Sum(prev) + increment;
  auto filled = [&](double t) {
    double s = 0.0;
    for (std::size_t m = 0; m < M; ++m) {
      s += std::clamp(t, Lower(prev, m), Upper(prev, m));
    }
    return s;
  };
  double lo = prev.back();
  double hi = prev.front() + increment;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (filled(mid) < target ? lo : hi) = mid;
  }
  Row out(M);
  for (std::size_t m = 0; m < M; ++m) {
    out[m] = std::clamp(hi, Lower(prev, m), Upper(prev, m));
  }
  // Put the rounding residual on the coordinate with the most room.
  const double residual = target - Sum(out);
  std::size_t best = 0;
  double room = -1.0;
  for (std::size_t m = 0; m < M; ++m) {
    const double r = residual >= 0.0 ? Upper(prev, m) - out[m]
                                     : out[m] - Lower(prev, m);
    if (r > room) room = r, best = m;
  }
  out[best] += residual;
  return out;
}

// A random point of the step polytope, coordinates drawn sequentially.
Row RandomStep(const Row& prev, double increment, std::mt19937_64& rng) {
  const std::size_t M = prev.size();
  const double target = Sum(prev) + increment;
  Row hi_tail(M + 1, 0.0), lo_tail(M + 1, 0.0);
  for (std::size_t m = M; m-- > 0;) {
    hi_tail[m] = hi_tail[m + 1] + Upper(prev, m);
    lo_tail[m] = lo_tail[m + 1] + Lower(prev, m);
  }
  Row out(M);
  double prefix = 0.0;
  for (std::size_t m = 0; m < M; ++m) {
    const double lo =
        std::max(Lower(prev, m), target - prefix - hi_tail[m + 1]);
    const double hi =
        std::min(Upper(prev, m), target - prefix - lo_tail[m + 1]);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double x = hi > lo ? lo + u * (hi - lo) : hi;
    x = std::clamp(x, Lower(prev, m), std::max(Lower(prev, m), hi));
    out[m] = x;
    prefix += x;
  }
  return out;
}

// Re-solves steps j+1..k greedily.
void RefillTail(Chain& chain, const std::vector<double>& increments,
                std::size_t j) {
  for (std::size_t s = j + 1; s < chain.size(); ++s) {
    chain[s] = WaterFill(chain[s - 1], increments[s - 1]);
  }
}

// Coordinate descent over the intermediate spectra.
double LocalSearch(Chain& chain, const std::vector<double>& increments,
                   double min_step, std::size_t max_sweeps,
                   std::vector<double>& history) {
  double best = Objective(chain.back());
  history.push_back(best);
  const std::size_t k = chain.size() - 1;
  if (k < 2) return best;
  const std::size_t M = chain.front().size();

  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool improved = false;
    for (std::size_t j = 1; j < k; ++j) {
      for (std::size_t p = 0; p < M; ++p) {
        for (std::size_t q = p + 1; q < M; ++q) {
          const Row& prev = chain[j - 1];
          const Row& x = chain[j];
          // Moving delta from coordinate p to q.
          const double up =
              std::min(x[p] - Lower(prev, p), Upper(prev, q) - x[q]);
          const double down =
              std::min(Upper(prev, p) - x[p], x[q] - Lower(prev, q));
          Chain best_chain;
          double best_value = best;
          for (double sign : {1.0, -1.0}) {
            const double extent = sign > 0 ? up : down;
            for (double step = extent; step >= min_step && step > 0.0;
                 step *= 0.5) {
              Chain trial = chain;
              trial[j][p] -= sign * step;
              trial[j][q] += sign * step;
              trial[j][p] = std::clamp(trial[j][p], Lower(prev, p),
                                       Upper(prev, p));
              trial[j][q] = std::clamp(trial[j][q], Lower(prev, q),
                                       Upper(prev, q));
              RefillTail(trial, increments, j);
              const double value = Objective(trial.back());
              if (value < best_value) {
                best_value = value;
                best_chain = std::move(trial);
              }
            }
          }
          if (!best_chain.empty() &&
              best_value < best - 1e-14 * std::max(1.0, std::abs(best))) {
            chain = std::move(best_chain);
            best = best_value;
            history.push_back(best);
            improved = true;
          }
        }
      }
    }
    if (!improved) break;
  }
  return best;
}

std::vector<Spectrum> ToSpectra(const Chain& chain) {
  std::vector<Spectrum> out;
  out.reserve(chain.size());
  for (const Row& row : chain) out.emplace_back(row);
  return out;
}

// Appends one vector per chain step in the eigenbasis of the running frame
// operator. With `anchor_on_measured` the step starts from the measured
// spectrum instead of the chain entry.
Matrix Synthesize(const Frame& initial, const std::vector<Spectrum>& chain,
                  const std::vector<double>& increments,
                  bool anchor_on_measured) {
  const auto M = static_cast<Eigen::Index>(initial.M());
  Matrix appended(M, static_cast<Eigen::Index>(increments.size()));
  Matrix running = initial.matrix();
  for (std::size_t j = 1; j < chain.size(); ++j) {
    const EigenDecomposition eig = SymEig(running * running.transpose());
    const Spectrum prev = anchor_on_measured ? eig.ToSpectrum() : chain[j - 1];
    const EigenbasisStep step = ConstructU(prev, chain[j]);
    Vector f = eig.vectors * step.f_rel;
    const double norm = f.norm();
    if (norm > 0.0) f *= std::sqrt(increments[j - 1]) / norm;
    appended.col(static_cast<Eigen::Index>(j - 1)) = f;
    Matrix grown(M, running.cols() + 1);
    grown << running, f;
    running = std::move(grown);
  }
  return appended;
}

}  // namespace

void CompletionProblem::Validate() const {
  if (mu_new.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "completion needs at least one new vector");
  }
  for (std::size_t k = 0; k < mu_new.size(); ++k) {
    if (!(mu_new[k] > 0.0) || !std::isfinite(mu_new[k])) {
      std::ostringstream os;
      os << "prescribed squared norm " << k + 1 << " must be positive";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
  }
}

double CompletionObjective(const Spectrum& lambda) {
  return Objective(lambda.values());
}

Spectrum InitialSpectrum(const Frame& initial) {
  return PsdSpectrum(initial.FrameOperator());
}

SpectrumOptimization OptimizeChain(const Spectrum& start,
                                   const std::vector<double>& increments,
                                   const CompletionOptions& options) {
  if (increments.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no increments to optimize");
  }
  const double min_step =
      options.grid *
      std::max(std::accumulate(increments.begin(), increments.end(), 0.0),
               1e-300);

  SpectrumOptimization best;
  best.objective = kInf;
  bool have_best = false;
  for (std::size_t r = 0; r <= options.restarts; ++r) {
    Chain chain(increments.size() + 1);
    chain[0] = start.values();
    if (r == 0) {
      RefillTail(chain, increments, 0);
    } else {
      std::mt19937_64 rng(Mix(Mix(options.seed) ^ r));
      for (std::size_t s = 1; s < chain.size(); ++s) {
        chain[s] = RandomStep(chain[s - 1], increments[s - 1], rng);
      }
      // The last step is always best water-filled.
      RefillTail(chain, increments, chain.size() - 2);
    }
    std::vector<double> history;
    const double value = LocalSearch(chain, increments, min_step,
                                     options.max_sweeps, history);
    if (!have_best || value < best.objective) {
      best.chain = ToSpectra(chain);
      best.objective = value;
      best.history = std::move(history);
      best.restart = r;
      have_best = true;
    }
  }
  return best;
}

SpectrumOptimization OptimizeFinalSpectrum(const Spectrum& lambda0,
                                           const std::vector<double>& mu_new,
                                           const CompletionOptions& options) {
  std::vector<double> sorted = mu_new;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  return OptimizeChain(lambda0, sorted, options);
}

CompletionResult CompleteFrame(const CompletionProblem& problem) {
  problem.Validate();
  const std::size_t k = problem.mu_new.size();
  const Spectrum lambda0 = InitialSpectrum(problem.initial);

  // Synthesize in nonincreasing norm order, then put each vector back in the
  // column its norm was prescribed for.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return problem.mu_new[a] > problem.mu_new[b];
  });
  std::vector<double> increments(k);
  for (std::size_t s = 0; s < k; ++s) increments[s] = problem.mu_new[order[s]];

  const SpectrumOptimization opt =
      OptimizeChain(lambda0, increments, problem.options);
  const Spectrum& target = opt.chain.back();
  const double limit = problem.options.tolerance * std::max(1.0, target.Max());

  auto attempt = [&](bool anchored) -> std::optional<Matrix> {
    try {
      Matrix sorted = Synthesize(problem.initial, opt.chain, increments, anchored);
      const Frame done = problem.initial.Appended(sorted);
      const Spectrum reached = PsdSpectrum(done.FrameOperator());
      double gap = 0.0;
      for (std::size_t m = 0; m < target.size(); ++m) {
        gap = std::max(gap, std::abs(reached[m] - target[m]));
      }
      if (gap > limit) return std::nullopt;
      return sorted;
    } catch (const Error&) {
      return std::nullopt;
    }
  };
  std::optional<Matrix> sorted = attempt(false);
  if (!sorted) sorted = attempt(true);
  if (!sorted) {
    throw Error(ErrorCode::kTolerance,
                "could not synthesize the optimized spectrum chain");
  }

  CompletionResult result;
  result.appended.resize(static_cast<Eigen::Index>(problem.initial.M()),
                         static_cast<Eigen::Index>(k));
  for (std::size_t s = 0; s < k; ++s) {
    result.appended.col(static_cast<Eigen::Index>(order[s])) =
        sorted->col(static_cast<Eigen::Index>(s));
  }
  result.completed = problem.initial.Appended(result.appended);
  result.final_spectrum = PsdSpectrum(result.completed.FrameOperator());
  result.objective = CompletionObjective(result.final_spectrum);
  result.chain = opt.chain;
  result.chain_norms = increments;

  if (problem.options.oracle_samples > 0) {
    const CompletionResult oracle = BruteForceCompletion(
        problem, problem.options.oracle_samples, problem.options.seed);
    OracleCertificate cert;
    cert.oracle_objective = oracle.objective;
    cert.samples = problem.options.oracle_samples;
    cert.seed = problem.options.seed;
    cert.dominates = result.objective <= oracle.objective + 1e-3;
    result.certificate = cert;
  }
  return result;
}

CompletionResult BruteForceCompletion(const CompletionProblem& problem,
                                      std::size_t samples,
                                      std::uint64_t seed) {
  problem.Validate();
  const std::size_t M = problem.initial.M();
  const std::size_t k = problem.mu_new.size();
  if (samples == 0) {
    throw Error(ErrorCode::kInvalidArgument, "samples must be >= 1");
  }
  if (!((M <= 3 && k <= 2) || samples <= 1'000'000)) {
    throw Error(ErrorCode::kGuard,
                "brute force is limited to M <= 3 with two new vectors, or "
                "1e6 samples");
  }
  const auto rows = static_cast<Eigen::Index>(M);
  const Matrix base = problem.initial.FrameOperator();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;

  Matrix candidate(rows, static_cast<Eigen::Index>(k));
  Matrix best_vectors;
  double best = kInf;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rows);
  for (std::size_t s = 0; s < samples; ++s) {
    Matrix op = base;
    for (std::size_t j = 0; j < k; ++j) {
      Vector v(rows);
      do {
        for (Eigen::Index i = 0; i < rows; ++i) v(i) = normal(rng);
      } while (v.norm() == 0.0);
      v *= std::sqrt(problem.mu_new[j]) / v.norm();
      candidate.col(static_cast<Eigen::Index>(j)) = v;
      op += v * v.transpose();
    }
    solver.compute(op, Eigen::EigenvaluesOnly);
    double value = 0.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double ev = solver.eigenvalues()(i);
      if (ev <= kTolEig) {
        value = kInf;
        break;
      }
      value += 1.0 / ev;
    }
    if (best_vectors.size() == 0 || value < best) {
      best = value;
      best_vectors = candidate;
    }
  }

  CompletionResult result;
  result.appended = best_vectors;
  result.completed = problem.initial.Appended(best_vectors);
  result.final_spectrum = PsdSpectrum(result.completed.FrameOperator());
  result.objective = CompletionObjective(result.final_spectrum);
  result.chain_norms = problem.mu_new;
  for (std::size_t j = 0; j <= k; ++j) {
    result.chain.push_back(PsdSpectrum(
        problem.initial.Appended(best_vectors.leftCols(static_cast<Eigen::Index>(j)))
            .FrameOperator()));
  }
  return result;
}

}  // namespace framekit
