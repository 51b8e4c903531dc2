//
// Copyright 2026 The StratDP Authors
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
//

#ifndef STRATDP_THEORY_HPP_
#define STRATDP_THEORY_HPP_

#include <cstddef>
#include <optional>
#include <span>

#include "stratdp/rng.hpp"

namespace stratdp {

// Digamma psi(x) = d/dx ln Gamma(x) for x > 0, accurate to at least 10
// significant digits on [1e-3, 1e6]. Upward recurrence to x >= 10, then the
// standard asymptotic series.
double Digamma(double x);

// Symmetric Dirichlet concentration and dimension. k = 1 is accepted as the
// degenerate single-group case (the draw is always the vector {1}).
struct DirichletParams {
  double alpha;
  int k;

  void Validate() const;
};

// Upper bound on E[sum_i ln |G_i|] when group proportions g ~ D(alpha, k)
// and |G_i| = g_i * n:
//   k * (psi(alpha) - psi(k alpha) + ln n).
// Tight at every alpha since E[ln g_i] = psi(alpha) - psi(k alpha) exactly.
double DirichletSumLogSizesBound(const DirichletParams& params, std::size_t n);

// Maximum of sum_i ln g_i over positive sizes summing to n: k * ln(n / k),
// attained only by the equal split.
double MaxSumLogSizes(std::size_t n, std::size_t k);

// Informal sparse-case reference curve (k - 1) + ln(n - k): one dominant
// group, the rest singletons. A reference, not a bound.
double SparseSumLogSizesRef(std::size_t n, std::size_t k);

struct McEstimate {
  double mean;  // sample mean over trials
  double sd;    // per-trial sample standard deviation
};

// Monte Carlo estimate of E[sum_i ln(g_i * n)] with g ~ D(alpha, k). Group
// sizes stay real-valued (g_i * n without rounding).
McEstimate ExpectedSumLogSizesMc(const DirichletParams& params, std::size_t n,
                                 std::size_t trials, RngHandle& rng);

// Evaluated bound family for one (n, k, alpha) point.
struct BoundReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<double> alpha;
  std::optional<double> dirichlet_bound;  // set iff alpha is set
  double max_sum_log = 0.0;
  double sparse_ref = 0.0;
};

BoundReport MakeBoundReport(std::size_t n, std::size_t k,
                            std::optional<double> alpha);

// Log-spaced search grid for FitDirichletAlpha, refined over three passes to
// a final relative resolution of at most 1%.
struct AlphaGrid {
  double lo = 0.01;
  double hi = 100.0;
  int steps = 48;
};

struct AlphaFit {
  double alpha;
  bool at_lower_bound;  // the search saturated at grid.lo
  bool at_upper_bound;  // the search saturated at grid.hi
};

// Fits a symmetric Dirichlet concentration to one observed proportion
// vector by matching the model coordinate variance
//   Var[g_i] = (k - 1) / (k^2 (k alpha + 1))
// to the sample variance of the proportions, via a three-pass log-spaced
// grid search. Zero proportions are floored at 1e-6 before fitting.
//
// Nearly uniform vectors saturate at the upper grid bound; one-hot vectors
// saturate at the lower bound.
AlphaFit FitDirichletAlpha(std::span<const double> proportions,
                           const AlphaGrid& grid = {});

}  // namespace stratdp

#endif  // STRATDP_THEORY_HPP_
