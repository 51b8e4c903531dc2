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

#include "stratdp/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "stratdp/datagen.hpp"
#include "stratdp/errors.hpp"

namespace stratdp {

double Digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw InvalidParameterError("Digamma: x must be positive and finite");
  }
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  // psi(x) ~ ln x - 1/(2x) - sum_n B_{2n} / (2n x^{2n}).
  static constexpr double kCoefs[] = {
      1.0 / 12.0,   -1.0 / 120.0,     1.0 / 252.0, -1.0 / 240.0,
      1.0 / 132.0,  -691.0 / 32760.0, 1.0 / 12.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = 0.0;
  double term = inv2;
  for (double c : kCoefs) {
    series += c * term;
    term *= inv2;
  }
  return acc + std::log(x) - 0.5 * inv - series;
}

void DirichletParams::Validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw InvalidParameterError("DirichletParams: alpha must be positive");
  }
  if (k < 1) {
    throw InvalidParameterError("DirichletParams: k must be >= 1");
  }
}

double DirichletSumLogSizesBound(const DirichletParams& params,
                                 std::size_t n) {
  params.Validate();
  if (n < static_cast<std::size_t>(params.k)) {
    throw InvalidParameterError("DirichletSumLogSizesBound: need n >= k");
  }
  const double k = static_cast<double>(params.k);
  return k * (Digamma(params.alpha) - Digamma(k * params.alpha) +
              std::log(static_cast<double>(n)));
}

double MaxSumLogSizes(std::size_t n, std::size_t k) {
  if (k < 1 || n < k) {
    throw InvalidParameterError("MaxSumLogSizes: need n >= k >= 1");
  }
  const double kd = static_cast<double>(k);
  return kd * std::log(static_cast<double>(n) / kd);
}

double SparseSumLogSizesRef(std::size_t n, std::size_t k) {
  if (k < 1 || n <= k) {
    throw InvalidParameterError("SparseSumLogSizesRef: need n > k >= 1");
  }
  return static_cast<double>(k - 1) + std::log(static_cast<double>(n - k));
}

McEstimate ExpectedSumLogSizesMc(const DirichletParams& params, std::size_t n,
                                 std::size_t trials, RngHandle& rng) {
  params.Validate();
  if (trials < 1) {
    throw InvalidParameterError("ExpectedSumLogSizesMc: trials must be >= 1");
  }
  if (n < static_cast<std::size_t>(params.k)) {
    throw InvalidParameterError("ExpectedSumLogSizesMc: need n >= k");
  }
  const double log_n = std::log(static_cast<double>(n));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<double> g = SampleDirichlet(params, rng);
    double s = 0.0;
    for (double gi : g) {
      s += std::log(gi) + log_n;
    }
    sum += s;
    sum_sq += s * s;
  }
  const double mean = sum / static_cast<double>(trials);
  double var = 0.0;
  if (trials > 1) {
    var = (sum_sq - sum * mean) / static_cast<double>(trials - 1);
    if (var < 0.0) var = 0.0;
  }
  return McEstimate{mean, std::sqrt(var)};
}

BoundReport MakeBoundReport(std::size_t n, std::size_t k,
                            std::optional<double> alpha) {
  BoundReport report;
  report.n = n;
  report.k = k;
  report.alpha = alpha;
  report.max_sum_log = MaxSumLogSizes(n, k);
  report.sparse_ref = n > k ? SparseSumLogSizesRef(n, k)
                            : static_cast<double>(k - 1);
  if (alpha.has_value()) {
    report.dirichlet_bound = DirichletSumLogSizesBound(
        DirichletParams{*alpha, static_cast<int>(k)}, n);
  }
  return report;
}

namespace {

// Model coordinate variance of a symmetric Dirichlet draw.
double ModelVariance(double alpha, std::size_t k) {
  const double kd = static_cast<double>(k);
  return (kd - 1.0) / (kd * kd * (kd * alpha + 1.0));
}

}  // namespace

AlphaFit FitDirichletAlpha(std::span<const double> proportions,
                           const AlphaGrid& grid) {
  if (proportions.size() < 2) {
    throw InvalidParameterError(
        "FitDirichletAlpha: need at least 2 proportions");
  }
  if (!(grid.lo > 0.0) || !(grid.hi > grid.lo) || grid.steps < 2) {
    throw InvalidParameterError("FitDirichletAlpha: malformed search grid");
  }
  const std::size_t k = proportions.size();
  double sum = 0.0;
  std::vector<double> p(proportions.begin(), proportions.end());
  for (double& pi : p) {
    if (!(pi >= 0.0)) {
      throw InvalidParameterError(
          "FitDirichletAlpha: proportions must be nonnegative");
    }
    if (pi < 1e-6) pi = 1e-6;
    sum += pi;
  }
  if (std::fabs(sum - 1.0) > 1e-3) {
    throw InvalidParameterError(
        "FitDirichletAlpha: proportions must sum to 1");
  }

  const double mean = 1.0 / static_cast<double>(k);
  double sample_var = 0.0;
  for (double pi : p) {
    sample_var += (pi - mean) * (pi - mean);
  }
  sample_var /= static_cast<double>(k);

  // Three grid passes, each zooming into the best cell of the previous one;
  // score = squared mismatch between model and sample variance.
  double lo = grid.lo;
  double hi = grid.hi;
  double best_alpha = lo;
  for (int pass = 0; pass < 3; ++pass) {
    const double log_lo = std::log(lo);
    const double log_hi = std::log(hi);
    double best_score = std::numeric_limits<double>::infinity();
    int best_index = 0;
    for (int i = 0; i < grid.steps; ++i) {
      const double t = static_cast<double>(i) / (grid.steps - 1);
      const double alpha = std::exp(log_lo + t * (log_hi - log_lo));
      const double diff = ModelVariance(alpha, k) - sample_var;
      const double score = diff * diff;
      if (score < best_score) {
        best_score = score;
        best_index = i;
        best_alpha = alpha;
      }
    }
    const double step = (log_hi - log_lo) / (grid.steps - 1);
    lo = std::exp(log_lo + step * std::max(0, best_index - 1));
    hi = std::exp(log_lo + step * std::min(grid.steps - 1, best_index + 1));
  }

  AlphaFit fit;
  fit.alpha = best_alpha;
  // Saturation tolerance: within one final-pass cell of the original bounds.
  const double rel = 1.02;
  fit.at_lower_bound = best_alpha <= grid.lo * rel;
  fit.at_upper_bound = best_alpha >= grid.hi / rel;
  return fit;
}

}  // namespace stratdp
