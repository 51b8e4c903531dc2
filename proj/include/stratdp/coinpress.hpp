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

#ifndef STRATDP_COINPRESS_HPP_
#define STRATDP_COINPRESS_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "stratdp/privacy.hpp"
#include "stratdp/rng.hpp"
#include "stratdp/sample.hpp"

namespace stratdp {

struct Interval {
  double lo;
  double hi;

  double midpoint() const { return 0.5 * (lo + hi); }
  double width() const { return hi - lo; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Adaptive interval-shrinking mean estimator configuration: a prior interval
// containing the mean, the known data sd, the iteration count, the per-step
// zCDP budgets, and the overall failure budget.
struct CoinpressConfig {
  Interval prior{-100.0, 100.0};
  double sigma = 1.0;
  int steps = 4;                      // t >= 1
  std::vector<double> rho_schedule;   // size == steps, all positive
  double beta = 0.05;                 // in (0, 1)

  double TotalRho() const;
  void Validate() const;
};

// Budget split proportional to {1, ..., 1, 5}: the final step gets the
// majority of the budget.
std::vector<double> MakeRhoSchedule(int steps, double total_rho);

// Per-step failure budgets: beta/(4(t-1)) for the first t-1 steps, beta/4
// for the final one (the whole schedule sums to beta/2). t = 1 degenerates
// to a single step at beta/4.
std::vector<double> UvmBetaSchedule(int steps, double beta);

// sigma * sqrt(2 ln(2n / beta_s)): how far the projection interval extends
// beyond the current prior on each side.
double UvmProjectionExtension(std::size_t n, double sigma, double beta_s);

// Sensitivity of the projected mean: (width + 2 * extension) / n.
double UvmSensitivity(std::size_t n, const Interval& interval,
                      double extension);

// One private improvement step: project the data into the extended interval,
// release the projected mean with Gaussian noise at rho_s, and return the
// (1 - beta_s)-confidence interval around the release.
Interval UvmStep(std::span<const double> values, const Interval& interval,
                 double sigma, double rho_s, double beta_s, RngHandle& rng);

struct UvmEstimate {
  double estimate;          // midpoint of the final interval
  Interval final_interval;
  PrivacyBudget budget;     // zCDP(sum of the rho schedule)
};

// Iterated UvmStep over the configured schedule.
UvmEstimate UvmRec(std::span<const double> values, const CoinpressConfig& cfg,
                   RngHandle& rng);

// Runs UvmRec independently per stratum with the full rho schedule (the
// strata are disjoint, so the total cost stays at sum rho_i) and a per-
// stratum failure budget of beta/k; aggregates globally as sum_i w_i * est_i.
// Stratum i draws from rng.Fork(i).
MeanEstimateResult StratCoinpress(const StratifiedSample& sample,
                                  const CoinpressConfig& cfg,
                                  std::span<const double> weights,
                                  RngHandle& rng);

// StratCoinpress with weights |H_i| / |H| taken from a disjoint public
// holdout set; the holdout must cover every group id present in the sample.
MeanEstimateResult PubStratCoinpress(const StratifiedSample& sample,
                                     const CoinpressConfig& cfg,
                                     const StratifiedSample& public_holdout,
                                     RngHandle& rng);

// Disparity of a privatized vector statistic. `truth` and `estimate` hold k
// per-group values followed by the global value:
//   omega * |(f_g - M_g) / f_g| + sum_i |(f_i - M_i) / f_i|.
// A zero truth entry throws UndefinedNormalizationError.
double ParityError(std::span<const double> truth,
                   std::span<const double> estimate, double omega);

}  // namespace stratdp

#endif  // STRATDP_COINPRESS_HPP_
