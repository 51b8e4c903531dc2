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

#ifndef STRATDP_MEAN_ESTIMATION_HPP_
#define STRATDP_MEAN_ESTIMATION_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "stratdp/privacy.hpp"
#include "stratdp/rng.hpp"
#include "stratdp/sample.hpp"

namespace stratdp {

// Clipping setup for the clipped-Laplace mean estimator: a known bound on
// |mean| and a failure-probability knob.
struct ClipConfig {
  double mean_bound;  // R > 0
  double gamma;       // in (0, 1)

  void Validate() const;
};

// Clip threshold for a dataset of `count` points:
//   c = R + sqrt(ln(count / gamma)).
// The keep interval is symmetric, [-c, c]; the L1 sensitivity of the clipped
// mean is then 2c / count.
double ClipThreshold(const ClipConfig& cfg, std::size_t count);

// Projects x into [-c, c] with c = ClipThreshold(cfg, count).
double Clip(double x, const ClipConfig& cfg, std::size_t count);

// Number of points in `values` that Clip would move.
std::size_t CountClipped(std::span<const double> values, const ClipConfig& cfg,
                         std::size_t count);

// Laplace scale used by PrivateMean on `count` points:
//   (2 R + 2 sqrt(ln(count / gamma))) / (count * epsilon).
double PrivateMeanNoiseScale(std::size_t count, const ClipConfig& cfg,
                             double epsilon);

// Clipped empirical mean plus Laplace noise; (epsilon, 0)-DP.
double PrivateMean(std::span<const double> values, const ClipConfig& cfg,
                   double epsilon, RngHandle& rng);

struct GroupMeans {
  std::vector<double> estimates;  // one per stratum, in stratum order
  PrivacyBudget budget;           // PureDP(epsilon): parallel composition
};

// Runs PrivateMean independently on each stratum with the full epsilon; the
// strata are disjoint so the whole release is (epsilon, 0)-DP. Stratum i
// draws from rng.Fork(i), so a single-stratum sample reproduces
// PrivateMean(values, cfg, epsilon, rng.Fork(0)) bit-exactly.
GroupMeans GroupPrivateMeans(const StratifiedSample& sample,
                             const ClipConfig& cfg, double epsilon,
                             RngHandle& rng);

// Size-weighted recombination (1/n) * sum |G_i| * estimate_i. Deterministic:
// no extra noise is added, so the global value is consistent with the
// per-group values by construction.
double StratifiedMean(std::span<const double> per_group,
                      std::span<const std::size_t> group_sizes);

// High-probability bound on |private - empirical| for the fresh estimator:
//   C * ln(1/gamma) * (R + sqrt(ln(n / gamma))) / (n * epsilon).
// `constant` is the hidden multiplicative constant, default 1.
double FreshErrorBound(std::size_t n, const ClipConfig& cfg, double epsilon,
                       double constant = 1.0);

// Same bound for the k-stratum recombined estimator:
//   C * ln(1/gamma) * sqrt(k) * (R + sqrt(ln(n / (k gamma)))) / (n * epsilon).
// Coincides with FreshErrorBound at k = 1.
double StratErrorBound(std::size_t n, std::size_t k, const ClipConfig& cfg,
                       double epsilon, double constant = 1.0);

}  // namespace stratdp

#endif  // STRATDP_MEAN_ESTIMATION_HPP_
