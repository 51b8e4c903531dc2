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

#include "stratdp/coinpress.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "stratdp/errors.hpp"

namespace stratdp {

double CoinpressConfig::TotalRho() const {
  double total = 0.0;
  for (double rho : rho_schedule) total += rho;
  return total;
}

void CoinpressConfig::Validate() const {
  if (!(prior.lo < prior.hi)) {
    throw InvalidParameterError("CoinpressConfig: prior interval is empty");
  }
  if (!(sigma > 0.0)) {
    throw InvalidParameterError("CoinpressConfig: sigma must be positive");
  }
  if (steps < 1) {
    throw InvalidParameterError("CoinpressConfig: steps must be >= 1");
  }
  if (rho_schedule.size() != static_cast<std::size_t>(steps)) {
    throw InvalidParameterError(
        "CoinpressConfig: rho_schedule length must equal steps");
  }
  for (double rho : rho_schedule) {
    if (!(rho > 0.0)) {
      throw InvalidParameterError(
          "CoinpressConfig: every schedule entry must be positive");
    }
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw InvalidParameterError("CoinpressConfig: beta must lie in (0, 1)");
  }
}

std::vector<double> MakeRhoSchedule(int steps, double total_rho) {
  if (steps < 1 || !(total_rho > 0.0)) {
    throw InvalidParameterError(
        "MakeRhoSchedule: need steps >= 1 and total_rho > 0");
  }
  std::vector<double> weights(steps, 1.0);
  weights.back() = 5.0;
  const double weight_sum = static_cast<double>(steps - 1) + 5.0;
  for (double& w : weights) {
    w = total_rho * w / weight_sum;
  }
  return weights;
}

std::vector<double> UvmBetaSchedule(int steps, double beta) {
  if (steps < 1 || !(beta > 0.0) || !(beta < 1.0)) {
    throw InvalidParameterError("UvmBetaSchedule: invalid steps or beta");
  }
  std::vector<double> schedule(steps, beta / 4.0);
  for (int i = 0; i + 1 < steps; ++i) {
    schedule[i] = beta / (4.0 * static_cast<double>(steps - 1));
  }
  return schedule;
}

double UvmProjectionExtension(std::size_t n, double sigma, double beta_s) {
  if (n < 1 || !(sigma > 0.0) || !(beta_s > 0.0)) {
    throw InvalidParameterError("UvmProjectionExtension: invalid arguments");
  }
  return sigma * std::sqrt(2.0 * std::log(2.0 * static_cast<double>(n) / beta_s));
}

double UvmSensitivity(std::size_t n, const Interval& interval,
                      double extension) {
  return (interval.width() + 2.0 * extension) / static_cast<double>(n);
}

Interval UvmStep(std::span<const double> values, const Interval& interval,
                 double sigma, double rho_s, double beta_s, RngHandle& rng) {
  if (values.empty()) {
    throw EmptyDataError("UvmStep: empty dataset");
  }
  if (!(rho_s > 0.0) || !(beta_s > 0.0) || !(sigma > 0.0)) {
    throw InvalidParameterError("UvmStep: rho_s, beta_s, sigma must be > 0");
  }
  const std::size_t n = values.size();
  const double extension = UvmProjectionExtension(n, sigma, beta_s);
  const double proj_lo = interval.lo - extension;
  const double proj_hi = interval.hi + extension;
  double sum = 0.0;
  for (double x : values) {
    sum += std::clamp(x, proj_lo, proj_hi);
  }
  const double projected_mean = sum / static_cast<double>(n);
  const double delta = UvmSensitivity(n, interval, extension);
  const double z = GaussianMechanism(projected_mean, delta, rho_s, rng);
  const double noise_var = delta * delta / (2.0 * rho_s);
  const double radius = std::sqrt(
      2.0 * (sigma * sigma / static_cast<double>(n) + noise_var) *
      std::log(2.0 / beta_s));
  return Interval{z - radius, z + radius};
}

UvmEstimate UvmRec(std::span<const double> values, const CoinpressConfig& cfg,
                   RngHandle& rng) {
  cfg.Validate();
  if (values.empty()) {
    throw EmptyDataError("UvmRec: empty dataset");
  }
  const std::vector<double> betas = UvmBetaSchedule(cfg.steps, cfg.beta);
  Interval interval = cfg.prior;
  for (int i = 0; i < cfg.steps; ++i) {
    interval = UvmStep(values, interval, cfg.sigma, cfg.rho_schedule[i],
                       betas[i], rng);
  }
  return UvmEstimate{interval.midpoint(), interval,
                     PrivacyBudget::Zcdp(cfg.TotalRho())};
}

namespace {

void CheckWeights(std::span<const double> weights, std::size_t k) {
  if (weights.size() != k) {
    throw InvalidWeightsError("StratCoinpress: need one weight per stratum");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) {
      throw InvalidWeightsError("StratCoinpress: negative weight");
    }
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw InvalidWeightsError("StratCoinpress: weights must sum to 1 within 1e-9");
  }
}

}  // namespace

MeanEstimateResult StratCoinpress(const StratifiedSample& sample,
                                  const CoinpressConfig& cfg,
                                  std::span<const double> weights,
                                  RngHandle& rng) {
  cfg.Validate();
  sample.Validate();
  const std::size_t k = sample.group_count();
  CheckWeights(weights, k);

  CoinpressConfig stratum_cfg = cfg;
  stratum_cfg.beta = cfg.beta / static_cast<double>(k);

  MeanEstimateResult result{0.0, {}, PrivacyBudget::Zcdp(cfg.TotalRho())};
  result.per_group.reserve(k);
  double global = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    RngHandle stratum_rng = rng.Fork(i);
    const UvmEstimate est =
        UvmRec(sample.strata[i].values, stratum_cfg, stratum_rng);
    result.per_group.push_back({sample.strata[i].id, est.estimate});
    global += weights[i] * est.estimate;
  }
  result.global = global;
  return result;
}

MeanEstimateResult PubStratCoinpress(const StratifiedSample& sample,
                                     const CoinpressConfig& cfg,
                                     const StratifiedSample& public_holdout,
                                     RngHandle& rng) {
  sample.Validate();
  public_holdout.Validate();
  std::unordered_map<std::string, std::size_t> holdout_sizes;
  std::size_t holdout_n = 0;
  for (const Stratum& s : public_holdout.strata) {
    holdout_sizes[s.id] += s.values.size();
    holdout_n += s.values.size();
  }
  std::vector<double> weights;
  weights.reserve(sample.group_count());
  for (const Stratum& s : sample.strata) {
    auto it = holdout_sizes.find(s.id);
    if (it == holdout_sizes.end()) {
      throw InvalidWeightsError(
          "PubStratCoinpress: holdout has no weight for group '" + s.id + "'");
    }
    weights.push_back(static_cast<double>(it->second) /
                      static_cast<double>(holdout_n));
  }
  // Holdout groups absent from the sample leave the weights summing short;
  // renormalize over the groups actually estimated.
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (!(sum > 0.0)) {
    throw InvalidWeightsError("PubStratCoinpress: holdout weights sum to 0");
  }
  for (double& w : weights) w /= sum;
  return StratCoinpress(sample, cfg, weights, rng);
}

double ParityError(std::span<const double> truth,
                   std::span<const double> estimate, double omega) {
  if (truth.size() != estimate.size()) {
    throw ShapeError("ParityError: truth and estimate differ in length");
  }
  if (truth.size() < 2) {
    throw InvalidParameterError(
        "ParityError: need k per-group entries plus the global entry");
  }
  if (!(omega > 0.0)) {
    throw InvalidParameterError("ParityError: omega must be positive");
  }
  const std::size_t k = truth.size() - 1;
  double total = 0.0;
  for (std::size_t i = 0; i <= k; ++i) {
    if (truth[i] == 0.0) {
      throw UndefinedNormalizationError(
          "ParityError: zero truth entry at index " + std::to_string(i));
    }
    const double term = std::fabs((truth[i] - estimate[i]) / truth[i]);
    total += (i == k) ? omega * term : term;
  }
  return total;
}

}  // namespace stratdp
