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

#include "stratdp/mean_estimation.hpp"

#include <algorithm>
#include <cmath>

#include "stratdp/errors.hpp"

namespace stratdp {

void ClipConfig::Validate() const {
  if (!(mean_bound > 0.0) || !std::isfinite(mean_bound)) {
    throw InvalidParameterError("ClipConfig: mean_bound must be positive");
  }
  if (!(gamma > 0.0) || !(gamma < 1.0)) {
    throw InvalidParameterError("ClipConfig: gamma must lie in (0, 1)");
  }
}

double ClipThreshold(const ClipConfig& cfg, std::size_t count) {
  cfg.Validate();
  if (count < 1) {
    throw InvalidParameterError("ClipThreshold: count must be >= 1");
  }
  return cfg.mean_bound +
         std::sqrt(std::log(static_cast<double>(count) / cfg.gamma));
}

double Clip(double x, const ClipConfig& cfg, std::size_t count) {
  const double c = ClipThreshold(cfg, count);
  if (x > c) return c;
  if (x < -c) return -c;
  return x;
}

std::size_t CountClipped(std::span<const double> values, const ClipConfig& cfg,
                         std::size_t count) {
  const double c = ClipThreshold(cfg, count);
  return static_cast<std::size_t>(std::count_if(
      values.begin(), values.end(),
      [c](double x) { return x > c || x < -c; }));
}

double PrivateMeanNoiseScale(std::size_t count, const ClipConfig& cfg,
                             double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw InvalidParameterError("PrivateMean: epsilon must be positive");
  }
  // Sensitivity of the clipped mean is 2c / count.
  return 2.0 * ClipThreshold(cfg, count) /
         (static_cast<double>(count) * epsilon);
}

double PrivateMean(std::span<const double> values, const ClipConfig& cfg,
                   double epsilon, RngHandle& rng) {
  if (values.empty()) {
    throw EmptyDataError("PrivateMean: empty dataset");
  }
  const std::size_t count = values.size();
  const double c = ClipThreshold(cfg, count);
  double sum = 0.0;
  for (double x : values) {
    sum += std::clamp(x, -c, c);
  }
  const double mean = sum / static_cast<double>(count);
  const double sensitivity = 2.0 * c / static_cast<double>(count);
  return LaplaceMechanism(mean, sensitivity, epsilon, rng);
}

GroupMeans GroupPrivateMeans(const StratifiedSample& sample,
                             const ClipConfig& cfg, double epsilon,
                             RngHandle& rng) {
  sample.Validate();
  std::vector<double> estimates;
  estimates.reserve(sample.group_count());
  for (std::size_t i = 0; i < sample.strata.size(); ++i) {
    RngHandle stratum_rng = rng.Fork(i);
    estimates.push_back(
        PrivateMean(sample.strata[i].values, cfg, epsilon, stratum_rng));
  }
  // Disjoint strata, each released at epsilon: parallel composition.
  const PrivacyBudget budget =
      ComposeParallel(PrivacyBudget::PureDp(epsilon), /*partition_disjoint=*/true);
  return GroupMeans{std::move(estimates), budget};
}

double StratifiedMean(std::span<const double> per_group,
                      std::span<const std::size_t> group_sizes) {
  if (per_group.size() != group_sizes.size()) {
    throw ShapeError("StratifiedMean: estimates and sizes differ in length");
  }
  if (per_group.empty()) {
    throw EmptyDataError("StratifiedMean: no groups");
  }
  double total = 0.0;
  double weighted = 0.0;
  for (std::size_t i = 0; i < per_group.size(); ++i) {
    if (group_sizes[i] < 1) {
      throw InvalidParameterError("StratifiedMean: group sizes must be >= 1");
    }
    const double size = static_cast<double>(group_sizes[i]);
    total += size;
    weighted += size * per_group[i];
  }
  return weighted / total;
}

double FreshErrorBound(std::size_t n, const ClipConfig& cfg, double epsilon,
                       double constant) {
  return StratErrorBound(n, 1, cfg, epsilon, constant);
}

double StratErrorBound(std::size_t n, std::size_t k, const ClipConfig& cfg,
                       double epsilon, double constant) {
  cfg.Validate();
  if (k < 1 || n < k) {
    throw InvalidParameterError("StratErrorBound: need n >= k >= 1");
  }
  if (!(epsilon > 0.0) || !(constant > 0.0)) {
    throw InvalidParameterError(
        "StratErrorBound: epsilon and constant must be positive");
  }
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k);
  return constant * std::log(1.0 / cfg.gamma) * std::sqrt(kd) *
         (cfg.mean_bound + std::sqrt(std::log(nd / (kd * cfg.gamma)))) /
         (nd * epsilon);
}

}  // namespace stratdp
