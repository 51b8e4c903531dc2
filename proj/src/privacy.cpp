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

#include "stratdp/privacy.hpp"

#include <cmath>
#include <cstdio>

#include "stratdp/errors.hpp"

namespace stratdp {
namespace {

void CheckPositiveFinite(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw InvalidParameterError(std::string(name) +
                                " must be positive and finite");
  }
}

}  // namespace

PrivacyBudget PrivacyBudget::PureDp(double epsilon) {
  CheckPositiveFinite(epsilon, "epsilon");
  return PrivacyBudget(BudgetKind::kPureDp, epsilon, 0.0, 0.0);
}

PrivacyBudget PrivacyBudget::ApproxDp(double epsilon, double delta) {
  CheckPositiveFinite(epsilon, "epsilon");
  if (!(delta >= 0.0) || !(delta < 1.0)) {
    throw InvalidParameterError("delta must lie in [0, 1)");
  }
  return PrivacyBudget(BudgetKind::kApproxDp, epsilon, delta, 0.0);
}

PrivacyBudget PrivacyBudget::Zcdp(double rho) {
  CheckPositiveFinite(rho, "rho");
  return PrivacyBudget(BudgetKind::kZcdp, 0.0, 0.0, rho);
}

double PrivacyBudget::epsilon() const {
  if (kind_ == BudgetKind::kZcdp) {
    throw InvalidParameterError("zCDP budget has no epsilon component");
  }
  return epsilon_;
}

double PrivacyBudget::delta() const {
  if (kind_ == BudgetKind::kZcdp) {
    throw InvalidParameterError("zCDP budget has no delta component");
  }
  return delta_;
}

double PrivacyBudget::rho() const {
  if (kind_ != BudgetKind::kZcdp) {
    throw InvalidParameterError("DP budget has no rho component");
  }
  return rho_;
}

std::string PrivacyBudget::ToString() const {
  char buf[64];
  switch (kind_) {
    case BudgetKind::kPureDp:
      std::snprintf(buf, sizeof(buf), "PureDP(eps=%.12g)", epsilon_);
      break;
    case BudgetKind::kApproxDp:
      std::snprintf(buf, sizeof(buf), "ApproxDP(eps=%.12g, delta=%.12g)",
                    epsilon_, delta_);
      break;
    case BudgetKind::kZcdp:
      std::snprintf(buf, sizeof(buf), "zCDP(rho=%.12g)", rho_);
      break;
  }
  return buf;
}

PrivacyBudget ComposeSequential(std::span<const PrivacyBudget> budgets) {
  if (budgets.empty()) {
    throw InvalidParameterError("ComposeSequential: empty budget list");
  }
  const BudgetKind kind = budgets.front().kind();
  double epsilon = 0.0;
  double delta = 0.0;
  double rho = 0.0;
  for (const PrivacyBudget& b : budgets) {
    if (b.kind() != kind) {
      throw IncompatibleBudgetError(
          "ComposeSequential: mixed budget kinds; convert explicitly first");
    }
    switch (kind) {
      case BudgetKind::kPureDp:
        epsilon += b.epsilon();
        break;
      case BudgetKind::kApproxDp:
        epsilon += b.epsilon();
        delta += b.delta();
        break;
      case BudgetKind::kZcdp:
        rho += b.rho();
        break;
    }
  }
  switch (kind) {
    case BudgetKind::kPureDp:
      return PrivacyBudget::PureDp(epsilon);
    case BudgetKind::kApproxDp:
      return PrivacyBudget::ApproxDp(epsilon, delta);
    case BudgetKind::kZcdp:
    default:
      return PrivacyBudget::Zcdp(rho);
  }
}

PrivacyBudget ComposeParallel(const PrivacyBudget& budget,
                              bool partition_disjoint) {
  if (!partition_disjoint) {
    throw DisjointnessError(
        "ComposeParallel: caller did not assert a disjoint partition");
  }
  return budget;
}

PrivacyBudget PureDpToZcdp(double epsilon) {
  CheckPositiveFinite(epsilon, "epsilon");
  return PrivacyBudget::Zcdp(epsilon * epsilon / 2.0);
}

PrivacyBudget ZcdpToApproxDp(double rho, double delta) {
  CheckPositiveFinite(rho, "rho");
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw InvalidParameterError(
        "ZcdpToApproxDp: delta must lie in (0, 1); pure DP is not derivable");
  }
  const double epsilon =
      std::sqrt(2.0 * rho) * std::sqrt(2.0 * std::log(1.0 / delta));
  return PrivacyBudget::ApproxDp(epsilon, delta);
}

NoiseSample DrawLaplaceNoise(double sensitivity, double epsilon,
                             RngHandle& rng) {
  CheckPositiveFinite(sensitivity, "sensitivity");
  CheckPositiveFinite(epsilon, "epsilon");
  const double scale = sensitivity / epsilon;
  return NoiseSample{scale * rng.Laplace(), NoiseMechanism::kLaplace, scale};
}

NoiseSample DrawGaussianNoise(double sensitivity, double rho, RngHandle& rng) {
  CheckPositiveFinite(sensitivity, "sensitivity");
  CheckPositiveFinite(rho, "rho");
  const double sd = std::sqrt(sensitivity * sensitivity / (2.0 * rho));
  return NoiseSample{sd * rng.Normal(), NoiseMechanism::kGaussian, sd};
}

double LaplaceMechanism(double value, double sensitivity, double epsilon,
                        RngHandle& rng) {
  return value + DrawLaplaceNoise(sensitivity, epsilon, rng).value;
}

double GaussianMechanism(double value, double sensitivity, double rho,
                         RngHandle& rng) {
  return value + DrawGaussianNoise(sensitivity, rho, rng).value;
}

double LaplaceTailProbability(double alpha) {
  if (!(alpha >= 0.0)) {
    throw InvalidParameterError(
        "LaplaceTailProbability: alpha must be nonnegative");
  }
  return std::exp(-alpha);
}

}  // namespace stratdp
