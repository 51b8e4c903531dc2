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

#ifndef STRATDP_PRIVACY_HPP_
#define STRATDP_PRIVACY_HPP_

#include <span>
#include <string>

#include "stratdp/rng.hpp"

namespace stratdp {

enum class BudgetKind { kPureDp, kApproxDp, kZcdp };

// An (epsilon, delta)-DP or rho-zCDP allowance.
//
// Budgets of the same kind compose sequentially by component-wise addition
// and in parallel (over disjoint inputs) by identity. Mixing kinds is an
// error: silent conversion would change the reported guarantee.
class PrivacyBudget {
 public:
  static PrivacyBudget PureDp(double epsilon);
  static PrivacyBudget ApproxDp(double epsilon, double delta);
  static PrivacyBudget Zcdp(double rho);

  BudgetKind kind() const { return kind_; }
  // epsilon() is valid for kPureDp/kApproxDp, rho() for kZcdp; delta() is 0
  // for pure DP. Accessing the wrong component throws.
  double epsilon() const;
  double delta() const;
  double rho() const;

  bool operator==(const PrivacyBudget& other) const = default;

  std::string ToString() const;

 private:
  PrivacyBudget(BudgetKind kind, double epsilon, double delta, double rho)
      : kind_(kind), epsilon_(epsilon), delta_(delta), rho_(rho) {}

  BudgetKind kind_;
  double epsilon_;
  double delta_;
  double rho_;
};

// Component-wise sum of same-kind budgets. Throws IncompatibleBudgetError on
// mixed kinds and InvalidParameterError on an empty list.
PrivacyBudget ComposeSequential(std::span<const PrivacyBudget> budgets);

// Parallel composition over a disjoint partition: the budget is unchanged.
// The caller asserts disjointness; a false flag throws DisjointnessError.
PrivacyBudget ComposeParallel(const PrivacyBudget& budget,
                              bool partition_disjoint);

// (epsilon, 0)-DP implies (epsilon^2 / 2)-zCDP.
PrivacyBudget PureDpToZcdp(double epsilon);

// rho-zCDP implies (sqrt(2 rho) * sqrt(2 ln(1/delta)), delta)-DP for every
// delta in (0, 1). delta = 0 is rejected: pure DP is not derivable here.
PrivacyBudget ZcdpToApproxDp(double rho, double delta);

enum class NoiseMechanism { kLaplace, kGaussian };

// One noise draw together with the scale it was drawn at.
struct NoiseSample {
  double value;
  NoiseMechanism mechanism;
  // Laplace: scale b = sensitivity / epsilon. Gaussian: standard deviation
  // sqrt(sensitivity^2 / (2 rho)).
  double scale;
};

NoiseSample DrawLaplaceNoise(double sensitivity, double epsilon,
                             RngHandle& rng);
NoiseSample DrawGaussianNoise(double sensitivity, double rho, RngHandle& rng);

// value + Lap(sensitivity / epsilon); (epsilon, 0)-DP for a function with
// the given L1 sensitivity.
double LaplaceMechanism(double value, double sensitivity, double epsilon,
                        RngHandle& rng);

// value + N(0, sensitivity^2 / (2 rho)); rho-zCDP.
double GaussianMechanism(double value, double sensitivity, double rho,
                         RngHandle& rng);

// Upper bound on Pr[|Y| >= alpha * b] for Y ~ Lap(b): exp(-alpha).
double LaplaceTailProbability(double alpha);

}  // namespace stratdp

#endif  // STRATDP_PRIVACY_HPP_
