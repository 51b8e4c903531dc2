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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "stratdp/errors.hpp"
#include "stratdp/privacy.hpp"
#include "stratdp/rng.hpp"

using namespace stratdp;

TEST_CASE("laplace noise scale is sensitivity over epsilon") {
  RngHandle rng(1);
  CHECK(DrawLaplaceNoise(2.0, 1.0, rng).scale == 2.0);
  CHECK(DrawLaplaceNoise(1.0, 4.0, rng).scale == 0.25);
}

TEST_CASE("laplace mechanism rejects non-finite or non-positive parameters") {
  RngHandle rng(1);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(LaplaceMechanism(5.0, 1.0, inf, rng), InvalidParameterError);
  CHECK_THROWS_AS(LaplaceMechanism(0.0, 0.0, 1.0, rng), InvalidParameterError);
  CHECK_THROWS_AS(LaplaceMechanism(0.0, -1.0, 1.0, rng),
                  InvalidParameterError);
  CHECK_THROWS_AS(LaplaceMechanism(0.0, 1.0, 0.0, rng), InvalidParameterError);
}

TEST_CASE("laplace mechanism empirical mean matches the input value") {
  RngHandle rng(42);
  const std::size_t n = 1000000;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += LaplaceMechanism(3.0, 1.0, 2.0, rng);  // b = 0.5
  }
  CHECK(std::fabs(sum / n - 3.0) < 0.01);
}

TEST_CASE("gaussian noise sd follows sqrt(sens^2 / (2 rho))") {
  RngHandle rng(1);
  CHECK(DrawGaussianNoise(1.0, 0.5, rng).scale == 1.0);
  CHECK(DrawGaussianNoise(2.0, 2.0, rng).scale == 1.0);
}

TEST_CASE("gaussian mechanism empirical variance matches the formula") {
  RngHandle rng(7);
  const std::size_t n = 1000000;
  double sum = 0.0;
  double sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = GaussianMechanism(0.0, 1.0, 0.125, rng);
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(var == doctest::Approx(4.0).epsilon(0.02));
}

TEST_CASE("sequential composition adds component-wise") {
  const std::vector<PrivacyBudget> pure = {PrivacyBudget::PureDp(1.0),
                                           PrivacyBudget::PureDp(1.0)};
  CHECK(ComposeSequential(pure) == PrivacyBudget::PureDp(2.0));

  const std::vector<PrivacyBudget> zcdp = {PrivacyBudget::Zcdp(0.3),
                                           PrivacyBudget::Zcdp(0.2)};
  CHECK(ComposeSequential(zcdp) == PrivacyBudget::Zcdp(0.5));

  const std::vector<PrivacyBudget> single = {PrivacyBudget::PureDp(1.0)};
  CHECK(ComposeSequential(single) == PrivacyBudget::PureDp(1.0));

  const std::vector<PrivacyBudget> approx = {
      PrivacyBudget::ApproxDp(0.5, 0.25), PrivacyBudget::ApproxDp(0.25, 0.25)};
  CHECK(ComposeSequential(approx) == PrivacyBudget::ApproxDp(0.75, 0.5));
}

TEST_CASE("sequential composition additivity over random same-kind lists") {
  RngHandle rng(11);
  for (int iter = 0; iter < 50; ++iter) {
    const std::size_t count = 1 + rng.UniformInt(6);
    std::vector<PrivacyBudget> budgets;
    double expected = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const double rho = rng.Uniform();
      budgets.push_back(PrivacyBudget::Zcdp(rho));
      expected += rho;
    }
    CHECK(ComposeSequential(budgets).rho() == expected);
  }
}

TEST_CASE("mixed-kind composition is rejected") {
  const std::vector<PrivacyBudget> mixed = {PrivacyBudget::PureDp(1.0),
                                            PrivacyBudget::Zcdp(0.5)};
  CHECK_THROWS_AS(ComposeSequential(mixed), IncompatibleBudgetError);
  CHECK_THROWS_AS(ComposeSequential({}), InvalidParameterError);
}

TEST_CASE("parallel composition is the identity when disjointness holds") {
  CHECK(ComposeParallel(PrivacyBudget::PureDp(1.0), true) ==
        PrivacyBudget::PureDp(1.0));
  CHECK(ComposeParallel(PrivacyBudget::Zcdp(0.5), true) ==
        PrivacyBudget::Zcdp(0.5));
  CHECK_THROWS_AS(ComposeParallel(PrivacyBudget::PureDp(1.0), false),
                  DisjointnessError);
}

TEST_CASE("pure DP to zCDP conversion") {
  CHECK(PureDpToZcdp(1.0) == PrivacyBudget::Zcdp(0.5));
  CHECK(PureDpToZcdp(2.0) == PrivacyBudget::Zcdp(2.0));
  CHECK(PureDpToZcdp(0.1).rho() == doctest::Approx(0.005).epsilon(1e-12));
}

TEST_CASE("zCDP to approximate DP conversion") {
  const PrivacyBudget a = ZcdpToApproxDp(0.5, std::exp(-2.0));
  CHECK(a.epsilon() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(a.delta() == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));

  // sqrt(2 ln 1e6), frozen from an independent evaluation.
  const PrivacyBudget b = ZcdpToApproxDp(0.5, 1e-6);
  CHECK(b.epsilon() == doctest::Approx(5.256521769756932).epsilon(1e-12));

  const PrivacyBudget c = ZcdpToApproxDp(2.0, std::exp(-2.0));
  CHECK(c.epsilon() == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(ZcdpToApproxDp(0.5, 0.0), InvalidParameterError);
}

TEST_CASE("laplace tail probability") {
  CHECK(LaplaceTailProbability(0.0) == 1.0);
  CHECK(LaplaceTailProbability(std::log(2.0)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(LaplaceTailProbability(-1.0), InvalidParameterError);
}

TEST_CASE("laplace tail empirical frequency stays under the bound") {
  RngHandle rng(99);
  const std::size_t n = 1000000;
  std::size_t over[3] = {0, 0, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const double y = std::fabs(rng.Laplace());
    for (int a = 1; a <= 3; ++a) {
      if (y >= a) ++over[a - 1];
    }
  }
  for (int a = 1; a <= 3; ++a) {
    const double p = LaplaceTailProbability(a);
    const double sd = std::sqrt(p * (1.0 - p) / n);
    CHECK(static_cast<double>(over[a - 1]) / n <= p + 3.0 * sd);
  }
}

TEST_CASE("identical (seed, stream) reproduces identical sequences") {
  RngHandle a(123, 7);
  RngHandle b(123, 7);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.Uniform() == b.Uniform());
    CHECK(a.Normal() == b.Normal());
    CHECK(a.Laplace() == b.Laplace());
    CHECK(a.Gamma(0.5 + (i % 5)) == b.Gamma(0.5 + (i % 5)));
  }
}

TEST_CASE("different streams decorrelate") {
  RngHandle a(123, 0);
  RngHandle b(123, 1);
  int equal = 0;
  for (int i = 0; i < 100; ++i) {
    if (a.NextU64() == b.NextU64()) ++equal;
  }
  CHECK(equal == 0);
}

TEST_CASE("fork depends on identity, not on draw position") {
  RngHandle a(5, 2);
  RngHandle b(5, 2);
  (void)b.Uniform();
  (void)b.Uniform();
  RngHandle fa = a.Fork(3);
  RngHandle fb = b.Fork(3);
  CHECK(fa.Uniform() == fb.Uniform());

  RngHandle other = a.Fork(4);
  CHECK(a.Fork(3).NextU64() != other.NextU64());
}

TEST_CASE("laplace sample mean concentrates at the scale rate") {
  RngHandle rng(31);
  const std::size_t n = 1000000;
  const double b = 1.7;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += 5.0 + b * rng.Laplace();
  CHECK(std::fabs(sum / n - 5.0) <= 5.0 * b / std::sqrt(double(n)));
}
