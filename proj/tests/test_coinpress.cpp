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
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "stratdp/coinpress.hpp"
#include "stratdp/datagen.hpp"
#include "stratdp/errors.hpp"
#include "stratdp/rng.hpp"

using namespace stratdp;

namespace {

CoinpressConfig StandardConfig(double total_rho = 0.5, double beta = 0.05) {
  CoinpressConfig cfg;
  cfg.prior = Interval{-100.0, 100.0};
  cfg.sigma = 1.0;
  cfg.steps = 4;
  cfg.rho_schedule = MakeRhoSchedule(4, total_rho);
  cfg.beta = beta;
  return cfg;
}

StratifiedSample MakeSample(std::vector<std::vector<double>> groups) {
  StratifiedSample sample;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    sample.strata.push_back({"g" + std::to_string(i), std::move(groups[i])});
  }
  return sample;
}

std::vector<double> EstimateVector(const MeanEstimateResult& result) {
  std::vector<double> v;
  for (const GroupEstimate& g : result.per_group) v.push_back(g.estimate);
  v.push_back(result.global);
  return v;
}

}  // namespace

TEST_CASE("projection extension and sensitivity at frozen points") {
  // sqrt(2 ln 2000) and (20 + 2 ext) / 100, frozen independently.
  CHECK(UvmProjectionExtension(100, 1.0, 0.1) ==
        doctest::Approx(3.8989492070408103).epsilon(1e-14));
  CHECK(UvmSensitivity(100, Interval{-10.0, 10.0},
                       UvmProjectionExtension(100, 1.0, 0.1)) ==
        doctest::Approx(0.27797898414081623).epsilon(1e-14));
}

TEST_CASE("uvm step returns an interval symmetric about its release") {
  RngHandle rng(1);
  std::vector<double> values(100);
  for (double& v : values) v = rng.Normal();
  RngHandle step_rng(2);
  const Interval out =
      UvmStep(values, Interval{-10.0, 10.0}, 1.0, 0.5, 0.1, step_rng);
  CHECK(out.lo < out.hi);
  // midpoint = released value by construction; radius on both sides equal.
  CHECK(out.hi - out.midpoint() ==
        doctest::Approx(out.midpoint() - out.lo).epsilon(1e-12));
}

TEST_CASE("near-noiseless uvm step centers on the empirical mean") {
  RngHandle rng(3);
  std::vector<double> values(100);
  double sum = 0.0;
  for (double& v : values) {
    v = rng.Normal();
    sum += v;
  }
  RngHandle step_rng(4);
  const Interval out =
      UvmStep(values, Interval{-10.0, 10.0}, 1.0, 1e6, 0.1, step_rng);
  CHECK(std::fabs(out.midpoint() - sum / 100.0) < 1e-3);
}

TEST_CASE("uvm step rejects empty data and bad parameters") {
  RngHandle rng(5);
  CHECK_THROWS_AS(UvmStep({}, Interval{-1.0, 1.0}, 1.0, 0.5, 0.1, rng),
                  EmptyDataError);
  const std::vector<double> values = {1.0};
  CHECK_THROWS_AS(
      UvmStep(values, Interval{-1.0, 1.0}, 1.0, 0.0, 0.1, rng),
      InvalidParameterError);
}

TEST_CASE("single-step recursion equals one step at beta / 4") {
  RngHandle data_rng(6);
  std::vector<double> values(200);
  for (double& v : values) v = 0.3 + data_rng.Normal();

  CoinpressConfig cfg = StandardConfig();
  cfg.steps = 1;
  cfg.rho_schedule = {0.5};
  RngHandle a(7, 2);
  const UvmEstimate est = UvmRec(values, cfg, a);
  RngHandle b(7, 2);
  const Interval step =
      UvmStep(values, cfg.prior, 1.0, 0.5, cfg.beta / 4.0, b);
  CHECK(est.estimate == step.midpoint());
  CHECK(est.final_interval.lo == step.lo);
  CHECK(est.final_interval.hi == step.hi);
}

TEST_CASE("estimate is the midpoint of the final interval") {
  RngHandle data_rng(8);
  std::vector<double> values(500);
  for (double& v : values) v = data_rng.Normal();
  RngHandle rng(9);
  const UvmEstimate est = UvmRec(values, StandardConfig(), rng);
  CHECK(est.final_interval.contains(est.estimate));
  CHECK(est.estimate == est.final_interval.midpoint());
}

TEST_CASE("adaptive estimator reaches the documented accuracy regime") {
  CoinpressConfig cfg = StandardConfig(0.25);
  double abs_err_sum = 0.0;
  for (int seed = 0; seed < 50; ++seed) {
    RngHandle rng(3000 + seed);
    std::vector<double> values(10000);
    for (double& v : values) v = 0.5 + rng.Normal();
    const UvmEstimate est = UvmRec(values, cfg, rng);
    abs_err_sum += std::fabs(est.estimate - 0.5);
  }
  CHECK(abs_err_sum / 50.0 <= 0.05);
}

TEST_CASE("reported budget is the exact schedule total") {
  RngHandle data_rng(10);
  std::vector<double> values(100);
  for (double& v : values) v = data_rng.Normal();
  CoinpressConfig cfg = StandardConfig();
  cfg.rho_schedule = {0.0625, 0.0625, 0.0625, 0.3125};
  RngHandle rng(11);
  const UvmEstimate est = UvmRec(values, cfg, rng);
  CHECK(est.budget == PrivacyBudget::Zcdp(0.0625 + 0.0625 + 0.0625 + 0.3125));
}

TEST_CASE("per-step failure budgets sum to beta / 2") {
  for (int t = 2; t <= 8; ++t) {
    const std::vector<double> betas = UvmBetaSchedule(t, 0.05);
    const double sum = std::accumulate(betas.begin(), betas.end(), 0.0);
    CHECK(sum == doctest::Approx(0.05 / 2.0).epsilon(1e-12));
    CHECK(betas.back() == 0.05 / 4.0);
  }
  const std::vector<double> single = UvmBetaSchedule(1, 0.05);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == 0.05 / 4.0);
}

TEST_CASE("near-noiseless steps keep the empirical mean inside the interval") {
  RngHandle data_rng(12);
  std::vector<double> values(400);
  double sum = 0.0;
  for (double& v : values) {
    v = 1.0 + data_rng.Normal();
    sum += v;
  }
  const double mean = sum / 400.0;
  RngHandle rng(13);
  Interval interval{-50.0, 50.0};
  for (int step = 0; step < 4; ++step) {
    interval = UvmStep(values, interval, 1.0, 1e6, 0.0125, rng);
    CHECK(interval.contains(mean));
  }
}

TEST_CASE("config validation") {
  CoinpressConfig cfg = StandardConfig();
  cfg.rho_schedule = {0.1, 0.1};  // wrong length
  RngHandle rng(14);
  const std::vector<double> values = {1.0, 2.0};
  CHECK_THROWS_AS(UvmRec(values, cfg, rng), InvalidParameterError);
  cfg = StandardConfig();
  cfg.beta = 1.5;
  CHECK_THROWS_AS(UvmRec(values, cfg, rng), InvalidParameterError);
  cfg = StandardConfig();
  cfg.prior = Interval{1.0, -1.0};
  CHECK_THROWS_AS(UvmRec(values, cfg, rng), InvalidParameterError);
}

TEST_CASE("stratified run with one group matches the plain recursion") {
  RngHandle data_rng(15);
  std::vector<double> values(300);
  for (double& v : values) v = data_rng.Normal();
  const CoinpressConfig cfg = StandardConfig();

  RngHandle strat_rng(16, 5);
  const MeanEstimateResult strat = StratCoinpress(
      MakeSample({values}), cfg, std::vector<double>{1.0}, strat_rng);
  RngHandle plain_rng = RngHandle(16, 5).Fork(0);
  const UvmEstimate plain = UvmRec(values, cfg, plain_rng);
  REQUIRE(strat.per_group.size() == 1);
  CHECK(strat.per_group[0].estimate == plain.estimate);
  CHECK(strat.global == plain.estimate);
  CHECK(strat.budget_spent == plain.budget);
}

TEST_CASE("stratified and plain recursion have comparable error on iid data") {
  const CoinpressConfig cfg = StandardConfig(0.5);
  double strat_err = 0.0;
  double plain_err = 0.0;
  const int runs = 50;
  for (int seed = 0; seed < runs; ++seed) {
    RngHandle rng(7000 + seed);
    std::vector<std::vector<double>> groups(4, std::vector<double>(2500));
    std::vector<double> all;
    for (auto& g : groups) {
      for (double& v : g) {
        v = 0.25 + rng.Normal();
        all.push_back(v);
      }
    }
    const std::vector<double> weights(4, 0.25);
    RngHandle strat_rng = rng.Fork(1);
    const MeanEstimateResult strat =
        StratCoinpress(MakeSample(std::move(groups)), cfg, weights, strat_rng);
    RngHandle plain_rng = rng.Fork(2);
    const UvmEstimate plain = UvmRec(all, cfg, plain_rng);
    strat_err += std::fabs(strat.global - 0.25);
    plain_err += std::fabs(plain.estimate - 0.25);
  }
  strat_err /= runs;
  plain_err /= runs;
  CHECK(strat_err <= 0.05);
  CHECK(plain_err <= 0.05);
  CHECK(strat_err < 2.5 * plain_err);
  CHECK(plain_err < 2.5 * strat_err);
}

TEST_CASE("stratified weights are validated") {
  const CoinpressConfig cfg = StandardConfig();
  RngHandle rng(17);
  StratifiedSample sample = MakeSample({{1.0, 2.0}, {3.0, 4.0}});
  CHECK_THROWS_AS(
      StratCoinpress(sample, cfg, std::vector<double>{0.6, 0.6}, rng),
      InvalidWeightsError);
  CHECK_THROWS_AS(StratCoinpress(sample, cfg, std::vector<double>{1.0}, rng),
                  InvalidWeightsError);
}

TEST_CASE("public-holdout weights reproduce the true-weight run bit-exactly") {
  RngHandle data_rng(18);
  std::vector<std::vector<double>> groups = {std::vector<double>(30),
                                             std::vector<double>(10)};
  for (auto& g : groups) {
    for (double& v : g) v = data_rng.Normal();
  }
  StratifiedSample sample = MakeSample(std::move(groups));
  // Holdout with the same proportions: weights {0.75, 0.25} exactly.
  StratifiedSample holdout =
      MakeSample({{1.0, 1.0, 1.0}, {2.0}});
  const CoinpressConfig cfg = StandardConfig();

  RngHandle a(19, 3);
  const MeanEstimateResult pub = PubStratCoinpress(sample, cfg, holdout, a);
  RngHandle b(19, 3);
  const MeanEstimateResult strat =
      StratCoinpress(sample, cfg, std::vector<double>{0.75, 0.25}, b);
  CHECK(pub.global == strat.global);
  CHECK(EstimateVector(pub) == EstimateVector(strat));
}

TEST_CASE("weight perturbation shifts the aggregate linearly") {
  RngHandle data_rng(20);
  std::vector<std::vector<double>> groups(3, std::vector<double>(50));
  for (auto& g : groups) {
    for (double& v : g) v = data_rng.Normal();
  }
  StratifiedSample sample = MakeSample(std::move(groups));
  const CoinpressConfig cfg = StandardConfig();
  const std::vector<double> w1 = {0.5, 0.3, 0.2};
  const std::vector<double> w2 = {0.6, 0.2, 0.2};  // +0.1 / -0.1 on two groups

  RngHandle a(21, 8);
  const MeanEstimateResult r1 = StratCoinpress(sample, cfg, w1, a);
  RngHandle b(21, 8);
  const MeanEstimateResult r2 = StratCoinpress(sample, cfg, w2, b);
  // Same streams, so per-group estimates agree and only the weights moved.
  CHECK(r1.per_group[0].estimate == r2.per_group[0].estimate);
  const double expected_shift =
      0.1 * (r1.per_group[0].estimate - r1.per_group[1].estimate);
  CHECK(r2.global - r1.global ==
        doctest::Approx(expected_shift).epsilon(1e-12));
}

TEST_CASE("missing holdout group raises a weights error naming the group") {
  StratifiedSample sample = MakeSample({{1.0}, {2.0}});
  StratifiedSample holdout;
  holdout.strata.push_back({"g0", {1.0, 1.0}});
  RngHandle rng(22);
  try {
    PubStratCoinpress(sample, StandardConfig(), holdout, rng);
    FAIL("expected InvalidWeightsError");
  } catch (const InvalidWeightsError& e) {
    CHECK(std::string(e.what()).find("g1") != std::string::npos);
  }
}

TEST_CASE("parity error examples") {
  const std::vector<double> truth = {2.0, 4.0, 3.0};
  CHECK(ParityError(truth, truth, 0.5) == 0.0);
  const std::vector<double> est = {1.0, 4.0, 3.0};
  CHECK(ParityError(truth, est, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("parity error is invariant to common rescaling") {
  RngHandle rng(23);
  for (int iter = 0; iter < 100; ++iter) {
    const std::size_t k = 2 + rng.UniformInt(6);
    std::vector<double> truth(k + 1);
    std::vector<double> est(k + 1);
    for (std::size_t i = 0; i <= k; ++i) {
      truth[i] = 0.5 + rng.Uniform();
      est[i] = truth[i] + 0.2 * (rng.Uniform() - 0.5);
    }
    const double base = ParityError(truth, est, 1.0 / k);
    const double scale = 0.1 + 10.0 * rng.Uniform();
    std::vector<double> truth_scaled = truth;
    std::vector<double> est_scaled = est;
    for (std::size_t i = 0; i <= k; ++i) {
      truth_scaled[i] *= scale;
      est_scaled[i] *= scale;
    }
    CHECK(ParityError(truth_scaled, est_scaled, 1.0 / k) ==
          doctest::Approx(base).epsilon(1e-9));
  }
}

TEST_CASE("parity error rejects zero truth entries and shape mismatches") {
  const std::vector<double> truth = {1.0, 0.0, 2.0};
  const std::vector<double> est = {1.0, 1.0, 2.0};
  CHECK_THROWS_AS(ParityError(truth, est, 0.5), UndefinedNormalizationError);
  const std::vector<double> shorter = {1.0, 1.0};
  CHECK_THROWS_AS(ParityError(truth, shorter, 0.5), ShapeError);
}

TEST_CASE("stratified runs dominate the global-only baseline on parity") {
  // Separated group means: per-group truth comparison punishes a single
  // global release, while per-stratum estimates track each group.
  MixtureSpec spec;
  spec.n = 4000;
  spec.k = 4;
  spec.alpha = 4.0;
  CoinpressConfig cfg = StandardConfig(0.5);
  cfg.prior = Interval{-10.0, 10.0};
  double strat_parity = 0.0;
  double plain_parity = 0.0;
  const int runs = 20;
  for (int seed = 0; seed < runs; ++seed) {
    RngHandle rng(80000 + seed);
    RngHandle data_rng = rng.Fork(0);
    const MixtureDataset data = GaussianMixture(spec, data_rng);
    std::vector<double> truth = data.group_empirical_means;
    truth.push_back(data.empirical_mean);
    std::vector<double> weights(data.sizes.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
      weights[i] = static_cast<double>(data.sizes[i]) / spec.n;
    }
    RngHandle strat_rng = rng.Fork(1);
    const MeanEstimateResult strat =
        StratCoinpress(data.sample, cfg, weights, strat_rng);
    RngHandle plain_rng = rng.Fork(2);
    const UvmEstimate plain = UvmRec(data.sample.all_values(), cfg, plain_rng);
    strat_parity += ParityError(truth, EstimateVector(strat), 0.25);
    plain_parity += ParityError(
        truth, std::vector<double>(truth.size(), plain.estimate), 0.25);
  }
  CHECK(strat_parity / runs < plain_parity / runs);
}
