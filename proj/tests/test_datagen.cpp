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
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "stratdp/datagen.hpp"
#include "stratdp/errors.hpp"
#include "stratdp/rng.hpp"

using namespace stratdp;

TEST_CASE("dirichlet draws are normalized probability vectors") {
  RngHandle rng(1);
  for (double alpha : {0.1, 1.0, 10.0}) {
    for (int k : {1, 2, 5, 20}) {
      const std::vector<double> v =
          SampleDirichlet(DirichletParams{alpha, k}, rng);
      REQUIRE(v.size() == static_cast<std::size_t>(k));
      double sum = 0.0;
      for (double x : v) {
        CHECK(x >= 0.0);
        sum += x;
      }
      CHECK(std::fabs(sum - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("dirichlet coordinate means are 1/k by symmetry") {
  RngHandle rng(2);
  double sums[3] = {0.0, 0.0, 0.0};
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const std::vector<double> v =
        SampleDirichlet(DirichletParams{10.0, 3}, rng);
    for (int j = 0; j < 3; ++j) sums[j] += v[j];
  }
  for (int j = 0; j < 3; ++j) {
    CHECK(std::fabs(sums[j] / draws - 1.0 / 3.0) < 0.01);
  }
}

TEST_CASE("small alpha concentrates mass in fewer coordinates") {
  RngHandle rng(3);
  double max_small = 0.0;
  double max_large = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const std::vector<double> a =
        SampleDirichlet(DirichletParams{0.1, 3}, rng);
    const std::vector<double> b =
        SampleDirichlet(DirichletParams{10.0, 3}, rng);
    max_small += *std::max_element(a.begin(), a.end());
    max_large += *std::max_element(b.begin(), b.end());
  }
  CHECK(max_small / draws > max_large / draws);
}

TEST_CASE("largest-remainder sizes sum to n and respect the floor") {
  {
    const std::vector<double> w = {0.5, 0.3, 0.2};
    const std::vector<std::size_t> sizes = LargestRemainderSizes(w, 10);
    CHECK(sizes == std::vector<std::size_t>{5, 3, 2});
  }
  {
    // A tiny weight still yields a nonempty group.
    const std::vector<double> w = {0.999, 1e-9, 1e-9};
    const std::vector<std::size_t> sizes = LargestRemainderSizes(w, 100);
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == 100);
    CHECK(*std::min_element(sizes.begin(), sizes.end()) >= 1);
  }
  RngHandle rng(4);
  for (int iter = 0; iter < 200; ++iter) {
    const int k = 1 + static_cast<int>(rng.UniformInt(10));
    const std::size_t n = static_cast<std::size_t>(k) + rng.UniformInt(10000);
    const std::vector<double> w =
        SampleDirichlet(DirichletParams{0.3, k}, rng);
    const std::vector<std::size_t> sizes = LargestRemainderSizes(w, n);
    CHECK(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) == n);
    CHECK(*std::min_element(sizes.begin(), sizes.end()) >= 1);
  }
}

TEST_CASE("mixture sizes always sum to n") {
  RngHandle rng(5);
  MixtureSpec spec;
  spec.n = 997;
  spec.k = 7;
  spec.alpha = 0.4;
  const MixtureDataset data = GaussianMixture(spec, rng);
  CHECK(std::accumulate(data.sizes.begin(), data.sizes.end(), std::size_t{0}) ==
        997);
  CHECK(data.sample.total_count() == 997);
}

TEST_CASE("single-group mixture is one gaussian sample") {
  RngHandle rng(6);
  MixtureSpec spec;
  spec.n = 100;
  spec.k = 1;
  const MixtureDataset data = GaussianMixture(spec, rng);
  REQUIRE(data.sample.strata.size() == 1);
  CHECK(data.sample.strata[0].values.size() == 100);
  CHECK(data.params.weights[0] == 1.0);
}

TEST_CASE("equal-sizes switch overrides the dirichlet proportions") {
  RngHandle rng(7);
  MixtureSpec spec;
  spec.n = 103;
  spec.k = 4;
  spec.equal_sizes = true;
  const MixtureDataset data = GaussianMixture(spec, rng);
  CHECK(data.sizes == std::vector<std::size_t>{26, 26, 26, 25});
}

TEST_CASE("identical spec and seed reproduce identical datasets") {
  MixtureSpec spec;
  spec.n = 500;
  spec.k = 3;
  spec.alpha = 0.8;
  RngHandle a(42, 11);
  RngHandle b(42, 11);
  const MixtureDataset da = GaussianMixture(spec, a);
  const MixtureDataset db = GaussianMixture(spec, b);
  REQUIRE(da.sizes == db.sizes);
  for (std::size_t g = 0; g < da.sample.strata.size(); ++g) {
    CHECK(da.sample.strata[g].values == db.sample.strata[g].values);
  }
}

TEST_CASE("weighted group means recombine exactly to the global mean") {
  RngHandle rng(8);
  MixtureSpec spec;
  spec.n = 5000;
  spec.k = 6;
  spec.alpha = 0.5;
  const MixtureDataset data = GaussianMixture(spec, rng);
  double weighted = 0.0;
  for (std::size_t g = 0; g < data.sizes.size(); ++g) {
    weighted += static_cast<double>(data.sizes[g]) *
                data.group_empirical_means[g];
  }
  weighted /= static_cast<double>(spec.n);
  CHECK(std::fabs(weighted - data.empirical_mean) < 1e-12);
}

TEST_CASE("group means converge to the drawn mu at the sigma/sqrt(m) rate") {
  RngHandle rng(9);
  MixtureSpec spec;
  spec.n = 20000;
  spec.k = 4;
  spec.alpha = 5.0;  // keeps every group comfortably large
  const MixtureDataset data = GaussianMixture(spec, rng);
  for (std::size_t g = 0; g < data.sizes.size(); ++g) {
    const double rate = data.params.sigma[g] /
                        std::sqrt(static_cast<double>(data.sizes[g]));
    CHECK(std::fabs(data.group_empirical_means[g] - data.params.mu[g]) <=
          4.0 * rate);
  }
}

TEST_CASE("mixture parameter validation") {
  RngHandle rng(10);
  MixtureSpec spec;
  spec.n = 3;
  spec.k = 4;
  CHECK_THROWS_AS(GaussianMixture(spec, rng), InvalidParameterError);
}

TEST_CASE("mixture csv dump round-trips through the declared format") {
  RngHandle rng(11);
  MixtureSpec spec;
  spec.n = 50;
  spec.k = 2;
  const MixtureDataset data = GaussianMixture(spec, rng);
  const std::string path = "/tmp/stratdp_test_mixture.csv";
  WriteMixtureCsv(data.sample, path);
  std::ifstream in(path);
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "group_id,value");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 50);
}
