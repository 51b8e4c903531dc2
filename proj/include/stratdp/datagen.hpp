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

#ifndef STRATDP_DATAGEN_HPP_
#define STRATDP_DATAGEN_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "stratdp/rng.hpp"
#include "stratdp/sample.hpp"
#include "stratdp/theory.hpp"

namespace stratdp {

// Length-k nonnegative vector summing to 1 (within 1e-12), generated by
// normalizing k independent Gamma(alpha, 1) draws.
std::vector<double> SampleDirichlet(const DirichletParams& params,
                                    RngHandle& rng);

// Synthetic Gaussian-mixture generator: group proportions from a symmetric
// Dirichlet, group means from N(0, mu_prior_sd^2), group sds uniform on
// [sigma_lo, sigma_hi].
struct MixtureSpec {
  std::size_t n = 10000;
  int k = 4;
  double alpha = 1.0;
  double mu_prior_sd = 1.0;
  double sigma_lo = 0.1;
  double sigma_hi = 2.0;
  // Ignore the Dirichlet proportions and size every group n/k (remainder
  // spread over the first groups).
  bool equal_sizes = false;

  void Validate() const;
};

// Group-level ground truth for one mixture draw.
struct MixtureParams {
  std::vector<double> weights;  // Dirichlet proportions
  std::vector<double> mu;
  std::vector<double> sigma;
};

struct MixtureDataset {
  StratifiedSample sample;
  MixtureParams params;
  std::vector<std::size_t> sizes;
  std::vector<double> group_empirical_means;
  double empirical_mean = 0.0;  // of the union
  double empirical_sd = 0.0;    // of the union (population convention)
  double mixture_mean = 0.0;    // size-weighted mean of the mu_i
};

MixtureParams DrawMixtureParams(const MixtureSpec& spec, RngHandle& rng);

// Samples a dataset of size n from fixed mixture parameters. Sizes come from
// largest-remainder rounding of weight * n with every group forced >= 1
// (mass borrowed from the largest group), or n/k when equal_sizes is set.
MixtureDataset SampleMixture(const MixtureParams& params, std::size_t n,
                             bool equal_sizes, RngHandle& rng);

// DrawMixtureParams + SampleMixture on one stream.
MixtureDataset GaussianMixture(const MixtureSpec& spec, RngHandle& rng);

// Largest-remainder rounding of weights * n to integers summing to n, each
// >= 1. Exposed for tests.
std::vector<std::size_t> LargestRemainderSizes(std::span<const double> weights,
                                               std::size_t n);

// Dumps a stratified sample as "group_id,value" rows for harness reuse.
void WriteMixtureCsv(const StratifiedSample& sample, const std::string& path);

}  // namespace stratdp

#endif  // STRATDP_DATAGEN_HPP_
