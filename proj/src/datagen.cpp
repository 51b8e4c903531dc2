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

#include "stratdp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "stratdp/errors.hpp"

namespace stratdp {

std::vector<double> SampleDirichlet(const DirichletParams& params,
                                    RngHandle& rng) {
  params.Validate();
  std::vector<double> draws(params.k);
  double sum = 0.0;
  for (double& d : draws) {
    d = rng.Gamma(params.alpha);
    sum += d;
  }
  for (double& d : draws) {
    d /= sum;
  }
  return draws;
}

void MixtureSpec::Validate() const {
  if (k < 1) {
    throw InvalidParameterError("MixtureSpec: k must be >= 1");
  }
  if (n < static_cast<std::size_t>(k)) {
    throw InvalidParameterError("MixtureSpec: need n >= k");
  }
  if (!(alpha > 0.0)) {
    throw InvalidParameterError("MixtureSpec: alpha must be positive");
  }
  if (!(mu_prior_sd > 0.0)) {
    throw InvalidParameterError("MixtureSpec: mu_prior_sd must be positive");
  }
  if (!(sigma_lo > 0.0) || !(sigma_hi > sigma_lo)) {
    throw InvalidParameterError("MixtureSpec: need 0 < sigma_lo < sigma_hi");
  }
}

std::vector<std::size_t> LargestRemainderSizes(std::span<const double> weights,
                                               std::size_t n) {
  const std::size_t k = weights.size();
  if (k == 0 || n < k) {
    throw InvalidParameterError("LargestRemainderSizes: need n >= k >= 1");
  }
  std::vector<std::size_t> sizes(k);
  std::vector<double> remainders(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double quota = weights[i] * static_cast<double>(n);
    sizes[i] = static_cast<std::size_t>(std::floor(quota));
    remainders[i] = quota - std::floor(quota);
    assigned += sizes[i];
  }
  // Hand the leftover units to the largest remainders; ties break on index.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return remainders[a] > remainders[b];
  });
  for (std::size_t j = 0; assigned < n; ++j) {
    sizes[order[j % k]] += 1;
    ++assigned;
  }
  // Nonempty groups: borrow from the current largest.
  for (std::size_t i = 0; i < k; ++i) {
    while (sizes[i] < 1) {
      const std::size_t largest = static_cast<std::size_t>(
          std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
      if (sizes[largest] <= 1) {
        throw InvalidParameterError(
            "LargestRemainderSizes: cannot make every group nonempty");
      }
      sizes[largest] -= 1;
      sizes[i] += 1;
    }
  }
  return sizes;
}

MixtureParams DrawMixtureParams(const MixtureSpec& spec, RngHandle& rng) {
  spec.Validate();
  MixtureParams params;
  params.weights = SampleDirichlet(
      DirichletParams{spec.alpha, spec.k}, rng);
  params.mu.resize(spec.k);
  params.sigma.resize(spec.k);
  for (int i = 0; i < spec.k; ++i) {
    params.mu[i] = spec.mu_prior_sd * rng.Normal();
  }
  for (int i = 0; i < spec.k; ++i) {
    params.sigma[i] = spec.sigma_lo + (spec.sigma_hi - spec.sigma_lo) * rng.Uniform();
  }
  return params;
}

MixtureDataset SampleMixture(const MixtureParams& params, std::size_t n,
                             bool equal_sizes, RngHandle& rng) {
  const std::size_t k = params.weights.size();
  if (k == 0 || params.mu.size() != k || params.sigma.size() != k) {
    throw ShapeError("SampleMixture: inconsistent mixture parameters");
  }
  MixtureDataset data;
  data.params = params;
  if (equal_sizes) {
    data.sizes.assign(k, n / k);
    for (std::size_t i = 0; i < n % k; ++i) data.sizes[i] += 1;
    if (n < k) {
      throw InvalidParameterError("SampleMixture: need n >= k");
    }
  } else {
    data.sizes = LargestRemainderSizes(params.weights, n);
  }

  data.sample.strata.resize(k);
  data.group_empirical_means.resize(k);
  double total_sum = 0.0;
  double total_sq = 0.0;
  double mix_mean = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    Stratum& stratum = data.sample.strata[i];
    char id[32];
    std::snprintf(id, sizeof(id), "g%zu", i);
    stratum.id = id;
    stratum.values.resize(data.sizes[i]);
    double group_sum = 0.0;
    for (double& v : stratum.values) {
      v = params.mu[i] + params.sigma[i] * rng.Normal();
      group_sum += v;
      total_sq += v * v;
    }
    total_sum += group_sum;
    data.group_empirical_means[i] =
        group_sum / static_cast<double>(data.sizes[i]);
    mix_mean += static_cast<double>(data.sizes[i]) * params.mu[i];
  }
  const double nd = static_cast<double>(n);
  data.empirical_mean = total_sum / nd;
  const double var = total_sq / nd - data.empirical_mean * data.empirical_mean;
  data.empirical_sd = std::sqrt(std::max(0.0, var));
  data.mixture_mean = mix_mean / nd;
  return data;
}

MixtureDataset GaussianMixture(const MixtureSpec& spec, RngHandle& rng) {
  const MixtureParams params = DrawMixtureParams(spec, rng);
  return SampleMixture(params, spec.n, spec.equal_sizes, rng);
}

void WriteMixtureCsv(const StratifiedSample& sample, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("WriteMixtureCsv: cannot open '" + path + "' for writing");
  }
  out << "group_id,value\n";
  char buf[64];
  for (const Stratum& stratum : sample.strata) {
    for (double v : stratum.values) {
      std::snprintf(buf, sizeof(buf), "%.12g", v);
      out << stratum.id << ',' << buf << '\n';
    }
  }
  if (!out.good()) {
    throw IoError("WriteMixtureCsv: write failed for '" + path + "'");
  }
}

}  // namespace stratdp
