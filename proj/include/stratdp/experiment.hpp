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

#ifndef STRATDP_EXPERIMENT_HPP_
#define STRATDP_EXPERIMENT_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stratdp/coinpress.hpp"
#include "stratdp/datagen.hpp"
#include "stratdp/theory.hpp"

namespace stratdp {

// Exit codes shared by the experiment runners and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDataError = 3;
inline constexpr int kExitDegenerateStats = 4;

// Runs fn(0..count-1) on a worker pool. Results must be written to
// preallocated, index-addressed storage; the iteration order is unspecified
// but every index runs exactly once, so output is deterministic.
void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& fn);

// Coinpress knobs shared by the experiment subcommands; the per-run total
// rho is derived from the Laplace epsilon under the eps^2/2 chain so that
// both mechanism families run at a matched budget.
struct CoinpressKnobs {
  int steps = 4;
  std::vector<double> rho_weights;  // empty: {1, .., 1, 5}
  Interval range{-100.0, 100.0};
  double beta = 0.05;
};

CoinpressConfig BuildCoinpressConfig(const CoinpressKnobs& knobs,
                                     double total_rho, double sigma);

// Normalized estimation error used across the harness:
//   |estimate - reference| / scale,
// where scale is the data standard deviation. NaN when scale is zero
// (constant data has no defined normalization).
double NormalizedError(double estimate, double reference, double scale);

// ---------------------------------------------------------------------------
// mean-sweep: synthetic-mixture comparison of the estimator families.

struct MeanSweepConfig {
  std::vector<std::size_t> n_grid{1000, 10000, 100000};
  std::vector<int> k_grid{4};
  double alpha = 1.0;
  std::vector<double> eps_grid{1.0};
  int trials = 50;
  std::uint64_t seed = 1;
  double gamma = 0.05;
  double mu_prior_sd = 1.0;
  double sigma_lo = 0.1;
  double sigma_hi = 2.0;
  bool equal_sizes = false;
  double holdout_frac = 0.1;  // 0 disables the public-weights variant
  CoinpressKnobs coinpress;
  int threads = 0;
  std::string out_path;
  std::string svg_path;
};

int RunMeanSweep(const MeanSweepConfig& config);

// ---------------------------------------------------------------------------
// bounds: theoretical curves plus their Monte Carlo check over an alpha grid.

struct BoundsConfig {
  std::size_t n = 10000;
  std::size_t k = 9;
  std::vector<double> alpha_grid;  // empty: 0.2 .. 0.95 step 0.05
  std::size_t mc_trials = 20000;
  std::uint64_t seed = 1;
  std::string out_path;
  std::string svg_path;
};

int RunBounds(const BoundsConfig& config);

// ---------------------------------------------------------------------------
// coinpress-csv: Coinpress variants over a tabular CSV, sweeping the number
// of intersectional groups by growing the group-attribute prefix.

struct CoinpressCsvConfig {
  std::string csv_path;
  std::string schema_path;
  std::vector<std::string> group_attrs;  // prefix sweep order
  std::vector<std::string> targets;      // numeric (ordinal-coded) columns
  double eps = 1.0;
  double sigma = 0.0;  // 0: schema-derived default (domain_size / 4)
  CoinpressKnobs coinpress;
  bool range_from_schema = true;  // prior = [0, domain-1] per target
  double holdout_frac = 0.0;
  int trials = 50;
  std::uint64_t seed = 1;
  int threads = 0;
  bool strict = false;
  std::string out_path;
  std::string svg_path;
};

int RunCoinpressCsv(const CoinpressCsvConfig& config);

// ---------------------------------------------------------------------------
// fit-alpha: symmetric Dirichlet concentration for observed proportions.

struct FitAlphaConfig {
  std::vector<double> proportions;  // either given directly ...
  std::string csv_path;             // ... or derived from a partition
  std::string schema_path;
  std::vector<std::string> group_attrs;
  AlphaGrid grid;
  bool strict = false;
  std::string out_path;  // optional
};

int RunFitAlpha(const FitAlphaConfig& config);

// ---------------------------------------------------------------------------
// synth-eval: stratified vs vanilla histogram synthesizer across a privacy
// grid, reporting workload error and mean-statistic parity.

struct SynthEvalConfig {
  std::string csv_path;
  std::string schema_path;
  std::vector<std::string> group_attrs;
  std::vector<double> eps_grid{0.01, 0.05, 0.1, 0.5, 1.0, 5.0};
  int trials = 5;  // seeds per grid point
  int way = 3;     // workload marginal order
  std::size_t n_out = 0;  // 0: |D|
  std::uint64_t seed = 1;
  int threads = 0;
  bool strict = false;
  std::string out_path;
  std::string svg_path;
};

int RunSynthEval(const SynthEvalConfig& config);

// ---------------------------------------------------------------------------
// generators for harness reuse.

struct GenMixtureConfig {
  MixtureSpec spec;
  std::uint64_t seed = 1;
  std::string out_path;
};

int RunGenMixture(const GenMixtureConfig& config);

// Demo categorical dataset with group-correlated ordinal attributes, for
// exercising coinpress-csv and synth-eval without external data.
struct GenTabularConfig {
  std::size_t n = 20000;
  std::uint64_t seed = 1;
  std::string csv_path;
  std::string schema_path;
};

int RunGenTabular(const GenTabularConfig& config);

}  // namespace stratdp

#endif  // STRATDP_EXPERIMENT_HPP_
