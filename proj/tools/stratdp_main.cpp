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

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stratdp/errors.hpp"
#include "stratdp/experiment.hpp"

namespace {

using namespace stratdp;

std::uint64_t DefaultSeed() {
  // STRATDP_SEED is the fallback master seed; --seed overrides it.
  if (const char* env = std::getenv("STRATDP_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return static_cast<std::uint64_t>(v);
    std::fprintf(stderr, "warning: ignoring unparsable STRATDP_SEED '%s'\n",
                 env);
  }
  return 1;
}

void AddCoinpressFlags(CLI::App* cmd, CoinpressKnobs* knobs,
                       std::vector<double>* range) {
  cmd->add_option("--t", knobs->steps, "Coinpress iteration count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rho-schedule", knobs->rho_weights,
                  "per-step budget weights (normalized; default 1,..,1,5)")
      ->delimiter(',');
  cmd->add_option("--range", *range, "prior interval lo,hi")
      ->delimiter(',')
      ->expected(2);
  cmd->add_option("--beta", knobs->beta, "overall failure budget")
      ->check(CLI::Range(1e-12, 0.999999));
}

void ApplyRange(const std::vector<double>& range, CoinpressKnobs* knobs) {
  if (range.size() == 2) {
    knobs->range = Interval{range[0], range[1]};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stratdp: stratified differentially private estimation"};
  app.require_subcommand(1);
  const std::uint64_t seed = DefaultSeed();

  MeanSweepConfig sweep;
  sweep.seed = seed;
  std::vector<double> sweep_range;
  auto* sweep_cmd = app.add_subcommand(
      "mean-sweep", "estimator comparison on synthetic Gaussian mixtures");
  sweep_cmd->add_option("--n-grid", sweep.n_grid, "dataset sizes")
      ->delimiter(',');
  sweep_cmd->add_option("--k-grid", sweep.k_grid, "group counts")
      ->delimiter(',');
  sweep_cmd->add_option("--alpha", sweep.alpha, "Dirichlet concentration");
  sweep_cmd->add_option("--eps-grid", sweep.eps_grid, "privacy budgets")
      ->delimiter(',');
  sweep_cmd->add_option("--trials", sweep.trials, "trials per grid point")
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--seed", sweep.seed, "master seed");
  sweep_cmd->add_option("--gamma", sweep.gamma, "clip failure knob")
      ->check(CLI::Range(1e-12, 0.999999));
  sweep_cmd->add_option("--mu-prior-sd", sweep.mu_prior_sd,
                        "sd of the group-mean prior");
  sweep_cmd->add_flag("--equal-sizes", sweep.equal_sizes,
                      "size every group n/k instead of Dirichlet-proportional");
  sweep_cmd->add_option("--holdout-frac", sweep.holdout_frac,
                        "public holdout fraction (0 disables pub variant)");
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads (0=auto)");
  AddCoinpressFlags(sweep_cmd, &sweep.coinpress, &sweep_range);
  sweep_cmd->add_option("--out", sweep.out_path, "output CSV")->required();
  sweep_cmd->add_option("--svg", sweep.svg_path, "optional SVG chart");

  BoundsConfig bounds;
  bounds.seed = seed;
  auto* bounds_cmd = app.add_subcommand(
      "bounds", "theoretical bound curves with a Monte Carlo check");
  bounds_cmd->add_option("--n", bounds.n, "dataset size");
  bounds_cmd->add_option("--k", bounds.k, "group count");
  bounds_cmd->add_option("--alpha-grid", bounds.alpha_grid,
                         "alpha grid (default 0.2..0.95 step 0.05)")
      ->delimiter(',');
  bounds_cmd->add_option("--trials", bounds.mc_trials, "Monte Carlo draws");
  bounds_cmd->add_option("--seed", bounds.seed, "master seed");
  bounds_cmd->add_option("--out", bounds.out_path, "output CSV")->required();
  bounds_cmd->add_option("--svg", bounds.svg_path, "optional SVG chart");

  CoinpressCsvConfig cpcsv;
  cpcsv.seed = seed;
  std::vector<double> cpcsv_range;
  auto* cpcsv_cmd = app.add_subcommand(
      "coinpress-csv", "Coinpress variants over a tabular CSV, sweeping k");
  cpcsv_cmd->add_option("--csv", cpcsv.csv_path, "input data CSV")->required();
  cpcsv_cmd->add_option("--schema", cpcsv.schema_path, "schema file")
      ->required();
  cpcsv_cmd
      ->add_option("--group-attrs", cpcsv.group_attrs,
                   "group attributes, swept by growing prefix")
      ->delimiter(',')
      ->required();
  cpcsv_cmd->add_option("--targets", cpcsv.targets, "target columns")
      ->delimiter(',')
      ->required();
  cpcsv_cmd->add_option("--eps", cpcsv.eps, "privacy budget (rho = eps^2/2)");
  cpcsv_cmd->add_option("--sigma", cpcsv.sigma,
                        "known data sd (default: domain/4)");
  cpcsv_cmd->add_option("--holdout-frac", cpcsv.holdout_frac,
                        "public holdout fraction");
  cpcsv_cmd->add_option("--trials", cpcsv.trials, "trials per sweep point")
      ->check(CLI::PositiveNumber);
  cpcsv_cmd->add_option("--seed", cpcsv.seed, "master seed");
  cpcsv_cmd->add_option("--threads", cpcsv.threads, "worker threads (0=auto)");
  cpcsv_cmd->add_flag("--strict", cpcsv.strict,
                      "escalate degenerate-statistics warnings to exit 4");
  AddCoinpressFlags(cpcsv_cmd, &cpcsv.coinpress, &cpcsv_range);
  cpcsv_cmd->add_option("--out", cpcsv.out_path, "output CSV")->required();
  cpcsv_cmd->add_option("--svg", cpcsv.svg_path, "optional SVG chart");

  FitAlphaConfig fit;
  auto* fit_cmd = app.add_subcommand(
      "fit-alpha", "fit a symmetric Dirichlet concentration to proportions");
  fit_cmd->add_option("--proportions", fit.proportions, "proportion vector")
      ->delimiter(',');
  fit_cmd->add_option("--csv", fit.csv_path, "input data CSV");
  fit_cmd->add_option("--schema", fit.schema_path, "schema file");
  fit_cmd->add_option("--group-attrs", fit.group_attrs, "group attributes")
      ->delimiter(',');
  fit_cmd->add_option("--grid-lo", fit.grid.lo, "grid lower bound");
  fit_cmd->add_option("--grid-hi", fit.grid.hi, "grid upper bound");
  fit_cmd->add_option("--grid-steps", fit.grid.steps, "grid points per pass");
  fit_cmd->add_flag("--strict", fit.strict, "exit 4 on grid saturation");
  fit_cmd->add_option("--out", fit.out_path, "optional output CSV");

  SynthEvalConfig synth;
  synth.seed = seed;
  auto* synth_cmd = app.add_subcommand(
      "synth-eval", "stratified vs vanilla histogram synthesizer across eps");
  synth_cmd->add_option("--csv", synth.csv_path, "input data CSV")->required();
  synth_cmd->add_option("--schema", synth.schema_path, "schema file")
      ->required();
  synth_cmd
      ->add_option("--group-attrs", synth.group_attrs, "group attributes")
      ->delimiter(',')
      ->required();
  synth_cmd->add_option("--eps-grid", synth.eps_grid, "privacy budgets")
      ->delimiter(',');
  synth_cmd->add_option("--trials", synth.trials, "seeds per grid point")
      ->check(CLI::PositiveNumber);
  synth_cmd->add_option("--way", synth.way, "workload marginal order");
  synth_cmd->add_option("--n-out", synth.n_out,
                        "synthetic record count (0 = input size)");
  synth_cmd->add_option("--seed", synth.seed, "master seed");
  synth_cmd->add_option("--threads", synth.threads, "worker threads (0=auto)");
  synth_cmd->add_flag("--strict", synth.strict,
                      "escalate degenerate-statistics warnings to exit 4");
  synth_cmd->add_option("--out", synth.out_path, "output CSV")->required();
  synth_cmd->add_option("--svg", synth.svg_path, "optional SVG chart");

  GenMixtureConfig genmix;
  genmix.seed = seed;
  auto* genmix_cmd = app.add_subcommand(
      "gen-mixture", "dump one synthetic mixture as group_id,value CSV");
  genmix_cmd->add_option("--n", genmix.spec.n, "dataset size");
  genmix_cmd->add_option("--k", genmix.spec.k, "group count");
  genmix_cmd->add_option("--alpha", genmix.spec.alpha,
                         "Dirichlet concentration");
  genmix_cmd->add_option("--mu-prior-sd", genmix.spec.mu_prior_sd,
                         "sd of the group-mean prior");
  genmix_cmd->add_flag("--equal-sizes", genmix.spec.equal_sizes,
                       "size every group n/k");
  genmix_cmd->add_option("--seed", genmix.seed, "master seed");
  genmix_cmd->add_option("--out", genmix.out_path, "output CSV")->required();

  GenTabularConfig gentab;
  gentab.seed = seed;
  auto* gentab_cmd = app.add_subcommand(
      "gen-tabular", "demo categorical dataset for the tabular subcommands");
  gentab_cmd->add_option("--n", gentab.n, "record count");
  gentab_cmd->add_option("--seed", gentab.seed, "master seed");
  gentab_cmd->add_option("--out", gentab.csv_path, "output CSV")->required();
  gentab_cmd->add_option("--schema-out", gentab.schema_path,
                         "output schema file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfigError;
  }

  try {
    if (sweep_cmd->parsed()) {
      ApplyRange(sweep_range, &sweep.coinpress);
      return RunMeanSweep(sweep);
    }
    if (bounds_cmd->parsed()) {
      return RunBounds(bounds);
    }
    if (cpcsv_cmd->parsed()) {
      ApplyRange(cpcsv_range, &cpcsv.coinpress);
      cpcsv.range_from_schema = cpcsv_range.empty();
      return RunCoinpressCsv(cpcsv);
    }
    if (fit_cmd->parsed()) {
      return RunFitAlpha(fit);
    }
    if (synth_cmd->parsed()) {
      return RunSynthEval(synth);
    }
    if (genmix_cmd->parsed()) {
      return RunGenMixture(genmix);
    }
    if (gentab_cmd->parsed()) {
      return RunGenTabular(gentab);
    }
  } catch (const InvalidParameterError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const InvalidWeightsError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const ShapeError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const Error& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitDataError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDataError;
  }
  return kExitOk;
}
