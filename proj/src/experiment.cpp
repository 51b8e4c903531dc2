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

#include "stratdp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "stratdp/csv.hpp"
#include "stratdp/errors.hpp"
#include "stratdp/mean_estimation.hpp"
#include "stratdp/svg.hpp"
#include "stratdp/tabular.hpp"

namespace stratdp {
namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

struct Agg {
  double mean = kNan;
  double sd = kNan;
  std::size_t valid = 0;
};

// Mean and sample sd over the finite entries.
Agg Aggregate(const std::vector<double>& xs) {
  Agg agg;
  double sum = 0.0;
  for (double x : xs) {
    if (std::isfinite(x)) {
      sum += x;
      ++agg.valid;
    }
  }
  if (agg.valid == 0) return agg;
  agg.mean = sum / static_cast<double>(agg.valid);
  if (agg.valid == 1) {
    agg.sd = 0.0;
    return agg;
  }
  double sq = 0.0;
  for (double x : xs) {
    if (std::isfinite(x)) sq += (x - agg.mean) * (x - agg.mean);
  }
  agg.sd = std::sqrt(sq / static_cast<double>(agg.valid - 1));
  return agg;
}

template <typename T>
std::string JoinNumbers(const std::vector<T>& values, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    if constexpr (std::is_floating_point_v<T>) {
      out += FormatDouble(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

std::string JoinStrings(const std::vector<std::string>& values,
                        const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i];
  }
  return out;
}

std::string KnobsToString(const CoinpressKnobs& knobs) {
  std::string rho = knobs.rho_weights.empty() ? "default"
                                              : JoinNumbers(knobs.rho_weights);
  return "t=" + std::to_string(knobs.steps) + " rho-weights=" + rho +
         " range=" + FormatDouble(knobs.range.lo) + "," +
         FormatDouble(knobs.range.hi) + " beta=" + FormatDouble(knobs.beta);
}

double ParityOrNan(const std::vector<double>& truth,
                   const std::vector<double>& estimate, double omega,
                   std::atomic<std::size_t>& undefined_count) {
  try {
    return ParityError(truth, estimate, omega);
  } catch (const UndefinedNormalizationError&) {
    ++undefined_count;
    return kNan;
  }
}

}  // namespace

void ParallelFor(std::size_t count, int threads,
                 const std::function<void(std::size_t)>& fn) {
  unsigned workers = threads > 0
                         ? static_cast<unsigned>(threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

CoinpressConfig BuildCoinpressConfig(const CoinpressKnobs& knobs,
                                     double total_rho, double sigma) {
  CoinpressConfig cfg;
  cfg.prior = knobs.range;
  cfg.sigma = sigma;
  cfg.steps = knobs.steps;
  cfg.beta = knobs.beta;
  if (knobs.rho_weights.empty()) {
    cfg.rho_schedule = MakeRhoSchedule(knobs.steps, total_rho);
  } else {
    if (knobs.rho_weights.size() != static_cast<std::size_t>(knobs.steps)) {
      throw InvalidParameterError(
          "rho schedule length must equal the step count");
    }
    double sum = 0.0;
    for (double w : knobs.rho_weights) {
      if (!(w > 0.0)) {
        throw InvalidParameterError("rho schedule weights must be positive");
      }
      sum += w;
    }
    cfg.rho_schedule.reserve(knobs.rho_weights.size());
    for (double w : knobs.rho_weights) {
      cfg.rho_schedule.push_back(total_rho * w / sum);
    }
  }
  cfg.Validate();
  return cfg;
}

double NormalizedError(double estimate, double reference, double scale) {
  if (!(scale > 0.0)) return kNan;
  return std::fabs(estimate - reference) / scale;
}

// ---------------------------------------------------------------------------
// mean-sweep

namespace {

constexpr const char* kMeanSweepMethods[] = {
    "laplace", "strat_laplace", "coinpress", "strat_coinpress",
    "pub_strat_coinpress"};
constexpr std::size_t kNumMethods = 5;

struct MeanSweepTrial {
  double norm_err[kNumMethods];
  double parity[kNumMethods];
};

}  // namespace

int RunMeanSweep(const MeanSweepConfig& config) {
  if (config.trials < 1 || config.n_grid.empty() || config.k_grid.empty() ||
      config.eps_grid.empty()) {
    throw InvalidParameterError("mean-sweep: grids and trials must be nonempty");
  }
  CsvWriter csv(config.out_path);  // probe writability before computing
  csv.Comment("tool", std::string("stratdp mean-sweep v") + kVersion);
  csv.Timestamp();
  csv.Comment("seed", std::to_string(config.seed));
  csv.Comment(
      "config",
      "n-grid=" + JoinNumbers(config.n_grid) +
          " k-grid=" + JoinNumbers(config.k_grid) +
          " alpha=" + FormatDouble(config.alpha) +
          " eps-grid=" + JoinNumbers(config.eps_grid) +
          " trials=" + std::to_string(config.trials) +
          " gamma=" + FormatDouble(config.gamma) +
          " mu-prior-sd=" + FormatDouble(config.mu_prior_sd) +
          " sigma-range=" + FormatDouble(config.sigma_lo) + "," +
          FormatDouble(config.sigma_hi) +
          " equal-sizes=" + std::to_string(config.equal_sizes ? 1 : 0) +
          " holdout-frac=" + FormatDouble(config.holdout_frac) + " " +
          KnobsToString(config.coinpress));
  csv.Comment("privacy",
              "laplace at eps; coinpress at rho = eps^2/2 (matched budgets)");
  csv.Comment("metric",
              "norm_err = |estimate - empirical mean| / empirical sd; parity "
              "truth = empirical group means, omega = 1/k");
  const std::vector<std::string> columns = {
      "n",           "k",           "alpha",       "eps",
      "method",      "trials",      "valid_trials", "norm_err_mean",
      "norm_err_sd", "parity_mean", "parity_sd"};
  csv.Header(columns);

  const bool with_pub = config.holdout_frac > 0.0;
  const std::size_t method_count = with_pub ? kNumMethods : kNumMethods - 1;
  const double clip_r =
      std::max(std::fabs(config.coinpress.range.lo),
               std::fabs(config.coinpress.range.hi));
  const ClipConfig clip_cfg{clip_r, config.gamma};

  std::atomic<std::size_t> undefined_parity{0};
  std::vector<SvgSeries> svg_series(method_count);
  for (std::size_t m = 0; m < method_count; ++m) {
    svg_series[m].label = kMeanSweepMethods[m];
  }

  const RngHandle master(config.seed);
  std::size_t grid_index = 0;
  for (std::size_t n : config.n_grid) {
    for (int k : config.k_grid) {
      for (double eps : config.eps_grid) {
        MixtureSpec spec;
        spec.n = n;
        spec.k = k;
        spec.alpha = config.alpha;
        spec.mu_prior_sd = config.mu_prior_sd;
        spec.sigma_lo = config.sigma_lo;
        spec.sigma_hi = config.sigma_hi;
        spec.equal_sizes = config.equal_sizes;
        spec.Validate();
        if (!(eps > 0.0)) {
          throw InvalidParameterError("mean-sweep: eps grid must be positive");
        }
        const RngHandle grid_rng = master.Fork(grid_index);
        std::vector<MeanSweepTrial> results(config.trials);

        ParallelFor(config.trials, config.threads, [&](std::size_t trial) {
          const RngHandle trial_rng = grid_rng.Fork(trial);
          RngHandle data_rng = trial_rng.Fork(0);
          const MixtureDataset data = GaussianMixture(spec, data_rng);
          const std::vector<std::size_t> sizes = data.sizes;
          const std::vector<double> all_values = data.sample.all_values();
          std::vector<double> weights(sizes.size());
          for (std::size_t i = 0; i < sizes.size(); ++i) {
            weights[i] = static_cast<double>(sizes[i]) / static_cast<double>(n);
          }
          std::vector<double> truth = data.group_empirical_means;
          truth.push_back(data.empirical_mean);
          const double omega = 1.0 / static_cast<double>(k);
          MeanSweepTrial& out = results[trial];

          // Laplace family.
          RngHandle lap_rng = trial_rng.Fork(2);
          RngHandle fresh_rng = lap_rng.Fork(0);
          const double fresh =
              PrivateMean(all_values, clip_cfg, eps, fresh_rng);
          const GroupMeans gm =
              GroupPrivateMeans(data.sample, clip_cfg, eps, lap_rng);
          const double strat_lap = StratifiedMean(gm.estimates, sizes);

          // Coinpress family at the matched zCDP budget.
          const CoinpressConfig cp_cfg =
              BuildCoinpressConfig(config.coinpress, eps * eps / 2.0, 1.0);
          RngHandle cp_rng = trial_rng.Fork(3);
          RngHandle cp_plain_rng = cp_rng.Fork(0);
          const UvmEstimate cp = UvmRec(all_values, cp_cfg, cp_plain_rng);
          const MeanEstimateResult sc =
              StratCoinpress(data.sample, cp_cfg, weights, cp_rng);

          out.norm_err[0] =
              NormalizedError(fresh, data.empirical_mean, data.empirical_sd);
          out.norm_err[1] = NormalizedError(strat_lap, data.empirical_mean,
                                            data.empirical_sd);
          out.norm_err[2] = NormalizedError(cp.estimate, data.empirical_mean,
                                            data.empirical_sd);
          out.norm_err[3] =
              NormalizedError(sc.global, data.empirical_mean, data.empirical_sd);
          out.parity[0] =
              ParityOrNan(truth, std::vector<double>(truth.size(), fresh),
                          omega, undefined_parity);
          std::vector<double> strat_lap_vec = gm.estimates;
          strat_lap_vec.push_back(strat_lap);
          out.parity[1] =
              ParityOrNan(truth, strat_lap_vec, omega, undefined_parity);
          out.parity[2] = ParityOrNan(
              truth, std::vector<double>(truth.size(), cp.estimate), omega,
              undefined_parity);
          std::vector<double> sc_vec;
          for (const GroupEstimate& g : sc.per_group) sc_vec.push_back(g.estimate);
          sc_vec.push_back(sc.global);
          out.parity[3] = ParityOrNan(truth, sc_vec, omega, undefined_parity);

          if (with_pub) {
            RngHandle holdout_rng = trial_rng.Fork(1);
            const std::size_t holdout_n = std::max<std::size_t>(
                sizes.size(),
                static_cast<std::size_t>(
                    std::llround(config.holdout_frac * static_cast<double>(n))));
            const MixtureDataset holdout = SampleMixture(
                data.params, holdout_n, config.equal_sizes, holdout_rng);
            // Same stream identity as StratCoinpress: the public-weights
            // variant differs only through its weight vector.
            const MeanEstimateResult pub =
                PubStratCoinpress(data.sample, cp_cfg, holdout.sample, cp_rng);
            out.norm_err[4] = NormalizedError(pub.global, data.empirical_mean,
                                              data.empirical_sd);
            std::vector<double> pub_vec;
            for (const GroupEstimate& g : pub.per_group) {
              pub_vec.push_back(g.estimate);
            }
            pub_vec.push_back(pub.global);
            out.parity[4] = ParityOrNan(truth, pub_vec, omega, undefined_parity);
          }
        });

        for (std::size_t m = 0; m < method_count; ++m) {
          std::vector<double> errs;
          std::vector<double> parities;
          errs.reserve(results.size());
          for (const MeanSweepTrial& r : results) {
            errs.push_back(r.norm_err[m]);
            parities.push_back(r.parity[m]);
          }
          const Agg err_agg = Aggregate(errs);
          const Agg parity_agg = Aggregate(parities);
          csv.BeginRow();
          csv.Field(n);
          csv.Field(static_cast<std::size_t>(k));
          csv.Field(config.alpha);
          csv.Field(eps);
          csv.Field(std::string(kMeanSweepMethods[m]));
          csv.Field(static_cast<std::size_t>(config.trials));
          csv.Field(err_agg.valid);
          csv.Field(err_agg.mean);
          csv.Field(err_agg.sd);
          csv.Field(parity_agg.mean);
          csv.Field(parity_agg.sd);
          csv.EndRow();
          if (k == config.k_grid.front() && eps == config.eps_grid.front()) {
            svg_series[m].points.emplace_back(static_cast<double>(n),
                                              err_agg.mean);
          }
        }
        ++grid_index;
      }
    }
  }
  csv.Close();
  if (!config.svg_path.empty()) {
    SvgChartOptions options;
    options.title = "Mean estimation error vs n";
    options.x_label = "n";
    options.y_label = "normalized error";
    options.log_x = true;
    options.log_y = true;
    WriteLineChart(config.svg_path, options, svg_series);
  }
  if (undefined_parity.load() > 0) {
    std::fprintf(stderr,
                 "mean-sweep: %zu parity terms skipped (zero truth mean)\n",
                 undefined_parity.load());
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bounds

int RunBounds(const BoundsConfig& config) {
  std::vector<double> alphas = config.alpha_grid;
  if (alphas.empty()) {
    for (int i = 0; i < 16; ++i) alphas.push_back(0.2 + 0.05 * i);
  }
  if (config.k < 1 || config.n < config.k || config.mc_trials < 2) {
    throw InvalidParameterError("bounds: need n >= k >= 1 and mc_trials >= 2");
  }
  CsvWriter csv(config.out_path);
  csv.Comment("tool", std::string("stratdp bounds v") + kVersion);
  csv.Timestamp();
  csv.Comment("seed", std::to_string(config.seed));
  csv.Comment("config", "n=" + std::to_string(config.n) +
                            " k=" + std::to_string(config.k) +
                            " alpha-grid=" + JoinNumbers(alphas) +
                            " mc-trials=" + std::to_string(config.mc_trials));
  const std::vector<std::string> columns = {
      "alpha",      "dirichlet_bound", "max_sum_log",
      "sparse_ref", "mc_mean",         "mc_se"};
  csv.Header(columns);

  SvgSeries bound_series{"dirichlet_bound", {}};
  SvgSeries max_series{"max_sum_log", {}};
  SvgSeries sparse_series{"sparse_ref", {}};
  SvgSeries mc_series{"mc_mean", {}};

  const RngHandle master(config.seed);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const double alpha = alphas[i];
    const BoundReport report = MakeBoundReport(config.n, config.k, alpha);
    RngHandle rng = master.Fork(i);
    const McEstimate mc = ExpectedSumLogSizesMc(
        DirichletParams{alpha, static_cast<int>(config.k)}, config.n,
        config.mc_trials, rng);
    const double se = mc.sd / std::sqrt(static_cast<double>(config.mc_trials));
    csv.BeginRow();
    csv.Field(alpha);
    csv.Field(*report.dirichlet_bound);
    csv.Field(report.max_sum_log);
    csv.Field(report.sparse_ref);
    csv.Field(mc.mean);
    csv.Field(se);
    csv.EndRow();
    bound_series.points.emplace_back(alpha, *report.dirichlet_bound);
    max_series.points.emplace_back(alpha, report.max_sum_log);
    sparse_series.points.emplace_back(alpha, report.sparse_ref);
    mc_series.points.emplace_back(alpha, mc.mean);
  }
  csv.Close();
  if (!config.svg_path.empty()) {
    SvgChartOptions options;
    options.title = "Expected sum of log group sizes vs alpha";
    options.x_label = "alpha";
    options.y_label = "sum log |G_i|";
    const SvgSeries series[] = {bound_series, max_series, sparse_series,
                                mc_series};
    WriteLineChart(config.svg_path, options, series);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// coinpress-csv

namespace {

StratifiedSample BuildTargetSample(const TabularDataset& dataset,
                                   const TabularPartition& partition,
                                   std::size_t target_attr,
                                   const std::vector<std::size_t>* keep_rows) {
  StratifiedSample sample;
  for (const TabularGroup& group : partition.groups) {
    Stratum stratum;
    stratum.id = group.id;
    stratum.values.reserve(group.rows.size());
    for (std::size_t r : group.rows) {
      stratum.values.push_back(static_cast<double>(dataset.value(r, target_attr)));
    }
    if (!stratum.values.empty()) {
      sample.strata.push_back(std::move(stratum));
    }
  }
  (void)keep_rows;
  return sample;
}

}  // namespace

int RunCoinpressCsv(const CoinpressCsvConfig& config) {
  if (config.group_attrs.empty() || config.targets.empty()) {
    throw InvalidParameterError(
        "coinpress-csv: need group attributes and target columns");
  }
  if (!(config.eps > 0.0) || config.trials < 1) {
    throw InvalidParameterError("coinpress-csv: need eps > 0 and trials >= 1");
  }
  const std::vector<Attribute> schema = LoadSchema(config.schema_path);
  const TabularDataset dataset = LoadCsv(config.csv_path, schema);
  if (dataset.record_count() == 0) {
    throw DataError("coinpress-csv: dataset has no records");
  }

  CsvWriter csv(config.out_path);
  csv.Comment("tool", std::string("stratdp coinpress-csv v") + kVersion);
  csv.Timestamp();
  csv.Comment("seed", std::to_string(config.seed));
  csv.Comment(
      "config",
      "csv=" + config.csv_path + " schema=" + config.schema_path +
          " group-attrs=" + JoinStrings(config.group_attrs, ",") +
          " targets=" + JoinStrings(config.targets, ",") +
          " eps=" + FormatDouble(config.eps) +
          " holdout-frac=" + FormatDouble(config.holdout_frac) +
          " trials=" + std::to_string(config.trials) + " " +
          KnobsToString(config.coinpress));
  csv.Comment("privacy", "coinpress at rho = eps^2/2 = " +
                             FormatDouble(config.eps * config.eps / 2.0));
  const std::vector<std::string> columns = {
      "attrs",        "k",           "target",       "method",
      "trials",       "valid_trials", "norm_err_mean", "norm_err_sd",
      "parity_mean",  "parity_sd"};
  csv.Header(columns);

  const RngHandle master(config.seed);
  std::size_t warnings = 0;
  std::atomic<std::size_t> undefined_parity{0};

  // Fixed public holdout: a seeded sample of row indices, disjoint from the
  // private rows by construction.
  std::vector<std::size_t> private_rows(dataset.record_count());
  std::iota(private_rows.begin(), private_rows.end(), 0);
  std::vector<std::size_t> holdout_rows;
  if (config.holdout_frac > 0.0) {
    RngHandle split_rng = master.Fork(0);
    std::vector<std::size_t> order = private_rows;
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[split_rng.UniformInt(i)]);
    }
    const std::size_t holdout_n = static_cast<std::size_t>(
        std::llround(config.holdout_frac *
                     static_cast<double>(dataset.record_count())));
    holdout_rows.assign(order.begin(), order.begin() + holdout_n);
    private_rows.assign(order.begin() + holdout_n, order.end());
    std::sort(holdout_rows.begin(), holdout_rows.end());
    std::sort(private_rows.begin(), private_rows.end());
  } else {
    std::fprintf(stderr,
                 "coinpress-csv: holdout fraction is 0, "
                 "pub_strat_coinpress column omitted\n");
  }

  // Private / holdout views as standalone datasets.
  TabularDataset private_data(schema);
  std::vector<int> record(schema.size());
  for (std::size_t r : private_rows) {
    for (std::size_t a = 0; a < schema.size(); ++a) record[a] = dataset.value(r, a);
    private_data.AddRecord(record);
  }
  TabularDataset holdout_data(schema);
  for (std::size_t r : holdout_rows) {
    for (std::size_t a = 0; a < schema.size(); ++a) record[a] = dataset.value(r, a);
    holdout_data.AddRecord(record);
  }

  std::size_t sweep_index = 0;
  for (std::size_t prefix = 1; prefix <= config.group_attrs.size(); ++prefix) {
    const std::vector<std::string> attrs(config.group_attrs.begin(),
                                         config.group_attrs.begin() + prefix);
    const TabularPartition partition =
        PartitionByAttributes(private_data, attrs);
    const std::size_t k = partition.groups.size();
    const std::string attrs_label = JoinStrings(attrs, "+");
    const double omega = 1.0 / static_cast<double>(k);

    for (const std::string& target : config.targets) {
      const std::size_t target_attr = private_data.AttributeIndex(target);
      const StratifiedSample sample =
          BuildTargetSample(private_data, partition, target_attr, nullptr);
      const std::vector<std::size_t> sizes = sample.group_sizes();
      const std::size_t n = sample.total_count();
      std::vector<double> weights(sizes.size());
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        weights[i] = static_cast<double>(sizes[i]) / static_cast<double>(n);
      }

      std::vector<double> truth;
      for (const Stratum& s : sample.strata) {
        double sum = 0.0;
        for (double v : s.values) sum += v;
        truth.push_back(sum / static_cast<double>(s.values.size()));
      }
      double global_sum = 0.0;
      double global_sq = 0.0;
      for (const Stratum& s : sample.strata) {
        for (double v : s.values) {
          global_sum += v;
          global_sq += v * v;
        }
      }
      const double global_mean = global_sum / static_cast<double>(n);
      const double variance =
          global_sq / static_cast<double>(n) - global_mean * global_mean;
      const double target_sd = std::sqrt(std::max(0.0, variance));
      truth.push_back(global_mean);
      if (!(target_sd > 0.0)) {
        std::fprintf(stderr,
                     "coinpress-csv: target '%s' is constant, normalized "
                     "error undefined\n",
                     target.c_str());
        ++warnings;
      }

      // Public prior from the declared domain, not from the data.
      CoinpressKnobs knobs = config.coinpress;
      if (config.range_from_schema) {
        knobs.range = Interval{
            0.0, static_cast<double>(schema[target_attr].domain_size - 1)};
        if (!(knobs.range.lo < knobs.range.hi)) {
          knobs.range = Interval{-1.0, 1.0};
        }
      }
      const double sigma =
          config.sigma > 0.0
              ? config.sigma
              : std::max(0.25, static_cast<double>(
                                   schema[target_attr].domain_size) /
                                   4.0);
      const CoinpressConfig cp_cfg =
          BuildCoinpressConfig(knobs, config.eps * config.eps / 2.0, sigma);

      const bool with_pub = config.holdout_frac > 0.0;
      StratifiedSample holdout_sample;
      if (with_pub) {
        const TabularPartition holdout_partition =
            PartitionByAttributes(holdout_data, attrs);
        holdout_sample = BuildTargetSample(holdout_data, holdout_partition,
                                           target_attr, nullptr);
      }

      const std::size_t method_count = with_pub ? 3 : 2;
      std::vector<std::vector<double>> errs(method_count);
      std::vector<std::vector<double>> parities(method_count);
      for (auto& v : errs) v.assign(config.trials, kNan);
      for (auto& v : parities) v.assign(config.trials, kNan);
      std::atomic<std::size_t> pub_failures{0};

      const RngHandle point_rng = master.Fork(1 + sweep_index);
      ParallelFor(config.trials, config.threads, [&](std::size_t trial) {
        const RngHandle trial_rng = point_rng.Fork(trial);
        RngHandle plain_rng = trial_rng.Fork(0);
        const std::vector<double> all_values = sample.all_values();
        const UvmEstimate plain = UvmRec(all_values, cp_cfg, plain_rng);
        RngHandle strat_rng = trial_rng;
        const MeanEstimateResult strat =
            StratCoinpress(sample, cp_cfg, weights, strat_rng);

        errs[0][trial] = NormalizedError(plain.estimate, global_mean, target_sd);
        errs[1][trial] = NormalizedError(strat.global, global_mean, target_sd);
        parities[0][trial] =
            ParityOrNan(truth, std::vector<double>(truth.size(), plain.estimate),
                        omega, undefined_parity);
        std::vector<double> strat_vec;
        for (const GroupEstimate& g : strat.per_group) {
          strat_vec.push_back(g.estimate);
        }
        strat_vec.push_back(strat.global);
        parities[1][trial] = ParityOrNan(truth, strat_vec, omega, undefined_parity);

        if (with_pub) {
          try {
            RngHandle pub_rng = trial_rng;
            const MeanEstimateResult pub =
                PubStratCoinpress(sample, cp_cfg, holdout_sample, pub_rng);
            errs[2][trial] =
                NormalizedError(pub.global, global_mean, target_sd);
            std::vector<double> pub_vec;
            for (const GroupEstimate& g : pub.per_group) {
              pub_vec.push_back(g.estimate);
            }
            pub_vec.push_back(pub.global);
            parities[2][trial] =
                ParityOrNan(truth, pub_vec, omega, undefined_parity);
          } catch (const InvalidWeightsError&) {
            ++pub_failures;
          } catch (const EmptyDataError&) {
            ++pub_failures;
          }
        }
      });
      if (pub_failures.load() > 0) {
        std::fprintf(stderr,
                     "coinpress-csv: %zu pub_strat trials failed for %s/%s "
                     "(holdout missing groups)\n",
                     pub_failures.load(), attrs_label.c_str(), target.c_str());
        ++warnings;
      }

      static constexpr const char* kMethods[] = {"coinpress", "strat_coinpress",
                                                 "pub_strat_coinpress"};
      for (std::size_t m = 0; m < method_count; ++m) {
        const Agg err_agg = Aggregate(errs[m]);
        const Agg parity_agg = Aggregate(parities[m]);
        csv.BeginRow();
        csv.Field(attrs_label);
        csv.Field(k);
        csv.Field(target);
        csv.Field(std::string(kMethods[m]));
        csv.Field(static_cast<std::size_t>(config.trials));
        csv.Field(err_agg.valid);
        csv.Field(err_agg.mean);
        csv.Field(err_agg.sd);
        csv.Field(parity_agg.mean);
        csv.Field(parity_agg.sd);
        csv.EndRow();
      }
      ++sweep_index;
    }
  }
  csv.Close();
  warnings += undefined_parity.load();
  if (undefined_parity.load() > 0) {
    std::fprintf(stderr,
                 "coinpress-csv: %zu parity terms skipped (zero truth mean)\n",
                 undefined_parity.load());
  }
  return (config.strict && warnings > 0) ? kExitDegenerateStats : kExitOk;
}

// ---------------------------------------------------------------------------
// fit-alpha

int RunFitAlpha(const FitAlphaConfig& config) {
  std::vector<double> proportions = config.proportions;
  if (proportions.empty()) {
    if (config.csv_path.empty() || config.schema_path.empty() ||
        config.group_attrs.empty()) {
      throw InvalidParameterError(
          "fit-alpha: need --proportions or csv+schema+group attributes");
    }
    const std::vector<Attribute> schema = LoadSchema(config.schema_path);
    const TabularDataset dataset = LoadCsv(config.csv_path, schema);
    const TabularPartition partition =
        PartitionByAttributes(dataset, config.group_attrs);
    const double n = static_cast<double>(dataset.record_count());
    for (const TabularGroup& group : partition.groups) {
      proportions.push_back(static_cast<double>(group.rows.size()) / n);
    }
  }
  const AlphaFit fit = FitDirichletAlpha(proportions, config.grid);
  std::printf("alpha = %s\n", FormatDouble(fit.alpha).c_str());
  std::printf("proportions = %s\n", JoinNumbers(proportions).c_str());
  bool saturated = false;
  if (fit.at_upper_bound) {
    std::fprintf(stderr,
                 "fit-alpha: saturated at the grid upper bound %s (near-"
                 "uniform proportions)\n",
                 FormatDouble(config.grid.hi).c_str());
    saturated = true;
  }
  if (fit.at_lower_bound) {
    std::fprintf(stderr,
                 "fit-alpha: saturated at the grid lower bound %s (extreme "
                 "sparsity)\n",
                 FormatDouble(config.grid.lo).c_str());
    saturated = true;
  }
  if (!config.out_path.empty()) {
    CsvWriter csv(config.out_path);
    csv.Comment("tool", std::string("stratdp fit-alpha v") + kVersion);
    csv.Timestamp();
    csv.Comment("config", "grid=" + FormatDouble(config.grid.lo) + "," +
                              FormatDouble(config.grid.hi) + "," +
                              std::to_string(config.grid.steps));
    const std::vector<std::string> columns = {"alpha", "at_lower_bound",
                                              "at_upper_bound", "proportions"};
    csv.Header(columns);
    csv.BeginRow();
    csv.Field(fit.alpha);
    csv.Field(static_cast<std::size_t>(fit.at_lower_bound ? 1 : 0));
    csv.Field(static_cast<std::size_t>(fit.at_upper_bound ? 1 : 0));
    csv.Field(JoinNumbers(proportions, '|'));
    csv.EndRow();
    csv.Close();
  }
  return (config.strict && saturated) ? kExitDegenerateStats : kExitOk;
}

// ---------------------------------------------------------------------------
// synth-eval

int RunSynthEval(const SynthEvalConfig& config) {
  if (config.trials < 1 || config.eps_grid.empty()) {
    throw InvalidParameterError("synth-eval: need trials >= 1 and an eps grid");
  }
  const std::vector<Attribute> schema = LoadSchema(config.schema_path);
  const TabularDataset dataset = LoadCsv(config.csv_path, schema);
  if (dataset.record_count() == 0) {
    throw DataError("synth-eval: dataset has no records");
  }
  const std::size_t n_out =
      config.n_out > 0 ? config.n_out : dataset.record_count();
  const Workload workload = AllKWayWorkload(
      schema, std::min<int>(config.way, static_cast<int>(schema.size())));

  const TabularPartition partition =
      PartitionByAttributes(dataset, config.group_attrs);
  std::vector<std::pair<std::string, double>> weights;
  for (const TabularGroup& group : partition.groups) {
    weights.emplace_back(group.id,
                         static_cast<double>(group.rows.size()) /
                             static_cast<double>(dataset.record_count()));
  }
  const std::vector<std::pair<std::string, double>> vanilla_weights = {
      {"all", 1.0}};
  const std::vector<std::string> no_attrs;

  CsvWriter csv(config.out_path);
  csv.Comment("tool", std::string("stratdp synth-eval v") + kVersion);
  csv.Timestamp();
  csv.Comment("seed", std::to_string(config.seed));
  csv.Comment("config",
              "csv=" + config.csv_path + " schema=" + config.schema_path +
                  " group-attrs=" + JoinStrings(config.group_attrs, ",") +
                  " eps-grid=" + JoinNumbers(config.eps_grid) +
                  " trials=" + std::to_string(config.trials) +
                  " way=" + std::to_string(config.way) +
                  " n-out=" + std::to_string(n_out));
  const std::vector<std::string> columns = {
      "eps",    "method",        "trials",          "valid_trials",
      "workload_err_mean", "workload_err_sd", "parity_mean", "parity_sd"};
  csv.Header(columns);

  SvgSeries strat_series{"stratified", {}};
  SvgSeries vanilla_series{"vanilla", {}};
  std::atomic<std::size_t> degenerate{0};
  std::atomic<std::size_t> undefined_parity{0};
  const RngHandle master(config.seed);

  for (std::size_t e = 0; e < config.eps_grid.size(); ++e) {
    const double eps = config.eps_grid[e];
    if (!(eps > 0.0)) {
      throw InvalidParameterError("synth-eval: eps grid must be positive");
    }
    std::vector<double> strat_werr(config.trials, kNan);
    std::vector<double> strat_parity(config.trials, kNan);
    std::vector<double> vanilla_werr(config.trials, kNan);
    std::vector<double> vanilla_parity(config.trials, kNan);
    const RngHandle eps_rng = master.Fork(e);
    ParallelFor(config.trials, config.threads, [&](std::size_t trial) {
      const RngHandle trial_rng = eps_rng.Fork(trial);
      try {
        RngHandle rng = trial_rng.Fork(0);
        const SynthResult strat = StratHistogramSynth(
            dataset, config.group_attrs, eps, weights, n_out, rng);
        strat_werr[trial] = WorkloadError(dataset, strat.data, workload);
        strat_parity[trial] =
            ParityErrorByAttribute(dataset, strat.data, config.group_attrs)
                .aggregate;
      } catch (const DegenerateDistributionError&) {
        ++degenerate;
      } catch (const UndefinedNormalizationError&) {
        ++undefined_parity;
      }
      try {
        RngHandle rng = trial_rng.Fork(1);
        const SynthResult vanilla = StratHistogramSynth(
            dataset, no_attrs, eps, vanilla_weights, n_out, rng);
        vanilla_werr[trial] = WorkloadError(dataset, vanilla.data, workload);
        vanilla_parity[trial] =
            ParityErrorByAttribute(dataset, vanilla.data, config.group_attrs)
                .aggregate;
      } catch (const DegenerateDistributionError&) {
        ++degenerate;
      } catch (const UndefinedNormalizationError&) {
        ++undefined_parity;
      }
    });

    const Agg sw = Aggregate(strat_werr);
    const Agg sp = Aggregate(strat_parity);
    const Agg vw = Aggregate(vanilla_werr);
    const Agg vp = Aggregate(vanilla_parity);
    csv.BeginRow();
    csv.Field(eps);
    csv.Field(std::string("stratified"));
    csv.Field(static_cast<std::size_t>(config.trials));
    csv.Field(sw.valid);
    csv.Field(sw.mean);
    csv.Field(sw.sd);
    csv.Field(sp.mean);
    csv.Field(sp.sd);
    csv.EndRow();
    csv.BeginRow();
    csv.Field(eps);
    csv.Field(std::string("vanilla"));
    csv.Field(static_cast<std::size_t>(config.trials));
    csv.Field(vw.valid);
    csv.Field(vw.mean);
    csv.Field(vw.sd);
    csv.Field(vp.mean);
    csv.Field(vp.sd);
    csv.EndRow();
    strat_series.points.emplace_back(eps, sw.mean);
    vanilla_series.points.emplace_back(eps, vw.mean);
  }
  csv.Close();
  if (!config.svg_path.empty()) {
    SvgChartOptions options;
    options.title = "Workload error vs eps";
    options.x_label = "eps";
    options.y_label = "workload error";
    options.log_x = true;
    const SvgSeries series[] = {strat_series, vanilla_series};
    WriteLineChart(config.svg_path, options, series);
  }
  const std::size_t warnings = degenerate.load() + undefined_parity.load();
  if (degenerate.load() > 0) {
    std::fprintf(stderr,
                 "synth-eval: %zu trials degenerate (zero-mass noisy "
                 "marginal at small eps)\n",
                 degenerate.load());
  }
  return (config.strict && warnings > 0) ? kExitDegenerateStats : kExitOk;
}

// ---------------------------------------------------------------------------
// generators

int RunGenMixture(const GenMixtureConfig& config) {
  RngHandle rng(config.seed);
  const MixtureDataset data = GaussianMixture(config.spec, rng);
  WriteMixtureCsv(data.sample, config.out_path);
  return kExitOk;
}

int RunGenTabular(const GenTabularConfig& config) {
  const std::vector<Attribute> schema = {
      {"sex", 2},   {"race", 5}, {"age_band", 5},
      {"edu", 12},  {"hours", 10}, {"dis", 2}};
  TabularDataset dataset(schema);
  RngHandle rng(config.seed);

  const double race_probs[5] = {0.60, 0.20, 0.10, 0.07, 0.03};
  const double age_probs[5] = {0.18, 0.22, 0.25, 0.20, 0.15};
  const double edu_shift[5] = {3.0, 1.5, 1.0, 0.5, 0.0};
  const double hours_shift[5] = {1.5, 0.5, 0.0, -0.5, -1.0};

  auto categorical = [&rng](const double* probs, int count) {
    double u = rng.Uniform();
    for (int i = 0; i + 1 < count; ++i) {
      if (u < probs[i]) return i;
      u -= probs[i];
    }
    return count - 1;
  };
  auto clamp_round = [](double v, int domain) {
    const int r = static_cast<int>(std::llround(v));
    return std::min(std::max(r, 0), domain - 1);
  };

  std::vector<int> record(schema.size());
  for (std::size_t i = 0; i < config.n; ++i) {
    const int sex = rng.Uniform() < 0.51 ? 0 : 1;
    const int race = categorical(race_probs, 5);
    const int age = categorical(age_probs, 5);
    const double edu_mu = 4.0 + 1.0 * sex + edu_shift[race] + 0.3 * age;
    const int edu = clamp_round(edu_mu + 2.0 * rng.Normal(), 12);
    const double hours_mu =
        5.0 + hours_shift[race] + (age == 0 ? -2.0 : 0.0) + 0.5 * sex;
    const int hours = clamp_round(hours_mu + 2.0 * rng.Normal(), 10);
    const int dis = rng.Uniform() < (0.05 + 0.04 * age) ? 1 : 0;
    record = {sex, race, age, edu, hours, dis};
    dataset.AddRecord(record);
  }
  WriteCsv(dataset, config.csv_path);
  WriteSchema(schema, config.schema_path);
  return kExitOk;
}

}  // namespace stratdp
