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

#ifndef STRATDP_TABULAR_HPP_
#define STRATDP_TABULAR_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "stratdp/privacy.hpp"
#include "stratdp/rng.hpp"

namespace stratdp {

struct Attribute {
  std::string name;
  int domain_size;  // valid codes are 0 .. domain_size-1
};

// Categorical records over a declared finite domain. Cells are dense 0-based
// codes; anything outside the declared domain is rejected at insertion.
class TabularDataset {
 public:
  explicit TabularDataset(std::vector<Attribute> schema);

  const std::vector<Attribute>& schema() const { return schema_; }
  std::size_t attribute_count() const { return schema_.size(); }
  std::size_t record_count() const { return rows_; }

  int value(std::size_t row, std::size_t attribute) const {
    return cells_[row * schema_.size() + attribute];
  }

  void AddRecord(std::span<const int> record);

  // Index of the named attribute; throws DataError when absent.
  std::size_t AttributeIndex(const std::string& name) const;

 private:
  std::vector<Attribute> schema_;
  std::vector<std::int32_t> cells_;  // row-major
  std::size_t rows_ = 0;
};

// Schema file: one "name,domain_size" line per attribute; line order defines
// the mixed-radix encoding below.
std::vector<Attribute> LoadSchema(const std::string& path);
void WriteSchema(const std::vector<Attribute>& schema, const std::string& path);

// Integer-coded CSV with a header row naming exactly the schema attributes
// (any column order). Malformed cells and out-of-domain values are rejected
// with their row number.
TabularDataset LoadCsv(const std::string& path,
                       const std::vector<Attribute>& schema);
void WriteCsv(const TabularDataset& dataset, const std::string& path);

// One cell of an intersectional partition.
struct TabularGroup {
  std::string id;                 // "name=value,..." in schema order
  std::vector<int> attr_values;   // values of the partition attributes
  std::vector<std::size_t> rows;  // record indices, ascending
};

struct TabularPartition {
  std::vector<std::size_t> attr_indices;  // partition attributes, schema order
  std::vector<TabularGroup> groups;       // nonempty, sorted by value tuple
};

// Partitions by the value combinations of the named attributes. Empty
// combinations are omitted; no attributes yields one group holding every
// record (id "all").
TabularPartition PartitionByAttributes(const TabularDataset& dataset,
                                       std::span<const std::string> attrs);

// Count vector over the value combinations of an attribute subset, indexed
// mixed-radix and row-major in schema order (the earliest schema attribute
// is the most significant digit). This encoding is part of the external
// contract for dumped marginals.
struct Marginal {
  std::vector<std::size_t> attr_indices;  // ascending schema order
  std::vector<double> counts;
};

Marginal ComputeMarginal(const TabularDataset& dataset,
                         std::span<const std::size_t> attr_indices);

// "S=<attr names>;counts=<comma list>" on one line, bit-exact for goldens.
std::string FormatMarginal(const TabularDataset& dataset,
                           const Marginal& marginal);

struct MarginalQuery {
  std::vector<std::size_t> attrs;
  double weight;
};

struct Workload {
  std::vector<MarginalQuery> queries;
};

// All attribute subsets of the given size with uniform weights.
Workload AllKWayWorkload(const std::vector<Attribute>& schema, int way,
                         double weight = 1.0);

// Average weighted L1 distance between real and synthetic marginals:
//   (1 / (q * |D|)) * sum_i c_i * || M_i(D) - M_i(D_hat) ||_1.
// When |D_hat| != |D|, synthetic counts are rescaled by |D| / |D_hat| first.
double WorkloadError(const TabularDataset& real, const TabularDataset& synth,
                     const Workload& workload);

struct SynthResult {
  TabularDataset data;
  PrivacyBudget budget;  // PureDP(epsilon) for any group/attribute count
};

// Minimal stratified synthesizer: per stratum, Laplace-noised 1-way
// marginals for every non-partition attribute (epsilon split equally across
// those attributes; strata are disjoint), clamped at 0 and normalized; then
// n_out records are drawn by sampling a group id from public_weights and
// each attribute independently from that group's noisy marginal. Attribute
// independence within a stratum is deliberate: the model captures nothing
// about cross-attribute correlation.
SynthResult StratHistogramSynth(
    const TabularDataset& dataset, std::span<const std::string> group_attrs,
    double epsilon,
    const std::vector<std::pair<std::string, double>>& public_weights,
    std::size_t n_out, RngHandle& rng);

struct TabularParityReport {
  std::vector<std::string> attributes;
  std::vector<double> per_attribute;
  double aggregate = 0.0;    // mean of per_attribute
  int undefined_terms = 0;   // zero-denominator terms skipped with a warning
};

// Per-attribute mean-statistic disparity between a dataset and its synthetic
// counterpart, both partitioned by group_attrs. For every attribute the
// per-group and global means feed the parity formula with the given omega
// (default 1/k). Groups absent from the synthetic data contribute an
// estimate of 0; zero true means are skipped and counted.
TabularParityReport ParityErrorByAttribute(
    const TabularDataset& real, const TabularDataset& synth,
    std::span<const std::string> group_attrs,
    std::optional<double> omega = std::nullopt);

}  // namespace stratdp

#endif  // STRATDP_TABULAR_HPP_
