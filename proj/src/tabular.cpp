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

#include "stratdp/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "stratdp/errors.hpp"

namespace stratdp {
namespace {

std::string FormatDouble12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    fields.emplace_back();
  }
  return fields;
}

std::string StripCr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

TabularDataset::TabularDataset(std::vector<Attribute> schema)
    : schema_(std::move(schema)) {
  if (schema_.empty()) {
    throw InvalidParameterError("TabularDataset: empty schema");
  }
  for (const Attribute& a : schema_) {
    if (a.domain_size < 1) {
      throw InvalidParameterError("TabularDataset: attribute '" + a.name +
                                  "' has non-positive domain size");
    }
  }
}

void TabularDataset::AddRecord(std::span<const int> record) {
  if (record.size() != schema_.size()) {
    throw ShapeError("TabularDataset: record width does not match schema");
  }
  for (std::size_t i = 0; i < record.size(); ++i) {
    if (record[i] < 0 || record[i] >= schema_[i].domain_size) {
      throw DataError("TabularDataset: value " + std::to_string(record[i]) +
                      " outside domain [0, " +
                      std::to_string(schema_[i].domain_size) +
                      ") for attribute '" + schema_[i].name + "'");
    }
  }
  cells_.insert(cells_.end(), record.begin(), record.end());
  ++rows_;
}

std::size_t TabularDataset::AttributeIndex(const std::string& name) const {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (schema_[i].name == name) return i;
  }
  throw DataError("TabularDataset: unknown attribute '" + name + "'");
}

std::vector<Attribute> LoadSchema(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("LoadSchema: cannot open '" + path + "'");
  }
  std::vector<Attribute> schema;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = StripCr(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || comma == 0) {
      throw DataError("LoadSchema: line " + std::to_string(line_no) +
                      ": expected 'name,domain_size'");
    }
    Attribute attr;
    attr.name = line.substr(0, comma);
    try {
      attr.domain_size = std::stoi(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw DataError("LoadSchema: line " + std::to_string(line_no) +
                      ": unparsable domain size");
    }
    if (attr.domain_size < 1) {
      throw DataError("LoadSchema: line " + std::to_string(line_no) +
                      ": domain size must be positive");
    }
    schema.push_back(std::move(attr));
  }
  if (schema.empty()) {
    throw DataError("LoadSchema: '" + path + "' declares no attributes");
  }
  return schema;
}

void WriteSchema(const std::vector<Attribute>& schema,
                 const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("WriteSchema: cannot open '" + path + "' for writing");
  }
  for (const Attribute& a : schema) {
    out << a.name << ',' << a.domain_size << '\n';
  }
}

TabularDataset LoadCsv(const std::string& path,
                       const std::vector<Attribute>& schema) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("LoadCsv: cannot open '" + path + "'");
  }
  TabularDataset dataset(schema);

  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("LoadCsv: '" + path + "' is empty (header row required)");
  }
  const std::vector<std::string> header = SplitCsvLine(StripCr(line));
  // Map each schema attribute to its CSV column; the header must name
  // exactly the schema attributes.
  std::vector<std::size_t> column_of(schema.size());
  std::vector<bool> used(header.size(), false);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    bool found = false;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (!used[c] && header[c] == schema[i].name) {
        column_of[i] = c;
        used[c] = true;
        found = true;
        break;
      }
    }
    if (!found) {
      throw DataError("LoadCsv: missing column '" + schema[i].name + "'");
    }
  }
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (!used[c]) {
      throw DataError("LoadCsv: column '" + header[c] +
                      "' is not in the schema");
    }
  }

  std::vector<int> record(schema.size());
  std::size_t row_no = 1;  // header was row 1
  while (std::getline(in, line)) {
    ++row_no;
    line = StripCr(line);
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitCsvLine(line);
    if (fields.size() != header.size()) {
      throw DataError("LoadCsv: row " + std::to_string(row_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    for (std::size_t i = 0; i < schema.size(); ++i) {
      const std::string& cell = fields[column_of[i]];
      int value = 0;
      std::size_t consumed = 0;
      try {
        value = std::stoi(cell, &consumed);
      } catch (const std::exception&) {
        throw DataError("LoadCsv: row " + std::to_string(row_no) +
                        ": unparsable value '" + cell + "' for attribute '" +
                        schema[i].name + "'");
      }
      if (consumed != cell.size()) {
        throw DataError("LoadCsv: row " + std::to_string(row_no) +
                        ": trailing characters in '" + cell + "'");
      }
      if (value < 0 || value >= schema[i].domain_size) {
        throw DataError("LoadCsv: row " + std::to_string(row_no) +
                        ": value " + std::to_string(value) +
                        " outside domain [0, " +
                        std::to_string(schema[i].domain_size) +
                        ") for attribute '" + schema[i].name + "'");
      }
      record[i] = value;
    }
    dataset.AddRecord(record);
  }
  return dataset;
}

void WriteCsv(const TabularDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("WriteCsv: cannot open '" + path + "' for writing");
  }
  const auto& schema = dataset.schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    out << (i ? "," : "") << schema[i].name;
  }
  out << '\n';
  for (std::size_t r = 0; r < dataset.record_count(); ++r) {
    for (std::size_t i = 0; i < schema.size(); ++i) {
      out << (i ? "," : "") << dataset.value(r, i);
    }
    out << '\n';
  }
  if (!out.good()) {
    throw IoError("WriteCsv: write failed for '" + path + "'");
  }
}

TabularPartition PartitionByAttributes(const TabularDataset& dataset,
                                       std::span<const std::string> attrs) {
  TabularPartition partition;
  for (const std::string& name : attrs) {
    partition.attr_indices.push_back(dataset.AttributeIndex(name));
  }
  std::sort(partition.attr_indices.begin(), partition.attr_indices.end());
  partition.attr_indices.erase(
      std::unique(partition.attr_indices.begin(), partition.attr_indices.end()),
      partition.attr_indices.end());

  if (partition.attr_indices.empty()) {
    TabularGroup all;
    all.id = "all";
    all.rows.resize(dataset.record_count());
    std::iota(all.rows.begin(), all.rows.end(), 0);
    partition.groups.push_back(std::move(all));
    return partition;
  }

  // map keeps groups sorted by value tuple.
  std::map<std::vector<int>, std::vector<std::size_t>> cells;
  std::vector<int> key(partition.attr_indices.size());
  for (std::size_t r = 0; r < dataset.record_count(); ++r) {
    for (std::size_t j = 0; j < partition.attr_indices.size(); ++j) {
      key[j] = dataset.value(r, partition.attr_indices[j]);
    }
    cells[key].push_back(r);
  }
  for (auto& [values, rows] : cells) {
    TabularGroup group;
    group.attr_values = values;
    group.rows = std::move(rows);
    std::string id;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j) id += ',';
      id += dataset.schema()[partition.attr_indices[j]].name;
      id += '=';
      id += std::to_string(values[j]);
    }
    group.id = std::move(id);
    partition.groups.push_back(std::move(group));
  }
  return partition;
}

Marginal ComputeMarginal(const TabularDataset& dataset,
                         std::span<const std::size_t> attr_indices) {
  if (attr_indices.empty()) {
    throw InvalidParameterError("ComputeMarginal: empty attribute set");
  }
  Marginal marginal;
  marginal.attr_indices.assign(attr_indices.begin(), attr_indices.end());
  std::sort(marginal.attr_indices.begin(), marginal.attr_indices.end());
  if (std::adjacent_find(marginal.attr_indices.begin(),
                         marginal.attr_indices.end()) !=
      marginal.attr_indices.end()) {
    throw InvalidParameterError("ComputeMarginal: duplicate attribute");
  }
  std::size_t cells = 1;
  for (std::size_t a : marginal.attr_indices) {
    if (a >= dataset.attribute_count()) {
      throw InvalidParameterError("ComputeMarginal: attribute index out of range");
    }
    cells *= static_cast<std::size_t>(dataset.schema()[a].domain_size);
  }
  marginal.counts.assign(cells, 0.0);
  for (std::size_t r = 0; r < dataset.record_count(); ++r) {
    std::size_t index = 0;
    for (std::size_t a : marginal.attr_indices) {
      index = index * static_cast<std::size_t>(dataset.schema()[a].domain_size) +
              static_cast<std::size_t>(dataset.value(r, a));
    }
    marginal.counts[index] += 1.0;
  }
  return marginal;
}

std::string FormatMarginal(const TabularDataset& dataset,
                           const Marginal& marginal) {
  std::string out = "S=";
  for (std::size_t j = 0; j < marginal.attr_indices.size(); ++j) {
    if (j) out += ',';
    out += dataset.schema()[marginal.attr_indices[j]].name;
  }
  out += ";counts=";
  for (std::size_t j = 0; j < marginal.counts.size(); ++j) {
    if (j) out += ',';
    out += FormatDouble12(marginal.counts[j]);
  }
  return out;
}

Workload AllKWayWorkload(const std::vector<Attribute>& schema, int way,
                         double weight) {
  const int d = static_cast<int>(schema.size());
  if (way < 1 || way > d) {
    throw InvalidParameterError(
        "AllKWayWorkload: way must lie in [1, attribute count]");
  }
  if (!(weight >= 0.0)) {
    throw InvalidParameterError("AllKWayWorkload: negative weight");
  }
  Workload workload;
  std::vector<std::size_t> combo(way);
  std::iota(combo.begin(), combo.end(), 0);
  for (;;) {
    workload.queries.push_back({combo, weight});
    int j = way - 1;
    while (j >= 0 && combo[j] == static_cast<std::size_t>(d - way + j)) --j;
    if (j < 0) break;
    ++combo[j];
    for (int m = j + 1; m < way; ++m) combo[m] = combo[m - 1] + 1;
  }
  return workload;
}

namespace {

void CheckSameSchema(const TabularDataset& a, const TabularDataset& b) {
  if (a.schema().size() != b.schema().size()) {
    throw ShapeError("WorkloadError: schemas differ in width");
  }
  for (std::size_t i = 0; i < a.schema().size(); ++i) {
    if (a.schema()[i].name != b.schema()[i].name ||
        a.schema()[i].domain_size != b.schema()[i].domain_size) {
      throw ShapeError("WorkloadError: schemas differ at attribute '" +
                       a.schema()[i].name + "'");
    }
  }
}

}  // namespace

double WorkloadError(const TabularDataset& real, const TabularDataset& synth,
                     const Workload& workload) {
  CheckSameSchema(real, synth);
  if (real.record_count() == 0) {
    throw EmptyDataError("WorkloadError: real dataset is empty");
  }
  if (synth.record_count() == 0) {
    throw EmptyDataError("WorkloadError: synthetic dataset is empty");
  }
  if (workload.queries.empty()) {
    throw InvalidParameterError("WorkloadError: empty workload");
  }
  const double rescale = static_cast<double>(real.record_count()) /
                         static_cast<double>(synth.record_count());
  double total = 0.0;
  for (const MarginalQuery& query : workload.queries) {
    const Marginal mr = ComputeMarginal(real, query.attrs);
    const Marginal ms = ComputeMarginal(synth, query.attrs);
    double l1 = 0.0;
    for (std::size_t c = 0; c < mr.counts.size(); ++c) {
      l1 += std::fabs(mr.counts[c] - rescale * ms.counts[c]);
    }
    total += query.weight * l1;
  }
  return total / (static_cast<double>(workload.queries.size()) *
                  static_cast<double>(real.record_count()));
}

SynthResult StratHistogramSynth(
    const TabularDataset& dataset, std::span<const std::string> group_attrs,
    double epsilon,
    const std::vector<std::pair<std::string, double>>& public_weights,
    std::size_t n_out, RngHandle& rng) {
  if (!(epsilon > 0.0)) {
    throw InvalidParameterError("StratHistogramSynth: epsilon must be > 0");
  }
  if (dataset.record_count() == 0) {
    throw EmptyDataError("StratHistogramSynth: empty dataset");
  }
  const TabularPartition partition =
      PartitionByAttributes(dataset, group_attrs);

  std::vector<std::size_t> free_attrs;  // attributes not fixed by the group id
  for (std::size_t a = 0; a < dataset.attribute_count(); ++a) {
    if (std::find(partition.attr_indices.begin(), partition.attr_indices.end(),
                  a) == partition.attr_indices.end()) {
      free_attrs.push_back(a);
    }
  }
  if (free_attrs.empty()) {
    throw InvalidParameterError(
        "StratHistogramSynth: every attribute is a group attribute");
  }
  const double eps_per_attr =
      epsilon / static_cast<double>(free_attrs.size());

  std::unordered_map<std::string, double> weight_of;
  for (const auto& [id, w] : public_weights) {
    if (!(w >= 0.0)) {
      throw InvalidWeightsError("StratHistogramSynth: negative weight for '" +
                                id + "'");
    }
    weight_of[id] = w;
  }

  // Per group, per free attribute: noisy count histogram clamped at 0 and
  // normalized into a sampling distribution. Count sensitivity under
  // add/remove adjacency is 1, so the Laplace scale is 1 / eps_per_attr.
  std::vector<std::vector<std::vector<double>>> model(partition.groups.size());
  std::vector<double> group_weights(partition.groups.size());
  double weight_sum = 0.0;
  for (std::size_t g = 0; g < partition.groups.size(); ++g) {
    const TabularGroup& group = partition.groups[g];
    const auto it = weight_of.find(group.id);
    if (it == weight_of.end()) {
      throw InvalidWeightsError(
          "StratHistogramSynth: no public weight for group '" + group.id +
          "'");
    }
    group_weights[g] = it->second;
    weight_sum += it->second;

    model[g].resize(free_attrs.size());
    for (std::size_t j = 0; j < free_attrs.size(); ++j) {
      const std::size_t a = free_attrs[j];
      const int domain = dataset.schema()[a].domain_size;
      std::vector<double>& hist = model[g][j];
      hist.assign(static_cast<std::size_t>(domain), 0.0);
      for (std::size_t r : group.rows) {
        hist[static_cast<std::size_t>(dataset.value(r, a))] += 1.0;
      }
      double mass = 0.0;
      for (double& cell : hist) {
        cell += DrawLaplaceNoise(1.0, eps_per_attr, rng).value;
        if (cell < 0.0) cell = 0.0;
        mass += cell;
      }
      if (!(mass > 0.0)) {
        throw DegenerateDistributionError(
            "StratHistogramSynth: noisy marginal for group '" + group.id +
            "', attribute '" + dataset.schema()[a].name +
            "' has zero mass; resample with a larger epsilon");
      }
      for (double& cell : hist) cell /= mass;
    }
  }
  if (!(weight_sum > 0.0)) {
    throw InvalidWeightsError("StratHistogramSynth: weights sum to 0");
  }

  TabularDataset synth(dataset.schema());
  std::vector<int> record(dataset.attribute_count());
  for (std::size_t r = 0; r < n_out; ++r) {
    // Group id first, then each free attribute independently.
    double u = rng.Uniform() * weight_sum;
    std::size_t g = 0;
    for (; g + 1 < partition.groups.size(); ++g) {
      if (u < group_weights[g]) break;
      u -= group_weights[g];
    }
    const TabularGroup& group = partition.groups[g];
    for (std::size_t j = 0; j < partition.attr_indices.size(); ++j) {
      record[partition.attr_indices[j]] = group.attr_values[j];
    }
    for (std::size_t j = 0; j < free_attrs.size(); ++j) {
      const std::vector<double>& hist = model[g][j];
      double v = rng.Uniform();
      std::size_t code = 0;
      for (; code + 1 < hist.size(); ++code) {
        if (v < hist[code]) break;
        v -= hist[code];
      }
      record[free_attrs[j]] = static_cast<int>(code);
    }
    synth.AddRecord(record);
  }
  // eps_per_attr spent once per free attribute (sequential within a stratum),
  // identical across disjoint strata (parallel): total epsilon.
  return SynthResult{std::move(synth),
                     ComposeParallel(PrivacyBudget::PureDp(epsilon),
                                     /*partition_disjoint=*/true)};
}

TabularParityReport ParityErrorByAttribute(
    const TabularDataset& real, const TabularDataset& synth,
    std::span<const std::string> group_attrs, std::optional<double> omega) {
  CheckSameSchema(real, synth);
  if (real.record_count() == 0 || synth.record_count() == 0) {
    throw EmptyDataError("ParityErrorByAttribute: empty dataset");
  }
  const TabularPartition real_part = PartitionByAttributes(real, group_attrs);
  const TabularPartition synth_part =
      PartitionByAttributes(synth, group_attrs);
  std::unordered_map<std::string, const TabularGroup*> synth_groups;
  for (const TabularGroup& g : synth_part.groups) {
    synth_groups[g.id] = &g;
  }
  const std::size_t k = real_part.groups.size();
  const double w = omega.value_or(1.0 / static_cast<double>(k));
  if (!(w > 0.0)) {
    throw InvalidParameterError("ParityErrorByAttribute: omega must be > 0");
  }

  auto mean_over = [](const TabularDataset& d, std::size_t attr,
                      const std::vector<std::size_t>& rows) {
    double sum = 0.0;
    for (std::size_t r : rows) sum += d.value(r, attr);
    return sum / static_cast<double>(rows.size());
  };
  auto global_mean = [](const TabularDataset& d, std::size_t attr) {
    double sum = 0.0;
    for (std::size_t r = 0; r < d.record_count(); ++r) sum += d.value(r, attr);
    return sum / static_cast<double>(d.record_count());
  };

  TabularParityReport report;
  for (std::size_t a = 0; a < real.attribute_count(); ++a) {
    report.attributes.push_back(real.schema()[a].name);
    double parity = 0.0;
    for (const TabularGroup& group : real_part.groups) {
      const double truth = mean_over(real, a, group.rows);
      if (truth == 0.0) {
        ++report.undefined_terms;
        continue;
      }
      const auto it = synth_groups.find(group.id);
      const double estimate =
          it == synth_groups.end() ? 0.0 : mean_over(synth, a, it->second->rows);
      parity += std::fabs((truth - estimate) / truth);
    }
    const double truth_global = global_mean(real, a);
    if (truth_global == 0.0) {
      ++report.undefined_terms;
    } else {
      parity += w * std::fabs((truth_global - global_mean(synth, a)) /
                              truth_global);
    }
    report.per_attribute.push_back(parity);
  }
  double total = 0.0;
  for (double p : report.per_attribute) total += p;
  report.aggregate = total / static_cast<double>(report.per_attribute.size());
  return report;
}

}  // namespace stratdp
