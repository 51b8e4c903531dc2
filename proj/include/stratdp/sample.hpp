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

#ifndef STRATDP_SAMPLE_HPP_
#define STRATDP_SAMPLE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "stratdp/privacy.hpp"

namespace stratdp {

// One cell of a disjoint partition: a group id and its members' values.
struct Stratum {
  std::string id;
  std::vector<double> values;
};

// A dataset partitioned into disjoint strata, with optional externally known
// group proportions.
struct StratifiedSample {
  std::vector<Stratum> strata;
  // When present: one weight per stratum, each >= 0, summing to 1 (1e-9).
  std::optional<std::vector<double>> public_weights;

  std::size_t group_count() const { return strata.size(); }

  std::size_t total_count() const {
    std::size_t n = 0;
    for (const Stratum& s : strata) n += s.values.size();
    return n;
  }

  std::vector<std::size_t> group_sizes() const {
    std::vector<std::size_t> sizes;
    sizes.reserve(strata.size());
    for (const Stratum& s : strata) sizes.push_back(s.values.size());
    return sizes;
  }

  // Concatenation of all strata in stratum order.
  std::vector<double> all_values() const {
    std::vector<double> values;
    values.reserve(total_count());
    for (const Stratum& s : strata) {
      values.insert(values.end(), s.values.begin(), s.values.end());
    }
    return values;
  }

  // Throws EmptyDataError / InvalidWeightsError when the invariants fail.
  void Validate() const;
};

struct GroupEstimate {
  std::string id;
  double estimate;
};

// A stratified estimate: per-group values plus the weighted global value and
// the privacy budget the computation spent.
struct MeanEstimateResult {
  double global;
  std::vector<GroupEstimate> per_group;
  PrivacyBudget budget_spent;
};

}  // namespace stratdp

#endif  // STRATDP_SAMPLE_HPP_
