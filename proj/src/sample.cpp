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

#include "stratdp/sample.hpp"

#include <cmath>

#include "stratdp/errors.hpp"

namespace stratdp {

void StratifiedSample::Validate() const {
  if (strata.empty()) {
    throw EmptyDataError("StratifiedSample: no strata");
  }
  for (const Stratum& s : strata) {
    if (s.values.empty()) {
      throw EmptyDataError("StratifiedSample: empty stratum '" + s.id + "'");
    }
  }
  if (public_weights.has_value()) {
    const std::vector<double>& w = *public_weights;
    if (w.size() != strata.size()) {
      throw InvalidWeightsError(
          "StratifiedSample: public_weights length does not match strata");
    }
    double sum = 0.0;
    for (double wi : w) {
      if (!(wi >= 0.0)) {
        throw InvalidWeightsError("StratifiedSample: negative public weight");
      }
      sum += wi;
    }
    if (std::fabs(sum - 1.0) > 1e-9) {
      throw InvalidWeightsError(
          "StratifiedSample: public_weights must sum to 1 within 1e-9");
    }
  }
}

}  // namespace stratdp
