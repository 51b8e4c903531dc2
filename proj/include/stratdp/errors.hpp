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

#ifndef STRATDP_ERRORS_HPP_
#define STRATDP_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace stratdp {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric or configuration argument violates a precondition.
class InvalidParameterError : public Error {
 public:
  using Error::Error;
};

// Budgets of different kinds were combined without explicit conversion.
class IncompatibleBudgetError : public Error {
 public:
  using Error::Error;
};

// Parallel composition was requested without asserting disjoint inputs.
class DisjointnessError : public Error {
 public:
  using Error::Error;
};

// An estimator received an empty dataset or an empty stratum.
class EmptyDataError : public Error {
 public:
  using Error::Error;
};

// Vector/matrix arguments have mismatched lengths or schemas.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A weight vector is negative, does not sum to 1, or misses a group.
class InvalidWeightsError : public Error {
 public:
  using Error::Error;
};

// A normalized error term has a zero denominator.
class UndefinedNormalizationError : public Error {
 public:
  using Error::Error;
};

// A sampling distribution collapsed to zero mass.
class DegenerateDistributionError : public Error {
 public:
  using Error::Error;
};

// Malformed or out-of-domain input data (CSV cells, schema files, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure (unreadable input, unwritable output).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace stratdp

#endif  // STRATDP_ERRORS_HPP_
