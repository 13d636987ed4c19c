// Copyright 2026 The sgpd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace sgpd {

/// Base class of every error thrown by the library. `kind()` is a stable
/// machine-readable tag used by the CLI error reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SGPD_DEFINE_ERROR(Name, tag)                                     \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(tag, what) {}         \
  }

SGPD_DEFINE_ERROR(InvalidArgument, "invalid_argument");
SGPD_DEFINE_ERROR(DivisionByZero, "division_by_zero");
SGPD_DEFINE_ERROR(DimensionMismatch, "dimension_mismatch");
SGPD_DEFINE_ERROR(FieldMismatch, "field_mismatch");
SGPD_DEFINE_ERROR(PartitionError, "partition_error");
// The decoder received fewer results than the recovery threshold.
SGPD_DEFINE_ERROR(InsufficientShares, "insufficient_shares");
SGPD_DEFINE_ERROR(DuplicatePoint, "duplicate_point");
SGPD_DEFINE_ERROR(InconsistentQueries, "inconsistent_queries");
SGPD_DEFINE_ERROR(Unsupported, "unsupported");
SGPD_DEFINE_ERROR(BudgetExceeded, "budget_exceeded");

#undef SGPD_DEFINE_ERROR

}  // namespace sgpd
