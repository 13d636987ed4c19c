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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sgpd/field.hpp"
#include "sgpd/gpd.hpp"
#include "sgpd/partition.hpp"

namespace sgpd {

/// Public matrices B^(1..L), all S x D. Indices are 1-based.
class PublicLibrary {
 public:
  explicit PublicLibrary(std::vector<FieldMatrix> matrices);
  static PublicLibrary random(const PrimeField& field, std::size_t count,
                              std::size_t rows, std::size_t cols,
                              std::uint64_t seed);

  std::size_t size() const noexcept { return matrices_.size(); }
  const FieldMatrix& at(std::size_t r) const;
  const std::vector<FieldMatrix>& matrices() const noexcept {
    return matrices_;
  }

 private:
  std::vector<FieldMatrix> matrices_;
};

struct QueryVector {
  std::size_t worker_id;  // 1-based
  std::vector<Element> entries;
};

/// Master-side record of a query round: the desired index and every
/// worker's query vector.
struct QueryBatch {
  std::size_t kappa = 1;  // 1-based
  std::vector<QueryVector> queries;

  const QueryVector& for_worker(std::size_t worker_id) const;
  Element kappa_point(std::size_t worker_id) const {
    return for_worker(worker_id).entries.at(kappa - 1);
  }
};

struct PsgpdThreshold {
  std::size_t symbolic = 0;
  std::size_t formula = 0;

  bool deviates() const noexcept { return symbolic != formula; }
};

std::size_t psgpd_threshold_formula(const BlockSplit& split);
PsgpdThreshold psgpd_threshold(const BlockSplit& split);

class PsgpdCode {
 public:
  /// Only p_c == 1 is supported.
  static PsgpdCode create(const PrimeField& field, const PartitionSpec& spec,
                          std::size_t library_size, std::size_t workers,
                          std::size_t p_c = 1);

  const PrimeField& field() const noexcept { return field_; }
  const PartitionSpec& spec() const noexcept { return spec_; }
  const AugmentationPlan& plan() const noexcept { return plan_; }
  const CodeMaps& maps() const noexcept { return maps_; }
  std::size_t library_size() const noexcept { return library_size_; }
  std::size_t workers() const noexcept { return workers_; }
  const PsgpdThreshold& threshold() const noexcept { return threshold_; }
  std::size_t recovery_threshold() const noexcept {
    return threshold_.symbolic;
  }
  std::size_t mask_exponent() const;
  const std::vector<std::string>& warnings() const noexcept {
    return warnings_;
  }

 private:
  PsgpdCode(PrimeField field, PartitionSpec spec, AugmentationPlan plan,
            CodeMaps maps, std::size_t library_size, std::size_t workers);

  PrimeField field_;
  PartitionSpec spec_;
  AugmentationPlan plan_;
  CodeMaps maps_;
  std::size_t library_size_;
  std::size_t workers_;
  PsgpdThreshold threshold_;
  std::vector<std::string> warnings_;
};

/// Decoys shared by all workers, distinct per-worker points at kappa. All
/// entries are drawn from the nonzero elements.
QueryBatch build_queries(const PrimeField& field, std::size_t library_size,
                         std::size_t kappa, std::size_t workers,
                         std::uint64_t seed);

struct MaskedEncoding {
  std::size_t worker_id;
  FieldMatrix a;  // T/t x S/s
  std::size_t mask_exponent;
};

std::vector<MaskedEncoding> encode_a_masked(const FieldMatrix& a,
                                            const PsgpdCode& code,
                                            const QueryBatch& batch,
                                            std::uint64_t seed);
std::vector<MaskedEncoding> encode_a_masked(const FieldMatrix& a,
                                            const PsgpdCode& code,
                                            const QueryBatch& batch,
                                            const KeyMaterial& key);

/// F_{B^(r)}(z) for a single library entry.
FieldMatrix evaluate_library_entry(const FieldMatrix& b, const PsgpdCode& code,
                                   Element z);

FieldMatrix worker_encode_library(const PublicLibrary& library,
                                  const QueryVector& query,
                                  const PsgpdCode& code);

/// Library encoding followed by the local product.
WorkerResult psgpd_worker(const MaskedEncoding& encoding,
                          const PublicLibrary& library,
                          const QueryVector& query, const PsgpdCode& code);

struct PsgpdRequest {
  QueryBatch batch;
  std::vector<MaskedEncoding> encodings;
};

PsgpdRequest make_request(const FieldMatrix& a, const PsgpdCode& code,
                          std::size_t kappa, std::uint64_t seed);

/// Sum of F_{B^(r)}(z_r) over the decoy positions.
FieldMatrix decoy_offset(const PublicLibrary& library, const QueryBatch& batch,
                         const PsgpdCode& code);

FieldMatrix psgpd_decode(std::vector<WorkerResult> results,
                         const PsgpdCode& code, const PublicLibrary& library,
                         const PsgpdRequest& request);

double psgpd_complexity_estimate(const PartitionSpec& spec,
                                 std::size_t library_size, std::size_t workers,
                                 std::size_t recovery_threshold,
                                 ComplexityRole role);

}  // namespace sgpd
