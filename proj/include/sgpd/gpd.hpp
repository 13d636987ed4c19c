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
#include <optional>
#include <span>
#include <stop_token>
#include <string>
#include <vector>

#include "sgpd/field.hpp"
#include "sgpd/partition.hpp"

namespace sgpd {

/// Recovery thresholds of one code. `symbolic` is deg(F_a* F_b*) + 1 and is
/// what the decoder relies on; `formula` is the closed form for the family
/// and `naive` the threshold of applying plain GPD to the augmented inputs.
struct ThresholdReport {
  std::size_t symbolic = 0;
  std::size_t formula = 0;
  std::size_t naive = 0;

  bool deviates() const noexcept { return symbolic != formula; }
};

ThresholdReport recovery_threshold(const AugmentationPlan& plan,
                                   const BlockSplit& split);

/// Closed-form thresholds, exposed for cross-checks.
std::size_t gpd_threshold_formula(const BlockSplit& split);
std::size_t sgpd_threshold_formula(const AugmentationPlan& plan,
                                   const BlockSplit& split);
std::size_t naive_threshold_formula(const AugmentationPlan& plan,
                                    const BlockSplit& split);

/// Everything the master fixes before encoding: field, partition, plan,
/// exponent maps and the P evaluation points. With p_c = 0 this is a plain
/// GPD code.
class SecureCode {
 public:
  static SecureCode create(const PrimeField& field, const PartitionSpec& spec,
                           std::size_t p_c, std::size_t workers,
                           EvalPointSet points);
  /// Draws the P evaluation points from `point_seed`.
  static SecureCode create(const PrimeField& field, const PartitionSpec& spec,
                           std::size_t p_c, std::size_t workers,
                           std::uint64_t point_seed);

  const PrimeField& field() const noexcept { return field_; }
  const PartitionSpec& spec() const noexcept { return spec_; }
  const AugmentationPlan& plan() const noexcept { return plan_; }
  const CodeMaps& maps() const noexcept { return maps_; }
  std::size_t workers() const noexcept { return points_.size(); }
  const EvalPointSet& points() const noexcept { return points_; }
  const ThresholdReport& threshold() const noexcept { return threshold_; }
  std::size_t recovery_threshold() const noexcept {
    return threshold_.symbolic;
  }
  CodeFamily family() const noexcept {
    return plan_.p_c == 0 ? CodeFamily::kGpd : CodeFamily::kSgpd;
  }
  /// Non-fatal construction notes (e.g. P below the recovery threshold).
  const std::vector<std::string>& warnings() const noexcept {
    return warnings_;
  }

 private:
  SecureCode(PrimeField field, PartitionSpec spec, AugmentationPlan plan,
             CodeMaps maps, EvalPointSet points, ThresholdReport threshold);

  PrimeField field_;
  PartitionSpec spec_;
  AugmentationPlan plan_;
  CodeMaps maps_;
  EvalPointSet points_;
  ThresholdReport threshold_;
  std::vector<std::string> warnings_;
};

struct Share {
  std::size_t worker_id;  // 1-based
  Element z;
  FieldMatrix a;  // T/t x S/s
  FieldMatrix b;  // S/s x D/d
};

struct WorkerResult {
  std::size_t worker_id;
  FieldMatrix product;  // T/t x D/d
  std::optional<double> completion_time;
};

/// Shares for all P workers with fresh key material drawn from `seed`.
std::vector<Share> encode_shares(const FieldMatrix& a, const FieldMatrix& b,
                                 const SecureCode& code, std::uint64_t seed);
/// Shares under explicit key material (audits, tests).
std::vector<Share> encode_shares(const FieldMatrix& a, const FieldMatrix& b,
                                 const SecureCode& code,
                                 const KeyMaterial& key);
/// Shares for a subset of 1-based worker ids only.
std::vector<Share> encode_shares_for(const FieldMatrix& a,
                                     const FieldMatrix& b,
                                     const SecureCode& code,
                                     const KeyMaterial& key,
                                     std::span<const std::size_t> worker_ids);

WorkerResult worker_multiply(const Share& share);
/// Same product, checking `stop` between output rows; nullopt when
/// cancelled.
std::optional<WorkerResult> worker_multiply(const Share& share,
                                            std::stop_token stop);

/// Deterministic use order: lowest completion time first (missing times
/// last), then lowest worker id.
void order_results(std::vector<WorkerResult>& results);

/// Interpolates the product polynomial from the first P_R results (after
/// order_results) and assembles C = AB from the readout positions.
///
/// Throws InsufficientShares below the recovery threshold and
/// DuplicatePoint when a worker reports twice.
FieldMatrix decode_product(std::vector<WorkerResult> results,
                           const SecureCode& code);

/// Downloaded field symbols: P_R * T * D / (t * d).
std::uint64_t communication_load(std::size_t recovery_threshold,
                                 const PartitionSpec& spec);

enum class ComplexityRole { kWorker, kMasterEncode, kMasterDecode };

/// Multiplication counts: worker TSD/(tsd); master encoding
/// P*P_C*(TS/(ts) + SD/(sd)) + P*(TS + SD); master decoding
/// (P_R - 1) * log2(P_R - 1)^2 * TD/(td).
double complexity_estimate(const PartitionSpec& spec, std::size_t p_c,
                           std::size_t workers, std::size_t recovery_threshold,
                           ComplexityRole role);

struct TradeoffPoint {
  BlockSplit split;
  std::size_t p_c = 0;
  std::size_t recovery_threshold = 0;
  std::uint64_t communication_load = 0;
  std::size_t naive_recovery_threshold = 0;
};

TradeoffPoint tradeoff_point(const PartitionSpec& spec, std::size_t p_c);

}  // namespace sgpd
