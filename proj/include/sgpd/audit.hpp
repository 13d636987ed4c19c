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
#include <map>
#include <string>
#include <vector>

#include "sgpd/field.hpp"
#include "sgpd/gpd.hpp"
#include "sgpd/partition.hpp"
#include "sgpd/psgpd.hpp"

namespace sgpd {

/// Tiny instance for exhaustive audits. Worker p evaluates at z_p = p.
struct AuditConfig {
  PrimeField field{5};
  PartitionSpec spec{2, 2, 2, {1, 2, 1}};
  std::size_t p_c = 1;
  std::vector<std::size_t> colluding{1};
  std::uint64_t budget = std::uint64_t{1} << 22;
  std::size_t threads = 1;
};

void validate(const AuditConfig& config);

using Observation = std::vector<Element>;

class DistributionTable {
 public:
  void add(const Observation& obs, std::uint64_t count = 1);
  void merge(const DistributionTable& other);

  std::uint64_t total() const noexcept { return total_; }
  std::size_t distinct() const noexcept { return counts_.size(); }
  const std::map<Observation, std::uint64_t>& counts() const noexcept {
    return counts_;
  }
  /// FNV-1a over the sorted (observation, count) pairs.
  std::uint64_t hash() const;

  friend bool operator==(const DistributionTable&,
                         const DistributionTable&) = default;

 private:
  std::map<Observation, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

enum class Verdict { kPass, kFail };
std::string to_string(Verdict v);

struct AuditReport {
  std::string kind;
  Verdict verdict = Verdict::kFail;
  std::uint64_t space_size = 0;  // enumerated (or sampled) outcomes per table
  bool statistical = false;
  double p_value = 1.0;  // statistical audits only
  DistributionTable first;
  DistributionTable second;
  std::vector<std::string> notes;
};

struct SecrecyOptions {
  bool zero_keys = false;  // sabotage: all key blocks forced to zero
  bool enforce_collusion_bound = true;
};

/// Exact distribution of the colluders' shares over every key, for two
/// input pairs. PASS iff the two tables coincide.
AuditReport secrecy_audit(const AuditConfig& config, const FieldMatrix& a1,
                          const FieldMatrix& b1, const FieldMatrix& a2,
                          const FieldMatrix& b2, SecrecyOptions options = {});

/// Sampled variant for instances beyond exhaustive reach: a chi-square
/// homogeneity test at the given significance. Statistical evidence only.
AuditReport sampled_secrecy_audit(const AuditConfig& config,
                                  const FieldMatrix& a1, const FieldMatrix& b1,
                                  const FieldMatrix& a2, const FieldMatrix& b2,
                                  std::uint64_t samples, std::uint64_t seed,
                                  double alpha = 0.01);

struct PrivacyOptions {
  bool fixed_kappa_point = false;  // sabotage: z_{kappa,p} is a public constant
  Element fixed_point = 1;
};

/// Exact distribution of one worker's view (query, masked A) for two
/// desired indices. PASS iff identical.
AuditReport privacy_audit(const AuditConfig& config, const FieldMatrix& a,
                          std::size_t library_size, std::size_t kappa1,
                          std::size_t kappa2, PrivacyOptions options = {});

/// Single-worker view of the masked A at a fixed point, for two inputs.
AuditReport masked_secrecy_audit(const AuditConfig& config,
                                 const FieldMatrix& a1, const FieldMatrix& a2,
                                 Element z, SecrecyOptions options = {});

struct ThresholdCheck {
  std::size_t recovery_threshold = 0;
  std::size_t count = 0;
  bool decoded = false;
  bool correct = false;
  bool insufficient_reported = false;
  Verdict verdict = Verdict::kFail;
};

/// Runs a random instance with `count` results. PASS iff the decoder
/// succeeds exactly when count >= P_R and otherwise reports
/// InsufficientShares.
ThresholdCheck threshold_failure_check(const SecureCode& code,
                                       std::size_t count, std::uint64_t seed);
ThresholdCheck threshold_failure_check(const PsgpdCode& code,
                                       std::size_t count, std::uint64_t seed);

/// {"config": ..., "verdict": ..., "table_hashes": [...], ...}
std::string audit_json(const AuditConfig& config, const AuditReport& report);

}  // namespace sgpd
