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
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sgpd/field.hpp"
#include "sgpd/gpd.hpp"
#include "sgpd/partition.hpp"
#include "sgpd/psgpd.hpp"

namespace sgpd {

enum class CommModel {
  kSharedLink,
  // Not part of the reference model: every worker has its own link, so the
  // download costs one block transfer.
  kPerWorkerParallel,
};

struct LatencyModel {
  double t_min = 1.0;   // seconds
  double mu = 0.5e-4;   // 1 / (seconds * multiplication); +inf disables excess
  double r_comm = std::numeric_limits<double>::infinity();  // symbols/second
  CommModel comm = CommModel::kSharedLink;
};

void validate(const LatencyModel& model);

/// H_n = sum_{i=1..n} 1/i, H_0 = 0.
double harmonic(std::size_t n);

/// tsd / (mu TSD): mean excess time of one worker.
double compute_scale(const LatencyModel& model, const PartitionSpec& spec);
double communication_time(const LatencyModel& model, const PartitionSpec& spec,
                          std::size_t recovery_threshold);

/// T_min + scale * (H_P - H_{P-P_R}) + communication time.
double analytic_completion_time(const LatencyModel& model,
                                const PartitionSpec& spec, std::size_t workers,
                                std::size_t recovery_threshold);

struct SimulationStats {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double min = 0.0;
  double max = 0.0;
  double p50 = 0.0;
  double p90 = 0.0;
  double p99 = 0.0;
};

/// Monte-Carlo estimate of the completion time. Trial k draws from its own
/// counter stream, so the result does not depend on `threads`.
SimulationStats simulate_completion(const LatencyModel& model,
                                    const PartitionSpec& spec,
                                    std::size_t workers,
                                    std::size_t recovery_threshold,
                                    std::uint64_t trials, std::uint64_t seed,
                                    std::size_t threads = 1);

/// Shifted-exponential computing delays for P workers.
std::vector<double> sample_delays(const LatencyModel& model,
                                  const PartitionSpec& spec,
                                  std::size_t workers, std::uint64_t seed);

struct TimedRun {
  FieldMatrix product;
  double completion_seconds = 0.0;
  std::vector<std::size_t> workers_used;  // arrival order
  std::vector<double> delays;             // indexed by worker id - 1
  std::size_t cancelled = 0;              // stragglers stopped before finishing
};

/// Runs every worker on its own thread, decodes from the first P_R arrivals
/// in simulated time and cancels the rest.
TimedRun run_pipeline_timed(const SecureCode& code, const FieldMatrix& a,
                            const FieldMatrix& b, const LatencyModel& model,
                            std::uint64_t seed);
TimedRun run_pipeline_timed(const PsgpdCode& code, const FieldMatrix& a,
                            const PublicLibrary& library, std::size_t kappa,
                            const LatencyModel& model, std::uint64_t seed);

struct SweepRow {
  CodeFamily family = CodeFamily::kSgpd;
  BlockSplit split;
  std::size_t p_c = 0;
  std::size_t recovery_threshold = 0;
  std::uint64_t communication_load = 0;
  std::optional<double> expected_time;
  std::optional<double> empirical_time;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct SweepOptions {
  std::size_t T = 1008;
  std::size_t S = 1008;
  std::size_t D = 1008;
  std::optional<LatencyModel> model;
  std::uint64_t mc_trials = 0;  // 0 disables the empirical column
  std::uint64_t seed = 0;
};

/// All (t, s, d) with ts = m and sd = n, in increasing s. Rows whose
/// threshold exceeds P are kept; E_T is then left empty. Secure rows with
/// P_C = 0 are labelled GPD.
SweepResult tradeoff_sweep(std::size_t m, std::size_t n, std::size_t workers,
                           const std::vector<std::size_t>& p_c_list,
                           CodeFamily family, const SweepOptions& options = {});

/// Header `family,t,s,d,P_C,P_R,C_L,E_T`.
std::string to_csv(const SweepResult& result);

/// `steps` log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t steps);

std::string format_double(double v);

}  // namespace sgpd
