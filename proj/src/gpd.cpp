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


#include "sgpd/gpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "internal.hpp"
#include "sgpd/error.hpp"

namespace sgpd {
using detail::bind_terms;
using detail::check_input;

std::size_t gpd_threshold_formula(const BlockSplit& split) {
  return split.t * split.s * split.d + split.s - 1;
}

std::size_t sgpd_threshold_formula(const AugmentationPlan& plan,
                                   const BlockSplit& split) {
  const auto [t, s, d] = split;
  const std::size_t pc = plan.p_c;
  if (pc == 0) return gpd_threshold_formula(split);
  if (plan.regime == Regime::kSLessT) {
    const std::size_t base = plan.t_star * s * (d + 1);
    if (plan.zero_block_count == 0) return base + s * plan.delta - 1;
    return base - s * plan.delta + 2 * pc - 1;
  }
  return t * (plan.s_star * d - plan.delta) + t * s + 2 * pc - 1;
}

std::size_t naive_threshold_formula(const AugmentationPlan& plan,
                                    const BlockSplit& split) {
  const auto [t, s, d] = split;
  if (plan.p_c == 0) return gpd_threshold_formula(split);
  if (plan.regime == Regime::kSLessT) {
    if (plan.zero_block_count == 0) {
      return plan.t_star * s * plan.d_star + s - 1;
    }
    return plan.d_star * s * plan.t_star + s - 1 -
           2 * (s * plan.delta - plan.p_c);
  }
  // Plain GPD over the t x s* and s* x d augmented block matrices.
  return t * plan.s_star * d + plan.s_star - 1;
}

ThresholdReport recovery_threshold(const AugmentationPlan& plan,
                                   const BlockSplit& split) {
  const CodeMaps maps = build_exponent_maps(plan, split);
  return ThresholdReport{max_degree(maps.a, maps.b) + 1,
                         sgpd_threshold_formula(plan, split),
                         naive_threshold_formula(plan, split)};
}

SecureCode::SecureCode(PrimeField field, PartitionSpec spec,
                       AugmentationPlan plan, CodeMaps maps,
                       EvalPointSet points, ThresholdReport threshold)
    : field_(field),
      spec_(spec),
      plan_(plan),
      maps_(std::move(maps)),
      points_(std::move(points)),
      threshold_(threshold) {}

SecureCode SecureCode::create(const PrimeField& field,
                              const PartitionSpec& spec, std::size_t p_c,
                              std::size_t workers, EvalPointSet points) {
  if (workers == 0) throw InvalidArgument("need at least one worker");
  if (points.size() != workers) {
    throw InvalidArgument("expected " + std::to_string(workers) +
                          " evaluation points, got " +
                          std::to_string(points.size()));
  }
  if (p_c >= workers) {
    throw InvalidArgument("colluding set size must be below the worker count");
  }
  const AugmentationPlan plan = plan_augmentation(spec.split(), p_c);
  CodeMaps maps = build_exponent_maps(plan, spec.split());
  const ThresholdReport threshold{max_degree(maps.a, maps.b) + 1,
                                  sgpd_threshold_formula(plan, spec.split()),
                                  naive_threshold_formula(plan, spec.split())};
  SecureCode code(field, spec, plan, std::move(maps), std::move(points),
                  threshold);
  if (workers < threshold.symbolic) {
    code.warnings_.push_back(
        "P=" + std::to_string(workers) + " is below the recovery threshold " +
        std::to_string(threshold.symbolic) + "; decoding will be impossible");
  }
  if (threshold.deviates()) {
    code.warnings_.push_back(
        "symbolic recovery threshold " + std::to_string(threshold.symbolic) +
        " differs from the closed form " + std::to_string(threshold.formula));
  }
  for (const std::string& d : code.maps_.diagnostics) {
    code.warnings_.push_back(d);
  }
  return code;
}

SecureCode SecureCode::create(const PrimeField& field,
                              const PartitionSpec& spec, std::size_t p_c,
                              std::size_t workers, std::uint64_t point_seed) {
  return create(field, spec, p_c, workers,
                sample_distinct_points(field, workers, point_seed));
}

std::vector<Share> encode_shares_for(const FieldMatrix& a,
                                     const FieldMatrix& b,
                                     const SecureCode& code,
                                     const KeyMaterial& key,
                                     std::span<const std::size_t> worker_ids) {
  const PartitionSpec& spec = code.spec();
  check_input(a, code.field(), spec.T(), spec.S(), "A");
  check_input(b, code.field(), spec.S(), spec.D(), "B");
  const BlockGrid a_blocks = split_blocks(a, spec.t(), spec.s());
  const BlockGrid b_blocks = split_blocks(b, spec.s(), spec.d());
  const MatrixPolynomial fa = bind_terms(code.maps().a, a_blocks, key.r);
  const MatrixPolynomial fb = bind_terms(code.maps().b, b_blocks, key.r_prime);

  std::vector<Share> shares;
  shares.reserve(worker_ids.size());
  for (std::size_t id : worker_ids) {
    const Element z = code.points().for_worker(id);
    shares.push_back({id, z, poly_eval_matrix(fa, z), poly_eval_matrix(fb, z)});
  }
  return shares;
}

std::vector<Share> encode_shares(const FieldMatrix& a, const FieldMatrix& b,
                                 const SecureCode& code,
                                 const KeyMaterial& key) {
  std::vector<std::size_t> ids(code.workers());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i + 1;
  return encode_shares_for(a, b, code, key, ids);
}

std::vector<Share> encode_shares(const FieldMatrix& a, const FieldMatrix& b,
                                 const SecureCode& code, std::uint64_t seed) {
  CounterRng rng(seed, 0x6b6579);
  const KeyMaterial key = draw_key_material(code.field(), code.plan(),
                                            code.maps(), code.spec(), rng);
  return encode_shares(a, b, code, key);
}

WorkerResult worker_multiply(const Share& share) {
  return WorkerResult{share.worker_id, multiply(share.a, share.b),
                      std::nullopt};
}

std::optional<WorkerResult> worker_multiply(const Share& share,
                                            std::stop_token stop) {
  FieldMatrix out(share.a.field(), share.a.rows(), share.b.cols());
  for (std::size_t r = 0; r < share.a.rows(); ++r) {
    if (stop.stop_requested()) return std::nullopt;
    multiply_rows(share.a, share.b, out, r, r + 1);
  }
  return WorkerResult{share.worker_id, std::move(out), std::nullopt};
}

void order_results(std::vector<WorkerResult>& results) {
  static constexpr double kLast = std::numeric_limits<double>::infinity();
  std::stable_sort(results.begin(), results.end(),
                   [](const WorkerResult& x, const WorkerResult& y) {
                     const double tx = x.completion_time.value_or(kLast);
                     const double ty = y.completion_time.value_or(kLast);
                     if (tx != ty) return tx < ty;
                     return x.worker_id < y.worker_id;
                   });
}

FieldMatrix decode_product(std::vector<WorkerResult> results,
                           const SecureCode& code) {
  const PartitionSpec& spec = code.spec();
  std::unordered_set<std::size_t> seen;
  for (const WorkerResult& r : results) {
    if (!seen.insert(r.worker_id).second) {
      throw DuplicatePoint("worker " + std::to_string(r.worker_id) +
                           " reported more than once");
    }
    check_input(r.product, code.field(), spec.a_block_rows(),
                spec.b_block_cols(), "worker result");
  }
  const std::size_t threshold = code.recovery_threshold();
  if (results.size() < threshold) {
    throw InsufficientShares("decoding needs " + std::to_string(threshold) +
                             " worker results, got " +
                             std::to_string(results.size()));
  }
  order_results(results);

  std::vector<EvalSample> samples;
  samples.reserve(threshold);
  for (std::size_t i = 0; i < threshold; ++i) {
    samples.push_back({code.points().for_worker(results[i].worker_id),
                       std::move(results[i].product)});
  }
  const MatrixPolynomial poly = interpolate(samples, threshold - 1);

  std::vector<FieldMatrix> blocks;
  blocks.reserve(spec.t() * spec.d());
  for (std::size_t i = 0; i < spec.t(); ++i) {
    for (std::size_t l = 0; l < spec.d(); ++l) {
      blocks.push_back(poly.at(code.maps().readout.at(i, l)).value);
    }
  }
  return join_blocks(BlockGrid(spec.t(), spec.d(), std::move(blocks)));
}

std::uint64_t communication_load(std::size_t recovery_threshold,
                                 const PartitionSpec& spec) {
  if (recovery_threshold == 0) {
    throw InvalidArgument("recovery threshold must be positive");
  }
  return static_cast<std::uint64_t>(recovery_threshold) *
         spec.a_block_rows() * spec.b_block_cols();
}

double complexity_estimate(const PartitionSpec& spec, std::size_t p_c,
                           std::size_t workers, std::size_t recovery_threshold,
                           ComplexityRole role) {
  const double T = static_cast<double>(spec.T());
  const double S = static_cast<double>(spec.S());
  const double D = static_cast<double>(spec.D());
  const double ts = static_cast<double>(spec.m());
  const double sd = static_cast<double>(spec.n());
  const double td = static_cast<double>(spec.t() * spec.d());
  switch (role) {
    case ComplexityRole::kWorker:
      return T * S * D / (ts * static_cast<double>(spec.d()));
    case ComplexityRole::kMasterEncode: {
      const double P = static_cast<double>(workers);
      return P * static_cast<double>(p_c) * (T * S / ts + S * D / sd) +
             P * (T * S + S * D);
    }
    case ComplexityRole::kMasterDecode: {
      if (recovery_threshold <= 1) return 0.0;
      const double n = static_cast<double>(recovery_threshold - 1);
      const double lg = std::log2(n);
      return n * lg * lg * T * D / td;
    }
  }
  return 0.0;
}

TradeoffPoint tradeoff_point(const PartitionSpec& spec, std::size_t p_c) {
  const AugmentationPlan plan = plan_augmentation(spec.split(), p_c);
  const ThresholdReport report = recovery_threshold(plan, spec.split());
  return TradeoffPoint{spec.split(), p_c, report.symbolic,
                       communication_load(report.symbolic, spec),
                       report.naive};
}

}  // namespace sgpd
