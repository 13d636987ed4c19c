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


#include "sgpd/psgpd.hpp"

#include <cmath>
#include <unordered_set>

#include "internal.hpp"
#include "sgpd/error.hpp"

namespace sgpd {

using detail::bind_terms;
using detail::check_input;

namespace {

constexpr std::uint64_t kQueryStream = 0x717279;
constexpr std::uint64_t kMaskStream = 0x6d61736b;

const MaskedEncoding& encoding_for(const PsgpdRequest& request,
                                   std::size_t worker_id) {
  for (const MaskedEncoding& e : request.encodings) {
    if (e.worker_id == worker_id) return e;
  }
  throw InconsistentQueries("no encoding recorded for worker " +
                            std::to_string(worker_id));
}

void check_batch(const QueryBatch& batch, std::size_t library_size) {
  if (batch.kappa == 0 || batch.kappa > library_size) {
    throw InvalidArgument("kappa must lie in [1, " +
                          std::to_string(library_size) + "]");
  }
  if (batch.queries.empty()) throw InconsistentQueries("empty query batch");
  const QueryVector& first = batch.queries.front();
  std::unordered_set<Element> points;
  for (const QueryVector& q : batch.queries) {
    if (q.entries.size() != library_size) {
      throw InconsistentQueries("query for worker " +
                                std::to_string(q.worker_id) + " has " +
                                std::to_string(q.entries.size()) +
                                " entries, library has " +
                                std::to_string(library_size));
    }
    for (std::size_t r = 0; r < library_size; ++r) {
      if (r + 1 != batch.kappa && q.entries[r] != first.entries[r]) {
        throw InconsistentQueries("decoy at position " + std::to_string(r + 1) +
                                  " differs across workers");
      }
    }
    if (!points.insert(q.entries[batch.kappa - 1]).second) {
      throw InconsistentQueries("repeated evaluation point at kappa");
    }
  }
}

}  // namespace

PublicLibrary::PublicLibrary(std::vector<FieldMatrix> matrices)
    : matrices_(std::move(matrices)) {
  if (matrices_.empty()) throw InvalidArgument("library must not be empty");
  for (const FieldMatrix& m : matrices_) {
    check_input(m, matrices_.front().field(), matrices_.front().rows(),
                matrices_.front().cols(), "library matrix");
  }
}

PublicLibrary PublicLibrary::random(const PrimeField& field, std::size_t count,
                                    std::size_t rows, std::size_t cols,
                                    std::uint64_t seed) {
  CounterRng rng(seed, 0x6c6962);
  std::vector<FieldMatrix> out;
  for (std::size_t r = 0; r < count; ++r) {
    out.push_back(FieldMatrix::random(field, rows, cols, rng));
  }
  return PublicLibrary(std::move(out));
}

const FieldMatrix& PublicLibrary::at(std::size_t r) const {
  if (r == 0 || r > matrices_.size()) {
    throw InvalidArgument("library index " + std::to_string(r) +
                          " out of range");
  }
  return matrices_[r - 1];
}

const QueryVector& QueryBatch::for_worker(std::size_t worker_id) const {
  for (const QueryVector& q : queries) {
    if (q.worker_id == worker_id) return q;
  }
  throw InconsistentQueries("no query for worker " + std::to_string(worker_id));
}

std::size_t psgpd_threshold_formula(const BlockSplit& split) {
  const auto [t, s, d] = split;
  if (s < t) return s * (t + 1) * d;
  return t * s * (d + 1) - t + 1;
}

PsgpdThreshold psgpd_threshold(const BlockSplit& split) {
  const CodeMaps maps = build_exponent_maps(plan_augmentation(split, 1), split,
                                            CodeFamily::kPsgpd);
  return PsgpdThreshold{max_degree(maps.a, maps.b) + 1,
                        psgpd_threshold_formula(split)};
}

PsgpdCode::PsgpdCode(PrimeField field, PartitionSpec spec,
                     AugmentationPlan plan, CodeMaps maps,
                     std::size_t library_size, std::size_t workers)
    : field_(field),
      spec_(spec),
      plan_(plan),
      maps_(std::move(maps)),
      library_size_(library_size),
      workers_(workers) {
  threshold_ = PsgpdThreshold{max_degree(maps_.a, maps_.b) + 1,
                              psgpd_threshold_formula(spec_.split())};
}

PsgpdCode PsgpdCode::create(const PrimeField& field, const PartitionSpec& spec,
                            std::size_t library_size, std::size_t workers,
                            std::size_t p_c) {
  if (p_c != 1) {
    throw Unsupported("private and secure codes support only P_C = 1");
  }
  if (library_size == 0) throw InvalidArgument("library must not be empty");
  if (workers < 2) throw InvalidArgument("need at least two workers");
  if (workers >= field.modulus()) {
    throw InvalidArgument("field must have more than P nonzero elements");
  }
  const AugmentationPlan plan = plan_augmentation(spec.split(), p_c);
  CodeMaps maps = build_exponent_maps(plan, spec.split(), CodeFamily::kPsgpd);
  PsgpdCode code(field, spec, plan, std::move(maps), library_size, workers);
  if (workers < code.threshold_.symbolic) {
    code.warnings_.push_back(
        "P=" + std::to_string(workers) + " is below the recovery threshold " +
        std::to_string(code.threshold_.symbolic));
  }
  if (code.threshold_.deviates()) {
    code.warnings_.push_back(
        "symbolic recovery threshold " +
        std::to_string(code.threshold_.symbolic) +
        " differs from the closed form " +
        std::to_string(code.threshold_.formula));
  }
  for (const std::string& d : code.maps_.diagnostics) {
    code.warnings_.push_back(d);
  }
  return code;
}

std::size_t PsgpdCode::mask_exponent() const {
  for (const MapTerm& term : maps_.a.terms) {
    if (term.source == TermSource::kRandom) return term.exponent;
  }
  throw InvalidArgument("code has no mask term");
}

QueryBatch build_queries(const PrimeField& field, std::size_t library_size,
                         std::size_t kappa, std::size_t workers,
                         std::uint64_t seed) {
  if (library_size == 0 || kappa == 0 || kappa > library_size) {
    throw InvalidArgument("kappa must lie in [1, L]");
  }
  if (workers >= field.modulus()) {
    throw InvalidArgument("field must have more than P nonzero elements");
  }
  CounterRng rng(seed, kQueryStream);
  std::vector<Element> shared(library_size, 0);
  for (std::size_t r = 0; r < library_size; ++r) {
    if (r + 1 != kappa) shared[r] = field.random_nonzero(rng);
  }
  const EvalPointSet points = sample_distinct_points(field, workers, rng.next());
  QueryBatch batch;
  batch.kappa = kappa;
  batch.queries.reserve(workers);
  for (std::size_t p = 1; p <= workers; ++p) {
    std::vector<Element> entries = shared;
    entries[kappa - 1] = points.for_worker(p);
    batch.queries.push_back({p, std::move(entries)});
  }
  return batch;
}

std::vector<MaskedEncoding> encode_a_masked(const FieldMatrix& a,
                                            const PsgpdCode& code,
                                            const QueryBatch& batch,
                                            const KeyMaterial& key) {
  const PartitionSpec& spec = code.spec();
  check_input(a, code.field(), spec.T(), spec.S(), "A");
  check_batch(batch, code.library_size());
  const MatrixPolynomial fa =
      bind_terms(code.maps().a, split_blocks(a, spec.t(), spec.s()), key.r);
  const std::size_t mask = code.mask_exponent();
  std::vector<MaskedEncoding> out;
  out.reserve(batch.queries.size());
  for (const QueryVector& q : batch.queries) {
    out.push_back({q.worker_id,
                   poly_eval_matrix(fa, q.entries[batch.kappa - 1]), mask});
  }
  return out;
}

std::vector<MaskedEncoding> encode_a_masked(const FieldMatrix& a,
                                            const PsgpdCode& code,
                                            const QueryBatch& batch,
                                            std::uint64_t seed) {
  CounterRng rng(seed, kMaskStream);
  const KeyMaterial key = draw_key_material(code.field(), code.plan(),
                                            code.maps(), code.spec(), rng);
  return encode_a_masked(a, code, batch, key);
}

FieldMatrix evaluate_library_entry(const FieldMatrix& b, const PsgpdCode& code,
                                   Element z) {
  const PartitionSpec& spec = code.spec();
  check_input(b, code.field(), spec.S(), spec.D(), "library matrix");
  const BlockGrid blocks = split_blocks(b, spec.s(), spec.d());
  MatrixPolynomial fb;
  fb.reserve(spec.n());
  for (const MapTerm& term : code.maps().b.terms) {
    if (term.source == TermSource::kData) {
      fb.push_back({term.exponent, blocks.at(term.row, term.col)});
    }
  }
  return poly_eval_matrix(fb, z);
}

FieldMatrix worker_encode_library(const PublicLibrary& library,
                                  const QueryVector& query,
                                  const PsgpdCode& code) {
  if (query.entries.size() != library.size()) {
    throw InconsistentQueries("query has " +
                              std::to_string(query.entries.size()) +
                              " entries, library has " +
                              std::to_string(library.size()));
  }
  FieldMatrix acc(code.field(), code.spec().inner_block(),
                  code.spec().b_block_cols());
  for (std::size_t r = 1; r <= library.size(); ++r) {
    acc += evaluate_library_entry(library.at(r), code, query.entries[r - 1]);
  }
  return acc;
}

WorkerResult psgpd_worker(const MaskedEncoding& encoding,
                          const PublicLibrary& library,
                          const QueryVector& query, const PsgpdCode& code) {
  const FieldMatrix b = worker_encode_library(library, query, code);
  return WorkerResult{encoding.worker_id, multiply(encoding.a, b),
                      std::nullopt};
}

PsgpdRequest make_request(const FieldMatrix& a, const PsgpdCode& code,
                          std::size_t kappa, std::uint64_t seed) {
  CounterRng rng(seed);
  PsgpdRequest request;
  request.batch = build_queries(code.field(), code.library_size(), kappa,
                                code.workers(), rng.next());
  request.encodings = encode_a_masked(a, code, request.batch, rng.next());
  return request;
}

FieldMatrix decoy_offset(const PublicLibrary& library, const QueryBatch& batch,
                         const PsgpdCode& code) {
  check_batch(batch, library.size());
  const QueryVector& q = batch.queries.front();
  FieldMatrix acc(code.field(), code.spec().inner_block(),
                  code.spec().b_block_cols());
  for (std::size_t r = 1; r <= library.size(); ++r) {
    if (r == batch.kappa) continue;
    acc += evaluate_library_entry(library.at(r), code, q.entries[r - 1]);
  }
  return acc;
}

FieldMatrix psgpd_decode(std::vector<WorkerResult> results,
                         const PsgpdCode& code, const PublicLibrary& library,
                         const PsgpdRequest& request) {
  const PartitionSpec& spec = code.spec();
  if (library.size() != code.library_size()) {
    throw InvalidArgument("library size does not match the code");
  }
  const FieldMatrix offset = decoy_offset(library, request.batch, code);

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
    const std::size_t id = results[i].worker_id;
    FieldMatrix value = std::move(results[i].product);
    value -= multiply(encoding_for(request, id).a, offset);
    samples.push_back({request.batch.kappa_point(id), std::move(value)});
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

double psgpd_complexity_estimate(const PartitionSpec& spec,
                                 std::size_t library_size, std::size_t workers,
                                 std::size_t recovery_threshold,
                                 ComplexityRole role) {
  const double T = static_cast<double>(spec.T());
  const double S = static_cast<double>(spec.S());
  const double D = static_cast<double>(spec.D());
  const double ts = static_cast<double>(spec.m());
  switch (role) {
    case ComplexityRole::kWorker:
      return static_cast<double>(library_size) * S * D +
             complexity_estimate(spec, 1, workers, recovery_threshold, role);
    case ComplexityRole::kMasterEncode:
      return static_cast<double>(workers) * (1.0 + ts) * T * S / ts;
    case ComplexityRole::kMasterDecode:
      return complexity_estimate(spec, 1, workers, recovery_threshold, role);
  }
  return 0.0;
}

}  // namespace sgpd
