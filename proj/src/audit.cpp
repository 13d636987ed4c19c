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


#include "sgpd/audit.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <cstdio>
#include <functional>
#include <limits>
#include <set>
#include <thread>

#include "json.hpp"
#include "sgpd/error.hpp"

namespace sgpd {
namespace {

// Observation vector with per-slot unit contributions. Enumerating a
// mixed-radix key index then reduces to vector additions.
struct LinearView {
  Observation base;
  std::vector<Observation> deltas;
};

void add_into(const PrimeField& f, Observation& acc, const Observation& delta,
              Element scale = 1) {
  for (std::size_t i = 0; i < acc.size(); ++i) {
    acc[i] = f.mul_add(delta[i], scale, acc[i]);
  }
}

std::uint64_t checked_power(std::uint64_t base, std::size_t exp,
                            std::uint64_t budget) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > budget / base) {
      throw BudgetExceeded("enumeration exceeds the budget of " +
                           std::to_string(budget) + " outcomes");
    }
    out *= base;
  }
  if (out > budget) {
    throw BudgetExceeded("enumeration exceeds the budget of " +
                         std::to_string(budget) + " outcomes");
  }
  return out;
}

// Enumerates every digit vector in [0, p)^n, where each step increments a
// single digit by one: wrapping p-1 -> 0 also adds the unit delta because
// p * delta = 0.
DistributionTable enumerate_linear(const PrimeField& f, const LinearView& view,
                                   std::uint64_t begin, std::uint64_t end) {
  DistributionTable table;
  const std::uint64_t p = f.modulus();
  const std::size_t n = view.deltas.size();
  std::vector<Element> digits(n);
  Observation obs = view.base;
  std::uint64_t rest = begin;
  for (std::size_t i = 0; i < n; ++i) {
    digits[i] = rest % p;
    rest /= p;
    add_into(f, obs, view.deltas[i], digits[i]);
  }
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    table.add(obs);
    for (std::size_t i = 0; i < n; ++i) {
      add_into(f, obs, view.deltas[i]);
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return table;
}

DistributionTable enumerate_parallel(const PrimeField& f,
                                     const LinearView& view,
                                     std::uint64_t space,
                                     std::size_t threads) {
  threads = std::max<std::size_t>(1, std::min<std::uint64_t>(threads, space));
  std::vector<DistributionTable> parts(threads);
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        parts[k] = enumerate_linear(f, view, space * k / threads,
                                    space * (k + 1) / threads);
      });
    }
  }
  DistributionTable out;
  for (const DistributionTable& part : parts) out.merge(part);
  return out;
}

Observation flatten_shares(const std::vector<Share>& shares) {
  Observation obs;
  for (const Share& s : shares) {
    obs.insert(obs.end(), s.a.entries().begin(), s.a.entries().end());
    obs.insert(obs.end(), s.b.entries().begin(), s.b.entries().end());
  }
  return obs;
}

struct KeySlot {
  bool in_b;
  std::size_t row;
  std::size_t col;
  std::size_t entry;
};

std::vector<KeySlot> key_slots(const SecureCode& code) {
  std::vector<KeySlot> slots;
  const PartitionSpec& spec = code.spec();
  const std::size_t a_entries = spec.a_block_rows() * spec.inner_block();
  const std::size_t b_entries = spec.inner_block() * spec.b_block_cols();
  for (const MapTerm& t : code.maps().a.terms) {
    if (t.source != TermSource::kRandom) continue;
    for (std::size_t e = 0; e < a_entries; ++e) slots.push_back({false, t.row, t.col, e});
  }
  for (const MapTerm& t : code.maps().b.terms) {
    if (t.source != TermSource::kRandom) continue;
    for (std::size_t e = 0; e < b_entries; ++e) slots.push_back({true, t.row, t.col, e});
  }
  return slots;
}

SecureCode audit_code(const AuditConfig& config) {
  std::vector<Element> pts;
  for (Element z = 1; z < config.field.modulus(); ++z) pts.push_back(z);
  const std::size_t workers = pts.size();
  return SecureCode::create(config.field, config.spec, config.p_c, workers,
                            EvalPointSet(config.field, std::move(pts)));
}

LinearView secrecy_view(const SecureCode& code, const AuditConfig& config,
                        const FieldMatrix& a, const FieldMatrix& b,
                        bool zero_keys) {
  const PrimeField& f = config.field;
  const PartitionSpec& spec = config.spec;
  const KeyMaterial zero = zero_key_material(f, code.plan(), spec);
  LinearView view;
  view.base = flatten_shares(encode_shares_for(a, b, code, zero, config.colluding));
  if (zero_keys) return view;
  const FieldMatrix za(f, spec.T(), spec.S());
  const FieldMatrix zb(f, spec.S(), spec.D());
  for (const KeySlot& slot : key_slots(code)) {
    KeyMaterial unit = zero;
    FieldMatrix& block = slot.in_b ? unit.r_prime.at(slot.row, slot.col)
                                   : unit.r.at(slot.row, slot.col);
    block.entries()[slot.entry] = 1;
    view.deltas.push_back(
        flatten_shares(encode_shares_for(za, zb, code, unit, config.colluding)));
  }
  return view;
}

double homogeneity_p_value(const DistributionTable& x,
                           const DistributionTable& y, std::size_t* bins_out) {
  std::set<Observation> keys;
  for (const auto& [k, v] : x.counts()) keys.insert(k);
  for (const auto& [k, v] : y.counts()) keys.insert(k);
  const double nx = static_cast<double>(x.total());
  const double ny = static_cast<double>(y.total());
  const double n = nx + ny;
  // Pool sparse categories so every expected count is at least 5.
  std::vector<std::pair<double, double>> bins;
  std::pair<double, double> pooled{0, 0};
  auto count_of = [](const DistributionTable& t, const Observation& k) {
    const auto it = t.counts().find(k);
    return it == t.counts().end() ? 0.0 : static_cast<double>(it->second);
  };
  for (const Observation& k : keys) {
    const double cx = count_of(x, k), cy = count_of(y, k);
    const double row = cx + cy;
    if (row * std::min(nx, ny) / n >= 5.0) {
      bins.push_back({cx, cy});
    } else {
      pooled.first += cx;
      pooled.second += cy;
    }
  }
  if (pooled.first + pooled.second > 0) bins.push_back(pooled);
  *bins_out = bins.size();
  if (bins.size() < 2) return 1.0;
  double stat = 0.0;
  for (const auto& [cx, cy] : bins) {
    const double row = cx + cy;
    const double ex = row * nx / n, ey = row * ny / n;
    stat += (cx - ex) * (cx - ex) / ex + (cy - ey) * (cy - ey) / ey;
  }
  const boost::math::chi_squared dist(static_cast<double>(bins.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

}  // namespace

void DistributionTable::add(const Observation& obs, std::uint64_t count) {
  counts_[obs] += count;
  total_ += count;
}

void DistributionTable::merge(const DistributionTable& other) {
  for (const auto& [obs, count] : other.counts_) add(obs, count);
}

std::uint64_t DistributionTable::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  for (const auto& [obs, count] : counts_) {
    feed(obs.size());
    for (Element e : obs) feed(e);
    feed(count);
  }
  return h;
}

std::string to_string(Verdict v) { return v == Verdict::kPass ? "PASS" : "FAIL"; }

void validate(const AuditConfig& config) {
  const std::uint64_t p = config.field.modulus();
  if (p > 11) throw InvalidArgument("audits need a field with p <= 11");
  if (config.p_c + 1 >= p) {
    throw InvalidArgument("audit field too small for P_C=" +
                          std::to_string(config.p_c));
  }
  if (config.budget == 0) throw InvalidArgument("budget must be positive");
  std::set<std::size_t> ids;
  for (std::size_t id : config.colluding) {
    if (id == 0 || id >= p) {
      throw InvalidArgument("colluding worker ids must lie in [1, p-1]");
    }
    if (!ids.insert(id).second) {
      throw InvalidArgument("colluding worker ids must be distinct");
    }
  }
}

AuditReport secrecy_audit(const AuditConfig& config, const FieldMatrix& a1,
                          const FieldMatrix& b1, const FieldMatrix& a2,
                          const FieldMatrix& b2, SecrecyOptions options) {
  validate(config);
  if (options.enforce_collusion_bound && config.colluding.size() > config.p_c) {
    throw InvalidArgument("colluding set larger than P_C");
  }
  const SecureCode code = audit_code(config);
  const LinearView v1 = secrecy_view(code, config, a1, b1, options.zero_keys);
  const LinearView v2 = secrecy_view(code, config, a2, b2, options.zero_keys);
  AuditReport report;
  report.kind = "secrecy";
  report.space_size =
      checked_power(config.field.modulus(), v1.deltas.size(), config.budget);
  report.first = enumerate_parallel(config.field, v1, report.space_size,
                                    config.threads);
  report.second = enumerate_parallel(config.field, v2, report.space_size,
                                     config.threads);
  if (report.first.total() != report.space_size ||
      report.second.total() != report.space_size) {
    throw InvalidArgument("enumeration did not cover the key space");
  }
  report.verdict = report.first == report.second ? Verdict::kPass : Verdict::kFail;
  if (options.zero_keys) report.notes.push_back("keys forced to zero");
  if (config.colluding.empty()) report.notes.push_back("empty colluding set");
  return report;
}

AuditReport sampled_secrecy_audit(const AuditConfig& config,
                                  const FieldMatrix& a1, const FieldMatrix& b1,
                                  const FieldMatrix& a2, const FieldMatrix& b2,
                                  std::uint64_t samples, std::uint64_t seed,
                                  double alpha) {
  validate(config);
  if (samples == 0) throw InvalidArgument("need at least one sample");
  const SecureCode code = audit_code(config);
  const PrimeField& f = config.field;
  AuditReport report;
  report.kind = "secrecy-sampled";
  report.statistical = true;
  report.space_size = samples;
  std::size_t which = 0;
  for (const auto* pair : {&a1, &a2}) {
    const FieldMatrix& b = which == 0 ? b1 : b2;
    const LinearView view = secrecy_view(code, config, *pair, b, false);
    CounterRng rng(seed, 0x73616d70 + which);
    DistributionTable& table = which == 0 ? report.first : report.second;
    for (std::uint64_t i = 0; i < samples; ++i) {
      Observation obs = view.base;
      for (const Observation& d : view.deltas) add_into(f, obs, d, f.random(rng));
      table.add(obs);
    }
    ++which;
  }
  std::size_t bins = 0;
  report.p_value = homogeneity_p_value(report.first, report.second, &bins);
  report.verdict = report.p_value >= alpha ? Verdict::kPass : Verdict::kFail;
  report.notes.push_back("statistical evidence only: chi-square homogeneity over " +
                         std::to_string(bins) + " bins");
  return report;
}

AuditReport privacy_audit(const AuditConfig& config, const FieldMatrix& a,
                          std::size_t library_size, std::size_t kappa1,
                          std::size_t kappa2, PrivacyOptions options) {
  validate(config);
  if (config.colluding.size() != 1) {
    throw InvalidArgument("privacy audits take a single worker view");
  }
  if (kappa1 == 0 || kappa2 == 0 || kappa1 > library_size ||
      kappa2 > library_size) {
    throw InvalidArgument("kappa must lie in [1, L]");
  }
  const PrimeField& f = config.field;
  const std::uint64_t p = f.modulus();
  const PsgpdCode code =
      PsgpdCode::create(f, config.spec, library_size, p - 1);
  const PartitionSpec& spec = config.spec;
  const MatrixPolynomial data = [&] {
    const BlockGrid blocks = split_blocks(a, spec.t(), spec.s());
    MatrixPolynomial out;
    for (const MapTerm& t : code.maps().a.terms) {
      if (t.source == TermSource::kData) {
        out.push_back({t.exponent, blocks.at(t.row, t.col)});
      }
    }
    return out;
  }();
  const std::size_t mask_entries = spec.a_block_rows() * spec.inner_block();
  const std::size_t mask_exp = code.mask_exponent();

  // Radices: L-1 decoys in F*, the kappa point in F* (or fixed), then the
  // mask entries in F.
  std::vector<std::uint64_t> radix(library_size - 1, p - 1);
  radix.push_back(options.fixed_kappa_point ? 1 : p - 1);
  radix.insert(radix.end(), mask_entries, p);
  std::uint64_t space = 1;
  for (std::uint64_t r : radix) {
    if (space > config.budget / r) {
      throw BudgetExceeded("enumeration exceeds the budget of " +
                           std::to_string(config.budget) + " outcomes");
    }
    space *= r;
  }

  auto table_for = [&](std::size_t kappa) {
    DistributionTable table;
    std::vector<std::uint64_t> digit(radix.size(), 0);
    for (std::uint64_t idx = 0; idx < space; ++idx) {
      Observation obs(library_size);
      std::size_t pos = 0;
      for (std::size_t r = 0; r < library_size; ++r) {
        if (r + 1 == kappa) continue;
        obs[r] = digit[pos++] + 1;
      }
      const Element z =
          options.fixed_kappa_point ? options.fixed_point : digit[pos] + 1;
      ++pos;
      obs[kappa - 1] = z;
      FieldMatrix ap = poly_eval_matrix(data, z);
      const Element zm = f.pow(z, mask_exp);
      for (std::size_t e = 0; e < mask_entries; ++e) {
        ap.entries()[e] = f.mul_add(digit[pos + e], zm, ap.entries()[e]);
      }
      obs.insert(obs.end(), ap.entries().begin(), ap.entries().end());
      table.add(obs);
      for (std::size_t i = 0; i < digit.size(); ++i) {
        if (++digit[i] < radix[i]) break;
        digit[i] = 0;
      }
    }
    return table;
  };

  AuditReport report;
  report.kind = "privacy";
  report.space_size = space;
  report.first = table_for(kappa1);
  report.second = table_for(kappa2);
  report.verdict = report.first == report.second ? Verdict::kPass : Verdict::kFail;
  if (options.fixed_kappa_point) {
    report.notes.push_back("kappa point fixed to a public constant");
  }
  return report;
}

AuditReport masked_secrecy_audit(const AuditConfig& config,
                                 const FieldMatrix& a1, const FieldMatrix& a2,
                                 Element z, SecrecyOptions options) {
  validate(config);
  const PrimeField& f = config.field;
  if (z == 0 || z >= f.modulus()) {
    throw InvalidArgument("evaluation point must be nonzero");
  }
  const PsgpdCode code = PsgpdCode::create(f, config.spec, 1, f.modulus() - 1);
  const PartitionSpec& spec = config.spec;
  const QueryBatch batch{1, {QueryVector{1, {z}}}};
  const KeyMaterial zero = zero_key_material(f, code.plan(), spec);
  auto view_of = [&](const FieldMatrix& a) {
    auto entries = [](const MaskedEncoding& e) {
      return Observation(e.a.entries().begin(), e.a.entries().end());
    };
    LinearView view;
    view.base = entries(encode_a_masked(a, code, batch, zero).front());
    const FieldMatrix za(f, spec.T(), spec.S());
    for (const MapTerm& t : code.maps().a.terms) {
      if (t.source != TermSource::kRandom || options.zero_keys) continue;
      for (std::size_t e = 0; e < spec.a_block_rows() * spec.inner_block(); ++e) {
        KeyMaterial unit = zero;
        unit.r.at(t.row, t.col).entries()[e] = 1;
        view.deltas.push_back(entries(encode_a_masked(za, code, batch, unit).front()));
      }
    }
    return view;
  };
  const LinearView v1 = view_of(a1);
  const LinearView v2 = view_of(a2);
  AuditReport report;
  report.kind = "masked-secrecy";
  report.space_size = checked_power(f.modulus(), v1.deltas.size(), config.budget);
  report.first = enumerate_parallel(f, v1, report.space_size, config.threads);
  report.second = enumerate_parallel(f, v2, report.space_size, config.threads);
  report.verdict = report.first == report.second ? Verdict::kPass : Verdict::kFail;
  return report;
}

namespace {

ThresholdCheck judge(std::size_t threshold, std::size_t count,
                     const std::function<FieldMatrix()>& decode,
                     const FieldMatrix& expect) {
  ThresholdCheck out;
  out.recovery_threshold = threshold;
  out.count = count;
  try {
    out.correct = decode() == expect;
    out.decoded = true;
  } catch (const InsufficientShares&) {
    out.insufficient_reported = true;
  }
  const bool ok = count >= threshold ? out.decoded && out.correct
                                     : out.insufficient_reported;
  out.verdict = ok ? Verdict::kPass : Verdict::kFail;
  return out;
}

void check_count(std::size_t count, std::size_t workers) {
  if (count > workers) {
    throw InvalidArgument("count " + std::to_string(count) +
                          " exceeds the worker count " +
                          std::to_string(workers));
  }
}

}  // namespace

ThresholdCheck threshold_failure_check(const SecureCode& code,
                                       std::size_t count, std::uint64_t seed) {
  check_count(count, code.workers());
  const PartitionSpec& spec = code.spec();
  CounterRng rng(seed, 0x746872);
  const FieldMatrix a = FieldMatrix::random(code.field(), spec.T(), spec.S(), rng);
  const FieldMatrix b = FieldMatrix::random(code.field(), spec.S(), spec.D(), rng);
  std::vector<WorkerResult> results;
  for (const Share& share : encode_shares(a, b, code, rng.next())) {
    if (results.size() == count) break;
    results.push_back(worker_multiply(share));
  }
  return judge(code.recovery_threshold(), count,
               [&] { return decode_product(results, code); }, multiply(a, b));
}

ThresholdCheck threshold_failure_check(const PsgpdCode& code,
                                       std::size_t count, std::uint64_t seed) {
  check_count(count, code.workers());
  const PartitionSpec& spec = code.spec();
  CounterRng rng(seed, 0x746872);
  const FieldMatrix a = FieldMatrix::random(code.field(), spec.T(), spec.S(), rng);
  const PublicLibrary library = PublicLibrary::random(
      code.field(), code.library_size(), spec.S(), spec.D(), rng.next());
  const std::size_t kappa = 1 + rng.uniform_below(code.library_size());
  const PsgpdRequest request = make_request(a, code, kappa, rng.next());
  std::vector<WorkerResult> results;
  for (const MaskedEncoding& enc : request.encodings) {
    if (results.size() == count) break;
    results.push_back(psgpd_worker(
        enc, library, request.batch.for_worker(enc.worker_id), code));
  }
  return judge(code.recovery_threshold(), count,
               [&] { return psgpd_decode(results, code, library, request); },
               multiply(a, library.at(kappa)));
}

std::string audit_json(const AuditConfig& config, const AuditReport& report) {
  char hash1[19], hash2[19];
  std::snprintf(hash1, sizeof hash1, "%016llx",
                static_cast<unsigned long long>(report.first.hash()));
  std::snprintf(hash2, sizeof hash2, "%016llx",
                static_cast<unsigned long long>(report.second.hash()));
  const PartitionSpec& spec = config.spec;
  nlohmann::ordered_json j;
  j["config"] = {{"field", config.field.modulus()},
                 {"dims", {spec.T(), spec.S(), spec.D()}},
                 {"split", {spec.t(), spec.s(), spec.d()}},
                 {"P_C", config.p_c},
                 {"colluding", config.colluding},
                 {"budget", config.budget}};
  j["audit"] = report.kind;
  j["verdict"] = to_string(report.verdict);
  j["table_hashes"] = {hash1, hash2};
  j["space_size"] = report.space_size;
  j["distinct_outcomes"] = {report.first.distinct(), report.second.distinct()};
  j["statistical"] = report.statistical;
  if (report.statistical) j["p_value"] = report.p_value;
  if (!report.notes.empty()) j["notes"] = report.notes;
  return j.dump(2);
}

}  // namespace sgpd
