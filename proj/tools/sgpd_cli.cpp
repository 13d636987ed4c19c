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


// Command-line front end: demo, tradeoff, simulate, audit, latency.

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgpd/audit.hpp"
#include "sgpd/error.hpp"
#include "sgpd/field.hpp"
#include "sgpd/gpd.hpp"
#include "sgpd/latency.hpp"
#include "sgpd/psgpd.hpp"

#ifndef SGPD_PRESET_DIR
#define SGPD_PRESET_DIR "presets"
#endif

namespace {

using nlohmann::ordered_json;
using Triple = std::array<std::size_t, 3>;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string family = "sgpd";
  std::uint64_t field = 2147483647;
  Triple dims{4, 4, 4};
  std::vector<Triple> splits{{2, 2, 2}};
  bool splits_explicit = false;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t P = 16;
  std::vector<std::size_t> pc{0};
  std::size_t L = 2;
  std::size_t kappa = 1;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10000;
  std::string rcomm_grid = "1e6:1e12:13";
  sgpd::LatencyModel model;
  bool has_model = false;
  std::vector<std::size_t> colluding;
  std::uint64_t budget = std::uint64_t{1} << 22;
  std::size_t threads = 1;
  bool sabotage = false;
  std::string out;
};

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::size_t parse_size(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size() || s.empty() || s[0] == '-') {
    throw UsageError("not a non-negative integer: '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& s) {
  if (s == "inf") return kInf;
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

std::vector<std::size_t> parse_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_on(s, ',')) out.push_back(parse_size(item));
  return out;
}

Triple parse_triple(const std::string& s, char sep, const char* what) {
  const auto parts = split_on(s, sep);
  if (parts.size() != 3) {
    throw UsageError(std::string(what) + " needs three values, got '" + s + "'");
  }
  return {parse_size(parts[0]), parse_size(parts[1]), parse_size(parts[2])};
}

double json_real(const nlohmann::json& v) {
  return v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>();
}

void apply_json(RunConfig& c, const nlohmann::json& j) {
  for (const auto& [key, v] : j.items()) {
    if (key == "family") c.family = v.get<std::string>();
    else if (key == "field") c.field = v.get<std::uint64_t>();
    else if (key == "dims") c.dims = v.get<Triple>();
    else if (key == "split") { c.splits = {v.get<Triple>()}; c.splits_explicit = true; }
    else if (key == "splits") { c.splits = v.get<std::vector<Triple>>(); c.splits_explicit = true; }
    else if (key == "m") c.m = v.get<std::size_t>();
    else if (key == "n") c.n = v.get<std::size_t>();
    else if (key == "P") c.P = v.get<std::size_t>();
    else if (key == "pc") c.pc = v.is_array() ? v.get<std::vector<std::size_t>>()
                                               : std::vector<std::size_t>{v.get<std::size_t>()};
    else if (key == "L") c.L = v.get<std::size_t>();
    else if (key == "kappa") c.kappa = v.get<std::size_t>();
    else if (key == "seed") c.seed = v.get<std::uint64_t>();
    else if (key == "trials") c.trials = v.get<std::uint64_t>();
    else if (key == "rcomm_grid") c.rcomm_grid = v.get<std::string>();
    else if (key == "colluding") c.colluding = v.get<std::vector<std::size_t>>();
    else if (key == "budget") c.budget = v.get<std::uint64_t>();
    else if (key == "threads") c.threads = v.get<std::size_t>();
    else if (key == "model") {
      c.has_model = true;
      if (v.contains("t_min")) c.model.t_min = json_real(v["t_min"]);
      if (v.contains("mu")) c.model.mu = json_real(v["mu"]);
      if (v.contains("r_comm")) c.model.r_comm = json_real(v["r_comm"]);
    } else {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return nlohmann::json::parse(in);
}

std::string preset_path(const std::string& name) {
  if (name.find('/') != std::string::npos || name.ends_with(".json")) return name;
  const char* env = std::getenv("SGPD_PRESET_DIR");
  return std::string(env ? env : SGPD_PRESET_DIR) + "/" + name + ".json";
}

sgpd::CodeFamily family_of(const RunConfig& c) {
  if (c.family == "gpd") return sgpd::CodeFamily::kGpd;
  if (c.family == "sgpd") return sgpd::CodeFamily::kSgpd;
  if (c.family == "psgpd") return sgpd::CodeFamily::kPsgpd;
  throw UsageError("family must be gpd, sgpd or psgpd");
}

std::size_t single_pc(const RunConfig& c) {
  if (c.pc.size() != 1) throw UsageError("this command takes a single --pc value");
  const std::size_t p_c = c.pc.front();
  if (family_of(c) == sgpd::CodeFamily::kGpd && p_c != 0) {
    throw UsageError("family gpd requires --pc 0");
  }
  return p_c;
}

sgpd::PartitionSpec spec_of(const RunConfig& c, const Triple& split) {
  return sgpd::PartitionSpec(c.dims[0], c.dims[1], c.dims[2],
                             {split[0], split[1], split[2]});
}

std::size_t threshold_of(sgpd::CodeFamily family, const sgpd::BlockSplit& sp,
                         std::size_t p_c) {
  if (family == sgpd::CodeFamily::kPsgpd) return sgpd::psgpd_threshold(sp).symbolic;
  return sgpd::recovery_threshold(sgpd::plan_augmentation(sp, p_c), sp).symbolic;
}

std::vector<std::size_t> colluding_of(const RunConfig& c, std::size_t p_c) {
  if (!c.colluding.empty()) return c.colluding;
  std::vector<std::size_t> ids(p_c);
  std::iota(ids.begin(), ids.end(), std::size_t{1});
  return ids;
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + c.out + "'");
  f << text;
}

std::string split_label(const sgpd::PartitionSpec& spec) {
  return "t=" + std::to_string(spec.t()) + " s=" + std::to_string(spec.s()) +
         " d=" + std::to_string(spec.d());
}

int run_demo(const RunConfig& c) {
  const sgpd::CodeFamily family = family_of(c);
  const std::size_t p_c = single_pc(c);
  const sgpd::PrimeField field(c.field);
  const sgpd::PartitionSpec spec = spec_of(c, c.splits.front());
  sgpd::CounterRng rng(c.seed, 0x64656d6f);
  const sgpd::FieldMatrix a = sgpd::FieldMatrix::random(field, spec.T(), spec.S(), rng);
  std::ostringstream os;
  bool ok = false;
  ordered_json summary;
  if (family == sgpd::CodeFamily::kPsgpd) {
    const auto code = sgpd::PsgpdCode::create(field, spec, c.L, c.P, p_c);
    if (c.P < code.recovery_threshold()) {
      throw sgpd::InsufficientShares(code.warnings().front());
    }
    const auto library = sgpd::PublicLibrary::random(field, c.L, spec.S(), spec.D(), rng.next());
    const auto request = sgpd::make_request(a, code, c.kappa, rng.next());
    std::vector<sgpd::WorkerResult> results;
    for (const auto& enc : request.encodings) {
      results.push_back(sgpd::psgpd_worker(enc, library,
                                           request.batch.for_worker(enc.worker_id), code));
    }
    const sgpd::FieldMatrix got = sgpd::psgpd_decode(results, code, library, request);
    ok = got == sgpd::multiply(a, library.at(c.kappa));
    os << "family: PSGPD  " << split_label(spec) << "  P=" << c.P
       << "  L=" << c.L << "  kappa=" << c.kappa << "\n"
       << "recovery threshold: " << code.recovery_threshold()
       << " (closed form " << code.threshold().formula << ")\n";
    for (const auto& w : code.warnings()) os << "note: " << w << "\n";
    summary["recovery_threshold"] = code.recovery_threshold();
  } else {
    const auto code = sgpd::SecureCode::create(field, spec, p_c, c.P, rng.next());
    if (c.P < code.recovery_threshold()) {
      throw sgpd::InsufficientShares(code.warnings().front());
    }
    const sgpd::FieldMatrix b = sgpd::FieldMatrix::random(field, spec.S(), spec.D(), rng);
    std::vector<sgpd::WorkerResult> results;
    for (const auto& share : sgpd::encode_shares(a, b, code, rng.next())) {
      results.push_back(sgpd::worker_multiply(share));
    }
    ok = sgpd::decode_product(results, code) == sgpd::multiply(a, b);
    os << "family: " << sgpd::to_string(code.family()) << "  " << split_label(spec)
       << "  P=" << c.P << "  P_C=" << p_c << "\n"
       << "recovery threshold: " << code.recovery_threshold()
       << " (closed form " << code.threshold().formula << ")\n"
       << "communication load: "
       << sgpd::communication_load(code.recovery_threshold(), spec) << "\n";
    for (const auto& w : code.warnings()) os << "note: " << w << "\n";
    summary["recovery_threshold"] = code.recovery_threshold();
  }
  os << "C == A*B: " << (ok ? "true" : "false") << "\n";
  std::cout << os.str();
  if (!c.out.empty()) {
    summary["family"] = c.family;
    summary["correct"] = ok;
    emit(c, summary.dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

std::pair<std::size_t, std::size_t> grid_shape(const RunConfig& c) {
  if (c.m != 0 && c.n != 0) return {c.m, c.n};
  const Triple& sp = c.splits.front();
  return {sp[0] * sp[1], sp[1] * sp[2]};
}

int run_tradeoff(const RunConfig& c) {
  const auto [m, n] = grid_shape(c);
  sgpd::SweepOptions opt;
  opt.T = c.dims[0];
  opt.S = c.dims[1];
  opt.D = c.dims[2];
  if (c.has_model) opt.model = c.model;
  const sgpd::SweepResult r = sgpd::tradeoff_sweep(m, n, c.P, c.pc, family_of(c), opt);
  emit(c, sgpd::to_csv(r));
  return 0;
}

int run_simulate(const RunConfig& c) {
  const sgpd::CodeFamily family = family_of(c);
  const std::size_t p_c = single_pc(c);
  const sgpd::PrimeField field(c.field);
  const sgpd::PartitionSpec spec = spec_of(c, c.splits.front());
  sgpd::validate(c.model);
  sgpd::CounterRng rng(c.seed, 0x73696d);
  const sgpd::FieldMatrix a = sgpd::FieldMatrix::random(field, spec.T(), spec.S(), rng);
  std::optional<sgpd::TimedRun> run;
  bool ok = false;
  std::size_t threshold = 0;
  if (family == sgpd::CodeFamily::kPsgpd) {
    const auto code = sgpd::PsgpdCode::create(field, spec, c.L, c.P, p_c);
    threshold = code.recovery_threshold();
    if (c.P < threshold) throw sgpd::InsufficientShares(code.warnings().front());
    const auto library = sgpd::PublicLibrary::random(field, c.L, spec.S(), spec.D(), rng.next());
    run = sgpd::run_pipeline_timed(code, a, library, c.kappa, c.model, rng.next());
    ok = run->product == sgpd::multiply(a, library.at(c.kappa));
  } else {
    const auto code = sgpd::SecureCode::create(field, spec, p_c, c.P, rng.next());
    threshold = code.recovery_threshold();
    if (c.P < threshold) throw sgpd::InsufficientShares(code.warnings().front());
    const sgpd::FieldMatrix b = sgpd::FieldMatrix::random(field, spec.S(), spec.D(), rng);
    run = sgpd::run_pipeline_timed(code, a, b, c.model, rng.next());
    ok = run->product == sgpd::multiply(a, b);
  }
  const sgpd::SimulationStats mc = sgpd::simulate_completion(
      c.model, spec, c.P, threshold, c.trials, c.seed, c.threads);
  ordered_json j;
  j["family"] = c.family;
  j["split"] = c.splits.front();
  j["P"] = c.P;
  j["P_C"] = p_c;
  j["P_R"] = threshold;
  j["pipeline"] = {{"correct", ok},
                   {"completion_seconds", run->completion_seconds},
                   {"workers_used", run->workers_used},
                   {"cancelled", run->cancelled}};
  j["analytic_E_T"] = sgpd::analytic_completion_time(c.model, spec, c.P, threshold);
  j["monte_carlo"] = {{"trials", mc.trials}, {"mean", mc.mean},
                      {"stddev", mc.stddev}, {"p50", mc.p50},
                      {"p90", mc.p90},       {"p99", mc.p99}};
  emit(c, j.dump(2) + "\n");
  return ok ? 0 : 1;
}

int run_audit(const RunConfig& c) {
  const sgpd::CodeFamily family = family_of(c);
  const std::size_t p_c = single_pc(c);
  sgpd::AuditConfig ac;
  ac.field = sgpd::PrimeField(c.field);
  ac.spec = spec_of(c, c.splits.front());
  ac.p_c = p_c;
  ac.colluding = colluding_of(c, p_c);
  ac.budget = c.budget;
  ac.threads = c.threads;
  sgpd::validate(ac);
  const sgpd::PartitionSpec& spec = ac.spec;
  sgpd::CounterRng rng(c.seed, 0x617564);
  auto rand = [&](std::size_t r, std::size_t k) {
    return sgpd::FieldMatrix::random(ac.field, r, k, rng);
  };
  ordered_json audits = ordered_json::array();
  bool pass = true;
  auto record = [&](const sgpd::AuditReport& report) {
    audits.push_back(ordered_json::parse(sgpd::audit_json(ac, report)));
    pass = pass && report.verdict == sgpd::Verdict::kPass;
  };
  sgpd::ThresholdCheck below, at;
  if (family == sgpd::CodeFamily::kPsgpd) {
    ac.colluding.resize(1);
    const sgpd::FieldMatrix a1 = rand(spec.T(), spec.S());
    const sgpd::FieldMatrix a2 = rand(spec.T(), spec.S());
    sgpd::PrivacyOptions opt;
    opt.fixed_kappa_point = c.sabotage;
    for (std::size_t k = 1; k <= c.L; ++k) {
      if (k != c.kappa) record(sgpd::privacy_audit(ac, a1, c.L, c.kappa, k, opt));
    }
    if (c.L == 1) record(sgpd::privacy_audit(ac, a1, 1, 1, 1, opt));
    sgpd::SecrecyOptions mask_opt;
    mask_opt.zero_keys = c.sabotage;
    record(sgpd::masked_secrecy_audit(ac, a1, a2, ac.colluding.front(), mask_opt));
    const auto code = sgpd::PsgpdCode::create(ac.field, spec, c.L, c.P, p_c);
    const std::size_t pr = code.recovery_threshold();
    if (c.P < pr) throw sgpd::InsufficientShares(code.warnings().front());
    below = sgpd::threshold_failure_check(code, pr - 1, c.seed);
    at = sgpd::threshold_failure_check(code, pr, c.seed);
  } else {
    const sgpd::FieldMatrix a1 = rand(spec.T(), spec.S()), b1 = rand(spec.S(), spec.D());
    const sgpd::FieldMatrix a2 = rand(spec.T(), spec.S()), b2 = rand(spec.S(), spec.D());
    sgpd::SecrecyOptions opt;
    opt.zero_keys = c.sabotage;
    record(sgpd::secrecy_audit(ac, a1, b1, a2, b2, opt));
    const auto code = sgpd::SecureCode::create(ac.field, spec, p_c, c.P, c.seed);
    const std::size_t pr = code.recovery_threshold();
    if (c.P < pr) throw sgpd::InsufficientShares(code.warnings().front());
    below = sgpd::threshold_failure_check(code, pr - 1, c.seed);
    at = sgpd::threshold_failure_check(code, pr, c.seed);
  }
  for (const auto* chk : {&below, &at}) {
    ordered_json t;
    t["audit"] = "threshold";
    t["count"] = chk->count;
    t["recovery_threshold"] = chk->recovery_threshold;
    t["decoded"] = chk->decoded;
    t["insufficient_reported"] = chk->insufficient_reported;
    t["verdict"] = sgpd::to_string(chk->verdict);
    audits.push_back(t);
    pass = pass && chk->verdict == sgpd::Verdict::kPass;
  }
  ordered_json j;
  j["family"] = c.family;
  j["verdict"] = pass ? "PASS" : "FAIL";
  j["audits"] = audits;
  emit(c, j.dump(2) + "\n");
  return pass ? 0 : 1;
}

int run_latency(const RunConfig& c) {
  const sgpd::CodeFamily family = family_of(c);
  sgpd::validate(c.model);
  const auto parts = split_on(c.rcomm_grid, ':');
  if (parts.size() != 3) throw UsageError("--rcomm-grid needs lo:hi:steps");
  const std::vector<double> grid =
      sgpd::log_grid(parse_real(parts[0]), parse_real(parts[1]), parse_size(parts[2]));
  std::vector<Triple> splits = c.splits;
  if (!c.splits_explicit && c.m != 0 && c.n != 0) {
    splits.clear();
    const std::size_t g = std::gcd(c.m, c.n);
    for (std::size_t s = 1; s <= g; ++s) {
      if (g % s == 0) splits.push_back({c.m / s, s, c.n / s});
    }
  }
  std::string csv = "family,t,s,d,P_C,P_R,C_L,R_comm,E_T\n";
  for (std::size_t p_c : c.pc) {
    if (family == sgpd::CodeFamily::kGpd && p_c != 0) throw UsageError("family gpd requires --pc 0");
    if (family == sgpd::CodeFamily::kPsgpd && p_c != 1) {
      throw sgpd::Unsupported("private and secure codes support only P_C = 1");
    }
    for (const Triple& sp : splits) {
      const sgpd::PartitionSpec spec = spec_of(c, sp);
      const std::size_t pr = threshold_of(family, spec.split(), p_c);
      const std::string label =
          sgpd::to_string(family == sgpd::CodeFamily::kSgpd && p_c == 0
                              ? sgpd::CodeFamily::kGpd : family);
      for (double r : grid) {
        sgpd::LatencyModel model = c.model;
        model.r_comm = r;
        csv += label + "," + std::to_string(sp[0]) + "," + std::to_string(sp[1]) +
               "," + std::to_string(sp[2]) + "," + std::to_string(p_c) + "," +
               std::to_string(pr) + "," +
               std::to_string(sgpd::communication_load(pr, spec)) + "," +
               sgpd::format_double(r) + "," +
               (pr <= c.P ? sgpd::format_double(sgpd::analytic_completion_time(
                                model, spec, c.P, pr))
                          : std::string()) +
               "\n";
      }
    }
  }
  emit(c, csv);
  return 0;
}

void print_error(const std::string& kind, const std::string& message) {
  ordered_json j;
  j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << j.dump() << "\n";
}

struct Flags {
  std::string preset, config, field, dims, split, P, pc, L, kappa, seed, out,
      trials, rcomm_grid, family, m, n, t_min, mu, r_comm, colluding, budget,
      threads;
  bool sabotage = false;
};

void add_flags(CLI::App& cmd, Flags& f) {
  cmd.add_option("--preset", f.preset, "Preset name or JSON path");
  cmd.add_option("--config", f.config, "JSON config file");
  cmd.add_option("--family", f.family, "gpd | sgpd | psgpd");
  cmd.add_option("--field", f.field, "Prime modulus");
  cmd.add_option("--dims", f.dims, "TxSxD");
  cmd.add_option("--split", f.split, "t,s,d");
  cmd.add_option("--m", f.m, "Row blocks of the grid (ts)");
  cmd.add_option("--n", f.n, "Column blocks of the grid (sd)");
  cmd.add_option("--P", f.P, "Number of workers");
  cmd.add_option("--pc", f.pc, "Colluding-set size(s), comma separated");
  cmd.add_option("--L", f.L, "Library size");
  cmd.add_option("--kappa", f.kappa, "Desired library index (1-based)");
  cmd.add_option("--seed", f.seed, "Seed");
  cmd.add_option("--out", f.out, "Output file");
  cmd.add_option("--trials", f.trials, "Monte-Carlo trials");
  cmd.add_option("--rcomm-grid", f.rcomm_grid, "lo:hi:steps (log spaced)");
  cmd.add_option("--tmin", f.t_min, "Minimum computing time");
  cmd.add_option("--mu", f.mu, "Straggling parameter");
  cmd.add_option("--rcomm", f.r_comm, "Download rate (symbols/s) or inf");
  cmd.add_option("--colluding", f.colluding, "Colluding worker ids, comma separated");
  cmd.add_option("--budget", f.budget, "Audit enumeration budget");
  cmd.add_option("--threads", f.threads, "Worker threads for audits/simulation");
  cmd.add_flag("--sabotage", f.sabotage, "Audit a deliberately broken variant");
}

RunConfig resolve(const Flags& f) {
  RunConfig c;
  if (!f.preset.empty()) apply_json(c, load_json_file(preset_path(f.preset)));
  if (!f.config.empty()) apply_json(c, load_json_file(f.config));
  if (!f.family.empty()) c.family = f.family;
  if (!f.field.empty()) c.field = parse_size(f.field);
  if (!f.dims.empty()) c.dims = parse_triple(f.dims, 'x', "--dims");
  if (!f.split.empty()) {
    c.splits = {parse_triple(f.split, ',', "--split")};
    c.splits_explicit = true;
  }
  if (!f.m.empty()) c.m = parse_size(f.m);
  if (!f.n.empty()) c.n = parse_size(f.n);
  if (!f.P.empty()) c.P = parse_size(f.P);
  if (!f.pc.empty()) c.pc = parse_list(f.pc);
  if (!f.L.empty()) c.L = parse_size(f.L);
  if (!f.kappa.empty()) c.kappa = parse_size(f.kappa);
  if (!f.seed.empty()) c.seed = parse_size(f.seed);
  if (!f.out.empty()) c.out = f.out;
  if (!f.trials.empty()) c.trials = parse_size(f.trials);
  if (!f.rcomm_grid.empty()) c.rcomm_grid = f.rcomm_grid;
  if (!f.t_min.empty()) { c.model.t_min = parse_real(f.t_min); c.has_model = true; }
  if (!f.mu.empty()) { c.model.mu = parse_real(f.mu); c.has_model = true; }
  if (!f.r_comm.empty()) { c.model.r_comm = parse_real(f.r_comm); c.has_model = true; }
  if (!f.colluding.empty()) c.colluding = parse_list(f.colluding);
  if (!f.budget.empty()) c.budget = parse_size(f.budget);
  if (!f.threads.empty()) c.threads = parse_size(f.threads);
  c.sabotage = f.sabotage;
  if (c.pc.empty()) throw UsageError("--pc must not be empty");
  family_of(c);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Secure and private coded distributed matrix multiplication"};
  app.require_subcommand(1);
  Flags flags;
  struct Command {
    const char* name;
    const char* help;
    int (*run)(const RunConfig&);
  };
  const Command commands[] = {
      {"demo", "Encode, compute and decode one random product", run_demo},
      {"tradeoff", "Recovery threshold / communication load sweep (CSV)", run_tradeoff},
      {"simulate", "Timed pipeline run plus Monte-Carlo completion statistics", run_simulate},
      {"audit", "Exhaustive secrecy, privacy and threshold audits (JSON)", run_audit},
      {"latency", "Analytic completion time over an R_comm grid (CSV)", run_latency},
  };
  std::vector<CLI::App*> subs;
  for (const Command& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_flags(*sub, flags);
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }
  try {
    const RunConfig config = resolve(flags);
    for (std::size_t k = 0; k < subs.size(); ++k) {
      if (subs[k]->parsed()) return commands[k].run(config);
    }
  } catch (const sgpd::Error& e) {
    print_error(e.kind(), e.what());
    return 2;
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("usage", e.what());
    return 2;
  }
  return 2;
}
