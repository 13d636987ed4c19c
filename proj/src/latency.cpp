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


#include "sgpd/latency.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <functional>
#include <mutex>
#include <numeric>
#include <thread>

#include "sgpd/error.hpp"

namespace sgpd {
namespace {

constexpr std::uint64_t kDelayStream = 0x64656c;
constexpr std::size_t kMaxPipelineThreads = 8;

double sum_reciprocals(std::size_t lo, std::size_t hi) {
  // sum_{i=lo+1..hi} 1/i, smallest terms first.
  double acc = 0.0;
  for (std::size_t i = hi; i > lo; --i) acc += 1.0 / static_cast<double>(i);
  return acc;
}

void check_counts(std::size_t workers, std::size_t threshold) {
  if (threshold == 0) throw InvalidArgument("recovery threshold must be positive");
  if (threshold > workers) {
    throw InvalidArgument("recovery threshold " + std::to_string(threshold) +
                          " exceeds the worker count " +
                          std::to_string(workers));
  }
}

double excess_rate(const LatencyModel& model, const PartitionSpec& spec) {
  const double scale = compute_scale(model, spec);
  return scale == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / scale;
}

struct Arrivals {
  std::vector<WorkerResult> winners;
  std::size_t cancelled = 0;
};

// Runs tasks 1..P on a small pool, waits until the winners (the P_R
// smallest delays, ties by id) have finished, then stops everything else.
Arrivals collect(std::size_t workers, std::size_t threshold,
                 const std::vector<double>& delays,
                 const std::function<std::optional<WorkerResult>(
                     std::size_t, std::stop_token)>& task) {
  std::vector<std::size_t> order(workers);
  std::iota(order.begin(), order.end(), std::size_t{1});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return delays[x - 1] < delays[y - 1];
  });
  std::vector<char> is_winner(workers + 1, 0);
  for (std::size_t k = 0; k < threshold; ++k) is_winner[order[k]] = 1;

  std::vector<std::optional<WorkerResult>> slots(workers + 1);
  std::mutex mu;
  std::condition_variable cv;
  std::size_t winners_done = 0;
  std::atomic<std::size_t> next{1};
  std::stop_source stop;
  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min(workers, kMaxPipelineThreads);
    for (std::size_t k = 0; k < n; ++k) {
      pool.emplace_back([&] {
        const std::stop_token token = stop.get_token();
        for (std::size_t id = next++; id <= workers; id = next++) {
          if (token.stop_requested()) return;
          std::optional<WorkerResult> r = task(id, token);
          if (!r) continue;
          r->completion_time = delays[id - 1];
          const std::lock_guard lock(mu);
          slots[id] = std::move(r);
          if (is_winner[id] && ++winners_done == threshold) cv.notify_all();
        }
      });
    }
    std::unique_lock lock(mu);
    cv.wait(lock, [&] { return winners_done == threshold; });
    stop.request_stop();
  }
  Arrivals out;
  for (std::size_t k = 0; k < threshold; ++k) {
    out.winners.push_back(std::move(*slots[order[k]]));
  }
  for (std::size_t id = 1; id <= workers; ++id) {
    if (!slots[id]) ++out.cancelled;
  }
  return out;
}

TimedRun finish(
    Arrivals arrivals, std::vector<double> delays, double comm,
    const std::function<FieldMatrix(std::vector<WorkerResult>)>& decode) {
  std::vector<std::size_t> used;
  for (const WorkerResult& r : arrivals.winners) used.push_back(r.worker_id);
  const double done = *arrivals.winners.back().completion_time + comm;
  return TimedRun{decode(std::move(arrivals.winners)), done, std::move(used),
                  std::move(delays), arrivals.cancelled};
}

}  // namespace

void validate(const LatencyModel& model) {
  if (!(model.t_min >= 0.0) || std::isinf(model.t_min)) {
    throw InvalidArgument("T_min must be finite and non-negative");
  }
  if (!(model.mu > 0.0)) throw InvalidArgument("mu must be positive");
  if (!(model.r_comm > 0.0)) throw InvalidArgument("R_comm must be positive");
}

double harmonic(std::size_t n) { return sum_reciprocals(0, n); }

double compute_scale(const LatencyModel& model, const PartitionSpec& spec) {
  validate(model);
  if (std::isinf(model.mu)) return 0.0;
  const double per_worker = static_cast<double>(spec.a_block_rows()) *
                            static_cast<double>(spec.inner_block()) *
                            static_cast<double>(spec.b_block_cols());
  return 1.0 / (model.mu * per_worker);
}

double communication_time(const LatencyModel& model, const PartitionSpec& spec,
                          std::size_t recovery_threshold) {
  validate(model);
  if (std::isinf(model.r_comm)) return 0.0;
  const double block = static_cast<double>(spec.a_block_rows()) *
                       static_cast<double>(spec.b_block_cols());
  const double blocks = model.comm == CommModel::kSharedLink
                            ? static_cast<double>(recovery_threshold)
                            : 1.0;
  return blocks * block / model.r_comm;
}

double analytic_completion_time(const LatencyModel& model,
                                const PartitionSpec& spec, std::size_t workers,
                                std::size_t recovery_threshold) {
  check_counts(workers, recovery_threshold);
  return model.t_min +
         compute_scale(model, spec) *
             sum_reciprocals(workers - recovery_threshold, workers) +
         communication_time(model, spec, recovery_threshold);
}

SimulationStats simulate_completion(const LatencyModel& model,
                                    const PartitionSpec& spec,
                                    std::size_t workers,
                                    std::size_t recovery_threshold,
                                    std::uint64_t trials, std::uint64_t seed,
                                    std::size_t threads) {
  check_counts(workers, recovery_threshold);
  if (trials == 0) throw InvalidArgument("need at least one trial");
  const double rate = excess_rate(model, spec);
  const double fixed =
      model.t_min + communication_time(model, spec, recovery_threshold);
  std::vector<double> values(trials);
  auto run = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<double> d(workers);
    for (std::uint64_t k = begin; k < end; ++k) {
      CounterRng rng(seed, k);
      for (double& x : d) x = rng.exponential(rate);
      std::nth_element(d.begin(), d.begin() + (recovery_threshold - 1), d.end());
      values[k] = fixed + d[recovery_threshold - 1];
    }
  };
  threads = std::max<std::size_t>(1, std::min<std::uint64_t>(threads, trials));
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 0; k < threads; ++k) {
      pool.emplace_back(run, trials * k / threads, trials * (k + 1) / threads);
    }
  }
  SimulationStats s;
  s.trials = trials;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(trials);
  double sq = 0.0;
  for (double v : values) sq += (v - s.mean) * (v - s.mean);
  s.stddev = trials > 1 ? std::sqrt(sq / static_cast<double>(trials - 1)) : 0.0;
  std::sort(values.begin(), values.end());
  auto rank = [&](double q) {
    const auto idx = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(trials))) ;
    return values[std::clamp<std::size_t>(idx, 1, trials) - 1];
  };
  s.min = values.front();
  s.max = values.back();
  s.p50 = rank(0.5);
  s.p90 = rank(0.9);
  s.p99 = rank(0.99);
  return s;
}

std::vector<double> sample_delays(const LatencyModel& model,
                                  const PartitionSpec& spec,
                                  std::size_t workers, std::uint64_t seed) {
  const double rate = excess_rate(model, spec);
  CounterRng rng(seed, kDelayStream);
  std::vector<double> out(workers);
  for (double& d : out) d = model.t_min + rng.exponential(rate);
  return out;
}

TimedRun run_pipeline_timed(const SecureCode& code, const FieldMatrix& a,
                            const FieldMatrix& b, const LatencyModel& model,
                            std::uint64_t seed) {
  const std::size_t threshold = code.recovery_threshold();
  check_counts(code.workers(), threshold);
  CounterRng rng(seed);
  const std::vector<Share> shares = encode_shares(a, b, code, rng.next());
  std::vector<double> delays =
      sample_delays(model, code.spec(), code.workers(), rng.next());
  Arrivals arrivals = collect(
      code.workers(), threshold, delays,
      [&](std::size_t id, std::stop_token stop) {
        return worker_multiply(shares[id - 1], stop);
      });
  return finish(std::move(arrivals), std::move(delays),
                communication_time(model, code.spec(), threshold),
                [&](std::vector<WorkerResult> w) {
                  return decode_product(std::move(w), code);
                });
}

TimedRun run_pipeline_timed(const PsgpdCode& code, const FieldMatrix& a,
                            const PublicLibrary& library, std::size_t kappa,
                            const LatencyModel& model, std::uint64_t seed) {
  const std::size_t threshold = code.recovery_threshold();
  check_counts(code.workers(), threshold);
  CounterRng rng(seed);
  const PsgpdRequest request = make_request(a, code, kappa, rng.next());
  std::vector<double> delays =
      sample_delays(model, code.spec(), code.workers(), rng.next());
  Arrivals arrivals = collect(
      code.workers(), threshold, delays,
      [&](std::size_t id, std::stop_token stop) -> std::optional<WorkerResult> {
        if (stop.stop_requested()) return std::nullopt;
        return psgpd_worker(request.encodings[id - 1], library,
                            request.batch.for_worker(id), code);
      });
  return finish(std::move(arrivals), std::move(delays),
                communication_time(model, code.spec(), threshold),
                [&](std::vector<WorkerResult> w) {
                  return psgpd_decode(std::move(w), code, library, request);
                });
}

SweepResult tradeoff_sweep(std::size_t m, std::size_t n, std::size_t workers,
                           const std::vector<std::size_t>& p_c_list,
                           CodeFamily family, const SweepOptions& options) {
  if (m == 0 || n == 0) throw InvalidArgument("m and n must be positive");
  for (std::size_t p_c : p_c_list) {
    if (family == CodeFamily::kGpd && p_c != 0) {
      throw InvalidArgument("GPD rows require P_C = 0");
    }
    if (family == CodeFamily::kPsgpd && p_c != 1) {
      throw Unsupported("private and secure codes support only P_C = 1");
    }
  }
  if (options.model) validate(*options.model);
  SweepResult out;
  const std::size_t g = std::gcd(m, n);
  for (std::size_t p_c : p_c_list) {
    for (std::size_t s = 1; s <= g; ++s) {
      if (g % s != 0) continue;
      const BlockSplit split{m / s, s, n / s};
      const PartitionSpec spec(options.T, options.S, options.D, split);
      SweepRow row;
      row.family = family == CodeFamily::kSgpd && p_c == 0 ? CodeFamily::kGpd
                                                           : family;
      row.split = split;
      row.p_c = p_c;
      row.recovery_threshold =
          family == CodeFamily::kPsgpd
              ? psgpd_threshold(split).symbolic
              : recovery_threshold(plan_augmentation(split, p_c), split).symbolic;
      row.communication_load =
          communication_load(row.recovery_threshold, spec);
      if (row.recovery_threshold <= workers) {
        if (options.model) {
          row.expected_time = analytic_completion_time(
              *options.model, spec, workers, row.recovery_threshold);
          if (options.mc_trials > 0) {
            row.empirical_time =
                simulate_completion(*options.model, spec, workers,
                                    row.recovery_threshold, options.mc_trials,
                                    options.seed)
                    .mean;
          }
        }
      }
      out.rows.push_back(row);
    }
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string to_csv(const SweepResult& result) {
  std::string out = "family,t,s,d,P_C,P_R,C_L,E_T\n";
  for (const SweepRow& r : result.rows) {
    out += to_string(r.family) + "," + std::to_string(r.split.t) + "," +
           std::to_string(r.split.s) + "," + std::to_string(r.split.d) + "," +
           std::to_string(r.p_c) + "," + std::to_string(r.recovery_threshold) +
           "," + std::to_string(r.communication_load) + "," +
           (r.expected_time ? format_double(*r.expected_time) : "") + "\n";
  }
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t steps) {
  if (!(lo > 0.0) || !(hi >= lo) || std::isinf(hi) || steps == 0) {
    throw InvalidArgument("log grid needs 0 < lo <= hi and steps >= 1");
  }
  if (steps == 1) return {lo};
  std::vector<double> out(steps);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < steps; ++k) {
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) /
                              static_cast<double>(steps - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace sgpd
